#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pncf/adam.hpp"
#include "pncf/evaluation.hpp"
#include "pncf/interactions.hpp"
#include "pncf/model.hpp"

namespace pncf {

struct TrainConfig {
  std::size_t epochs = 20;
  std::size_t batch_size = 256;
  std::size_t negatives_per_positive = 4;
  AdamHyper adam;
  std::size_t patience = 5;  // epochs without a validation HR@10 improvement
  std::uint64_t seed = 42;
  bool freeze_trait_emb = false;
  std::size_t eval_negatives = 99;  // 0 = rank against all unseen items

  void validate() const;
};

struct EpochReport {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_hr10 = 0.0;
  double val_ndcg10 = 0.0;
  double seconds = 0.0;  // wall clock; excluded from determinism guarantees
};

struct TrainResult {
  NcfParams params;  // parameters from the best validation epoch
  std::vector<EpochReport> reports;
  std::size_t best_epoch = 0;  // 0 when no epoch ran
};

/// Mini-batch Adam training with per-epoch negative resampling, epoch-keyed
/// deterministic shuffling, per-epoch validation on the held-out items, and
/// early stopping. Non-finite loss aborts with a diagnostic naming the
/// epoch and batch.
TrainResult train(const LeaveOneOutSplit& split,
                  const PersonalityTable* personalities,
                  const PersonalityMode& mode, const TrainConfig& config,
                  const Hyperparams& hyper);

// -- checkpoints ---------------------------------------------------------------
// Binary format: magic "PNCF", u32 version, mode tag, dimension header,
// then every tensor as little-endian 32-bit floats in documented order
// (user_emb, item_emb, trait_emb when present, then per layer weight+bias).

void save_checkpoint(const NcfParams& params, const std::string& path,
                     std::uint64_t train_seed = 0, std::uint32_t epoch = 0);

struct LoadedCheckpoint {
  NcfParams params;
  std::uint64_t train_seed = 0;
  std::uint32_t epoch = 0;
};

LoadedCheckpoint load_checkpoint(const std::string& path);

/// As load_checkpoint, but rejects a checkpoint whose mode tag differs
/// from the requested kind.
LoadedCheckpoint load_checkpoint(const std::string& path,
                                 PersonalityKind expected);

}  // namespace pncf
