#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pncf/interactions.hpp"
#include "pncf/matrix.hpp"
#include "pncf/mlp.hpp"
#include "pncf/personality.hpp"

namespace pncf {

inline constexpr std::size_t kEmbeddingDim = 16;
inline constexpr std::size_t kTraitVectorDim = 4;

enum class PersonalityKind {
  plain,         // vanilla, no personality input
  random_label,  // control: uniform random trait label per user
  same_trait,    // control: one fixed trait label for everyone
  most_salient,  // trait embedding of the user's strongest trait
  soft_labeled,  // softmax-weighted sum of the five trait embeddings
  hard_coded,    // fixed scores/100 vector, not a learned parameter
};

std::string_view personality_kind_name(PersonalityKind kind);
PersonalityKind parse_personality_kind(std::string_view name);

struct PersonalityMode {
  PersonalityKind kind = PersonalityKind::plain;
  std::uint64_t label_seed = 0;              // random_label
  Trait same_trait = Trait::openness;        // same_trait
  double temperature = 100.0;                // soft_labeled
  HardVectorPolicy hard_policy = HardVectorPolicy::scale_by_100;

  /// 0 for plain, 4 for the trait-embedding modes, 5 for hard_coded.
  std::size_t feature_dim() const;
  bool uses_trait_embedding() const;
  bool needs_scores() const;
};

struct Hyperparams {
  std::vector<std::size_t> mlp_hidden{64, 32, 16, 8};
  double init_scale = 0.01;  // stddev of embedding initialization
  std::uint64_t seed = 42;
};

struct NcfParams {
  Matrix user_emb;   // U x 16
  Matrix item_emb;   // I x 16
  Matrix trait_emb;  // 5 x 4; empty in plain and hard_coded modes
  MlpParams mlp;     // input width 32 + feature_dim
  PersonalityMode mode;

  std::size_t users() const { return user_emb.rows; }
  std::size_t items() const { return item_emb.rows; }
  std::size_t input_width() const { return mlp.input_width(); }
  void validate() const;
};

/// Embeddings ~ Normal(0, init_scale^2); MLP weights uniform within the
/// Glorot bound, biases zero. Deterministic per seed.
NcfParams init_params(std::size_t users, std::size_t items,
                      const PersonalityMode& mode, const Hyperparams& hyper);

/// Per-user personality inputs resolved once per dataset: label index,
/// softmax weights, or the fixed hard vector, depending on mode. Users
/// missing scores under a score-dependent mode are rejected here.
struct PersonalityContext {
  PersonalityMode mode;
  std::vector<int> label;                              // trait index per user
  std::vector<std::array<double, kTraitCount>> soft;   // soft weights
  std::vector<std::array<double, kTraitCount>> hard;   // fixed vectors

  static PersonalityContext build(const PersonalityMode& mode,
                                  const InteractionSet& interactions,
                                  const PersonalityTable* personalities);
};

/// The mode's feature vector for one user (length 0, 4, or 5).
std::vector<double> personality_feature(const NcfParams& params,
                                        const PersonalityContext& context,
                                        std::size_t user);

/// MLP([user_emb ; item_emb ; feature]) through the logistic output.
double predict(const NcfParams& params, const PersonalityContext& context,
               std::size_t user, std::size_t item);

struct NcfGradients {
  Matrix duser_emb;
  Matrix ditem_emb;
  Matrix dtrait_emb;
  std::vector<Matrix> dmlp_weights;
  std::vector<std::vector<double>> dmlp_biases;
};

struct BatchResult {
  NcfGradients grads;
  double mean_loss = 0.0;
};

/// Mean-loss gradients over a batch. Embedding gradients touch only the
/// rows referenced by the batch; trait_emb receives nothing in plain and
/// hard_coded modes.
BatchResult batch_gradients(const NcfParams& params,
                            const PersonalityContext& context,
                            std::span<const TrainingSample> batch);

}  // namespace pncf
