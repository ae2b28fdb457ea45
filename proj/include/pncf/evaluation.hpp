#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pncf/interactions.hpp"
#include "pncf/model.hpp"

namespace pncf {

/// Candidates sorted by predicted score descending, ties by ascending item
/// index; rank is the 1-based position of the held-out item.
struct RankedList {
  std::size_t user = 0;
  std::vector<std::size_t> candidates;  // sorted per the tie rule
  std::size_t rank = 0;
};

/// Scores the held-out item against sampled negatives. Negatives must not
/// overlap the user's train items or the held-out item; when `train` is
/// given this is verified and violations raise ProtocolError.
RankedList rank_candidates(const NcfParams& params,
                           const PersonalityContext& context, std::size_t user,
                           std::size_t held_out,
                           std::span<const std::size_t> negatives,
                           const InteractionSet* train = nullptr);

struct KMetrics {
  double hr = 0.0;
  double ndcg = 0.0;
};

/// hr = 1 iff rank <= K; ndcg = 1/log2(rank+1) within K, else 0.
KMetrics metrics_at_k(std::size_t rank, std::size_t k);

struct MetricReport {
  std::vector<std::size_t> ks{3, 5, 10};
  std::vector<double> hr;    // parallel to ks
  std::vector<double> ndcg;  // parallel to ks
  std::size_t users = 0;
  std::uint64_t seed = 0;
};

struct EvalConfig {
  std::vector<std::size_t> ks{3, 5, 10};
  std::size_t negatives = 99;  // 0 means rank against every unseen item
  std::uint64_t seed = 42;
};

struct PerUserRank {
  std::size_t user;
  std::size_t rank;
};

struct EvalResult {
  MetricReport report;
  std::vector<PerUserRank> per_user;
};

/// Leave-one-out evaluation over every eligible user; negatives drawn
/// deterministically per (seed, user).
EvalResult evaluate(const NcfParams& params, const LeaveOneOutSplit& split,
                    const PersonalityContext& context, const EvalConfig& config);

struct TraitGroup {
  std::size_t count = 0;
  double hr = 0.0;
  double ndcg = 0.0;
};

struct TraitBreakdown {
  std::size_t k = 10;
  std::size_t total_users = 0;
  std::array<TraitGroup, kTraitCount> groups;
};

/// Groups per-user results by most-salient trait. Every evaluated user must
/// have scores; `user_ids` maps dense indices back to table keys.
TraitBreakdown breakdown_by_trait(std::span<const PerUserRank> results,
                                  const PersonalityTable& personalities,
                                  std::span<const std::string> user_ids,
                                  std::size_t k = 10);

/// Unweighted Cohen's kappa over two equal-length label sequences. By
/// convention kappa is 1 when both annotators are constant and identical
/// (chance agreement would be 1).
double cohen_kappa(std::span<const std::string> a,
                   std::span<const std::string> b);

}  // namespace pncf
