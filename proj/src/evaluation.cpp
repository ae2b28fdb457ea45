#include "pncf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pncf/rng.hpp"

namespace pncf {

RankedList rank_candidates(const NcfParams& params,
                           const PersonalityContext& context, std::size_t user,
                           std::size_t held_out,
                           std::span<const std::size_t> negatives,
                           const InteractionSet* train) {
  if (train != nullptr) {
    for (std::size_t item : negatives) {
      if (item == held_out || train->has(user, item)) {
        throw ProtocolError("negative candidate " + std::to_string(item) +
                            " overlaps user " + std::to_string(user) +
                            "'s items");
      }
    }
  }

  std::vector<std::size_t> candidates;
  candidates.reserve(negatives.size() + 1);
  candidates.push_back(held_out);
  candidates.insert(candidates.end(), negatives.begin(), negatives.end());

  std::vector<double> scores(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    scores[c] = predict(params, context, user, candidates[c]);
  }

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return candidates[a] < candidates[b];
  });

  RankedList ranked;
  ranked.user = user;
  ranked.candidates.reserve(order.size());
  for (std::size_t c : order) ranked.candidates.push_back(candidates[c]);
  ranked.rank =
      1 + static_cast<std::size_t>(
              std::find(ranked.candidates.begin(), ranked.candidates.end(),
                        held_out) -
              ranked.candidates.begin());
  return ranked;
}

KMetrics metrics_at_k(std::size_t rank, std::size_t k) {
  if (k < 1) throw ConfigError("metrics_at_k: K must be >= 1");
  if (rank < 1) throw ConfigError("metrics_at_k: rank is 1-based");
  if (rank > k) return {0.0, 0.0};
  return {1.0, 1.0 / std::log2(static_cast<double>(rank) + 1.0)};
}

namespace {

std::vector<std::size_t> eval_negatives(const LeaveOneOutSplit& split,
                                        std::size_t user, std::size_t wanted,
                                        std::uint64_t seed) {
  const InteractionSet& train = split.train;
  const std::size_t n_items = train.item_count();
  const auto held = static_cast<std::size_t>(split.held_out[user]);

  std::vector<std::size_t> unseen;
  unseen.reserve(n_items - train.items_by_user[user].size());
  for (std::size_t item = 0; item < n_items; ++item) {
    if (item != held && !train.has(user, item)) unseen.push_back(item);
  }
  if (wanted == 0 || unseen.size() <= wanted) return unseen;  // exhaustive

  // deterministic partial Fisher-Yates keyed on (seed, user)
  rng::Stream stream(rng::key(seed, 0x6576616c, user));
  for (std::size_t i = 0; i < wanted; ++i) {
    const std::size_t j = i + stream.next_below(unseen.size() - i);
    std::swap(unseen[i], unseen[j]);
  }
  unseen.resize(wanted);
  return unseen;
}

}  // namespace

EvalResult evaluate(const NcfParams& params, const LeaveOneOutSplit& split,
                    const PersonalityContext& context,
                    const EvalConfig& config) {
  EvalResult result;
  result.report.ks = config.ks;
  result.report.seed = config.seed;
  result.report.hr.assign(config.ks.size(), 0.0);
  result.report.ndcg.assign(config.ks.size(), 0.0);

  for (std::size_t user = 0; user < split.train.user_count(); ++user) {
    if (split.held_out[user] < 0) continue;
    const auto held = static_cast<std::size_t>(split.held_out[user]);
    const auto negatives =
        eval_negatives(split, user, config.negatives, config.seed);
    const RankedList ranked = rank_candidates(params, context, user, held,
                                              negatives, &split.train);
    result.per_user.push_back({user, ranked.rank});
    for (std::size_t ki = 0; ki < config.ks.size(); ++ki) {
      const KMetrics m = metrics_at_k(ranked.rank, config.ks[ki]);
      result.report.hr[ki] += m.hr;
      result.report.ndcg[ki] += m.ndcg;
    }
  }

  if (result.per_user.empty()) {
    throw DataError("evaluate: no eligible users (all hold-outs empty)");
  }
  result.report.users = result.per_user.size();
  const double n = static_cast<double>(result.report.users);
  for (std::size_t ki = 0; ki < config.ks.size(); ++ki) {
    result.report.hr[ki] /= n;
    result.report.ndcg[ki] /= n;
  }
  return result;
}

TraitBreakdown breakdown_by_trait(std::span<const PerUserRank> results,
                                  const PersonalityTable& personalities,
                                  std::span<const std::string> user_ids,
                                  std::size_t k) {
  TraitBreakdown breakdown;
  breakdown.k = k;
  breakdown.total_users = results.size();

  std::array<double, kTraitCount> hr_sum{};
  std::array<double, kTraitCount> ndcg_sum{};
  for (const PerUserRank& r : results) {
    if (r.user >= user_ids.size()) {
      throw ProtocolError("breakdown: user index " + std::to_string(r.user) +
                          " outside the id table");
    }
    const OceanScores* scores = personalities.find(user_ids[r.user]);
    if (scores == nullptr) {
      throw ProtocolError("breakdown: evaluated user '" + user_ids[r.user] +
                          "' has no personality scores");
    }
    const auto group = static_cast<std::size_t>(most_salient(*scores));
    const KMetrics m = metrics_at_k(r.rank, k);
    breakdown.groups[group].count += 1;
    hr_sum[group] += m.hr;
    ndcg_sum[group] += m.ndcg;
  }
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    if (breakdown.groups[t].count > 0) {
      const double n = static_cast<double>(breakdown.groups[t].count);
      breakdown.groups[t].hr = hr_sum[t] / n;
      breakdown.groups[t].ndcg = ndcg_sum[t] / n;
    }
  }
  return breakdown;
}

double cohen_kappa(std::span<const std::string> a,
                   std::span<const std::string> b) {
  if (a.size() != b.size()) {
    throw ConfigError("cohen_kappa: sequences differ in length (" +
                      std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw ConfigError("cohen_kappa: empty sequences");

  const double n = static_cast<double>(a.size());
  double observed = 0.0;
  std::map<std::string, double> freq_a, freq_b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    observed += (a[i] == b[i]);
    freq_a[a[i]] += 1.0;
    freq_b[b[i]] += 1.0;
  }
  const double p_o = observed / n;
  double p_e = 0.0;
  for (const auto& [label, count] : freq_a) {
    const auto it = freq_b.find(label);
    if (it != freq_b.end()) p_e += (count / n) * (it->second / n);
  }
  if (p_e >= 1.0) return 1.0;  // both annotators constant and equal
  return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace pncf
