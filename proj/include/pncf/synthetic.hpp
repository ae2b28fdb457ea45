#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pncf/interactions.hpp"
#include "pncf/personality.hpp"
#include "pncf/rng.hpp"

namespace pncf {

/// Personality-correlated dataset generator. Each item carries a random
/// trait-affinity point on the 5-simplex; each user draws OCEAN scores and
/// picks items with probability
///   (1-signal)/items + signal * <user trait weights, item affinity> / Z.
struct SynthSpec {
  std::size_t users = 500;
  std::size_t items = 200;
  std::size_t interactions_per_user = 20;
  double signal_strength = 0.8;  // in [0,1]
};

struct SynthResult {
  InteractionSet interactions;
  PersonalityTable personalities;
  std::vector<std::array<double, kTraitCount>> item_affinity;
};

SynthResult generate_synthetic(const SynthSpec& spec, std::uint64_t seed);

/// Weighted draw of `count` distinct item indices for one user; exposed so
/// the allocation rule is testable in isolation. trait_weights must lie on
/// the 5-simplex.
std::vector<std::size_t> sample_user_items(
    std::span<const double> trait_weights,
    std::span<const std::array<double, kTraitCount>> item_affinity,
    std::size_t count, double signal_strength, rng::Stream& stream);

}  // namespace pncf
