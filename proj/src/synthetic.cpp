#include "pncf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace pncf {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<double, kTraitCount> dirichlet1(rng::Stream& stream) {
  std::array<double, kTraitCount> a{};
  double sum = 0.0;
  for (double& v : a) {
    double u;
    do {
      u = stream.next_double();
    } while (u <= 0.0);
    v = -std::log(u);  // Exp(1)
    sum += v;
  }
  for (double& v : a) v /= sum;
  return a;
}

// Beta(1/2,1/2) via the arcsine inverse CDF. The U-shape pushes users
// toward extreme scores, so normalized trait weights differ meaningfully
// across users and personality carries real signal.
double arcsine_score(rng::Stream& stream) {
  const double u = stream.next_double();
  const double s = std::sin(kPi * u / 2.0);
  return 100.0 * s * s;
}

std::string padded_id(char prefix, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%05zu", prefix, i);
  return buf;
}

}  // namespace

std::vector<std::size_t> sample_user_items(
    std::span<const double> trait_weights,
    std::span<const std::array<double, kTraitCount>> item_affinity,
    std::size_t count, double signal_strength, rng::Stream& stream) {
  const std::size_t n_items = item_affinity.size();
  count = std::min(count, n_items);

  // mixture mass per item; the affinity part is normalized so the whole
  // vector is a proper distribution
  std::vector<double> mass(n_items);
  double affinity_total = 0.0;
  for (std::size_t i = 0; i < n_items; ++i) {
    double dot = 0.0;
    for (std::size_t t = 0; t < kTraitCount; ++t) {
      dot += trait_weights[t] * item_affinity[i][t];
    }
    mass[i] = dot;
    affinity_total += dot;
  }
  const double uniform = (1.0 - signal_strength) / static_cast<double>(n_items);
  for (double& m : mass) {
    m = uniform + (affinity_total > 0.0
                       ? signal_strength * m / affinity_total
                       : signal_strength / static_cast<double>(n_items));
  }

  // draws without replacement: zero out picked items, rescan the prefix sums
  std::vector<std::size_t> picked;
  picked.reserve(count);
  double remaining = std::accumulate(mass.begin(), mass.end(), 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const double target = stream.next_double() * remaining;
    double acc = 0.0;
    std::size_t choice = n_items - 1;
    for (std::size_t i = 0; i < n_items; ++i) {
      acc += mass[i];
      if (target < acc && mass[i] > 0.0) {
        choice = i;
        break;
      }
    }
    // numerical tail: fall back to the last nonzero mass
    if (mass[choice] == 0.0) {
      for (std::size_t i = n_items; i-- > 0;) {
        if (mass[i] > 0.0) {
          choice = i;
          break;
        }
      }
    }
    picked.push_back(choice);
    remaining -= mass[choice];
    mass[choice] = 0.0;
  }
  return picked;
}

SynthResult generate_synthetic(const SynthSpec& spec, std::uint64_t seed) {
  if (spec.users < 2 || spec.items < 2) {
    throw ConfigError("generate_synthetic: need at least 2 users and 2 items");
  }
  if (spec.signal_strength < 0.0 || spec.signal_strength > 1.0) {
    throw ConfigError("generate_synthetic: signal_strength outside [0,1]");
  }

  SynthResult result;
  result.item_affinity.resize(spec.items);
  for (std::size_t i = 0; i < spec.items; ++i) {
    rng::Stream stream(rng::key(seed, 0x6974656d, i));
    result.item_affinity[i] = dirichlet1(stream);
    result.interactions.add_item(padded_id('i', i));
  }

  for (std::size_t u = 0; u < spec.users; ++u) {
    rng::Stream stream(rng::key(seed, 0x75736572, u));
    std::array<double, kTraitCount> scores{};
    for (double& s : scores) s = arcsine_score(stream);
    const OceanScores ocean(scores);

    const std::string user_id = padded_id('u', u);
    result.personalities.insert(user_id, ocean, Provenance::synthetic);

    // trait weights: normalized scores (uniform if degenerate all-zero)
    std::array<double, kTraitCount> weights{};
    double sum = 0.0;
    for (std::size_t t = 0; t < kTraitCount; ++t) sum += scores[t];
    if (sum > 0.0) {
      for (std::size_t t = 0; t < kTraitCount; ++t) weights[t] = scores[t] / sum;
    } else {
      weights.fill(1.0 / kTraitCount);
    }

    const std::size_t dense_u = result.interactions.add_user(user_id);
    const auto items =
        sample_user_items(weights, result.item_affinity,
                          spec.interactions_per_user, spec.signal_strength,
                          stream);
    for (std::size_t item : items) {
      result.interactions.add_interaction(dense_u, item);
    }
  }
  return result;
}

}  // namespace pncf
