#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pncf/errors.hpp"

namespace pncf {

struct AdamHyper {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First/second moment buffers mirroring a fixed list of parameter tensors.
struct AdamState {
  AdamHyper hyper;
  std::int64_t step_count = 0;
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> v;

  static AdamState init(std::span<const std::size_t> tensor_sizes,
                        const AdamHyper& hyper);
};

/// One Adam step with bias correction over a parameter list. Shapes of
/// params, grads, and the state moments must agree; step_count advances
/// by exactly one.
void adam_step(std::span<std::span<double>> params,
               std::span<const std::span<const double>> grads,
               AdamState& state);

}  // namespace pncf
