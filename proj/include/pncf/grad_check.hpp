#pragma once

#include <cstdint>
#include <span>

#include "pncf/mlp.hpp"

namespace pncf {

/// Compares analytic gradients of bce_loss(forward(input), label) against
/// central finite differences on `samples` randomly chosen coordinates
/// (weights, biases, and input), returning the worst relative error.
/// h must be > 0.
double grad_check(const MlpParams& net, std::span<const double> input,
                  int label, std::size_t samples, double h,
                  std::uint64_t seed = 0x67726164);

}  // namespace pncf
