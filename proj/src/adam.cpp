#include "pncf/adam.hpp"

#include <cmath>
#include <string>

#include "pncf/kernels.hpp"

namespace pncf {

AdamState AdamState::init(std::span<const std::size_t> tensor_sizes,
                          const AdamHyper& hyper) {
  AdamState state;
  state.hyper = hyper;
  state.m.reserve(tensor_sizes.size());
  state.v.reserve(tensor_sizes.size());
  for (std::size_t n : tensor_sizes) {
    state.m.emplace_back(n, 0.0);
    state.v.emplace_back(n, 0.0);
  }
  return state;
}

void adam_step(std::span<std::span<double>> params,
               std::span<const std::span<const double>> grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw ShapeError("adam_step: " + std::to_string(params.size()) +
                     " parameter tensors vs " + std::to_string(grads.size()) +
                     " gradients vs " + std::to_string(state.m.size()) +
                     " moment tensors");
  }
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (params[t].size() != grads[t].size() ||
        params[t].size() != state.m[t].size()) {
      throw ShapeError("adam_step: tensor " + std::to_string(t) + " sizes " +
                       std::to_string(params[t].size()) + "/" +
                       std::to_string(grads[t].size()) + "/" +
                       std::to_string(state.m[t].size()) + " differ");
    }
  }
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double bias1 = 1.0 / (1.0 - std::pow(state.hyper.beta1, t));
  const double bias2 = 1.0 / (1.0 - std::pow(state.hyper.beta2, t));
  const kernels::Backend& k = kernels::active();
  for (std::size_t i = 0; i < params.size(); ++i) {
    k.adam_update(params[i].data(), grads[i].data(), state.m[i].data(),
                  state.v[i].data(), params[i].size(),
                  state.hyper.learning_rate, state.hyper.beta1,
                  state.hyper.beta2, state.hyper.epsilon, bias1, bias2);
  }
}

}  // namespace pncf
