#include "pncf/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "pncf/kernels.hpp"

namespace pncf {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::pair<Matrix, Matrix> activate(const Matrix& x, Activation kind) {
  Matrix value(x.rows, x.cols);
  Matrix deriv(x.rows, x.cols);
  if (kind == Activation::rectifier) {
    kernels::active().relu(x.values.data(), value.values.data(),
                           deriv.values.data(), x.size());
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p = logistic(x.values[i]);
      value.values[i] = p;
      deriv.values[i] = p * (1.0 - p);
    }
  }
  return {std::move(value), std::move(deriv)};
}

BceResult bce_loss(double p, int label) {
  if (label != 0 && label != 1) {
    throw ConfigError("bce_loss: label must be 0 or 1, got " +
                      std::to_string(label));
  }
  const double pc = std::clamp(p, kProbEpsilon, 1.0 - kProbEpsilon);
  if (label == 1) {
    return {-std::log(pc), -1.0 / pc};
  }
  return {-std::log(1.0 - pc), 1.0 / (1.0 - pc)};
}

Matrix affine_forward(const Matrix& x, const Matrix& w,
                      std::span<const double> b) {
  if (x.cols != w.rows || b.size() != w.cols) {
    throw ShapeError("affine_forward: x " + shape_string(x) + " vs w " +
                     shape_string(w) + " with bias length " +
                     std::to_string(b.size()));
  }
  Matrix out(x.rows, w.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    std::memcpy(out.row(i), b.data(), b.size() * sizeof(double));
  }
  kernels::active().matmul_accum(out.values.data(), x.values.data(),
                                 w.values.data(), x.rows, x.cols, w.cols);
  return out;
}

void MlpParams::validate() const {
  if (layers.empty()) throw ShapeError("MlpParams: no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const MlpLayer& layer = layers[l];
    if (layer.bias.size() != layer.weight.cols) {
      throw ShapeError("MlpParams: layer " + std::to_string(l) + " bias " +
                       std::to_string(layer.bias.size()) + " vs weight " +
                       shape_string(layer.weight));
    }
    if (l > 0 && layers[l - 1].weight.cols != layer.weight.rows) {
      throw ShapeError("MlpParams: layer " + std::to_string(l - 1) +
                       " output " + std::to_string(layers[l - 1].weight.cols) +
                       " does not chain into layer " + std::to_string(l) +
                       " input " + std::to_string(layer.weight.rows));
    }
  }
  if (layers.back().weight.cols != 1) {
    throw ShapeError("MlpParams: final layer width must be 1, got " +
                     std::to_string(layers.back().weight.cols));
  }
}

MlpForward mlp_forward_batch(const MlpParams& params, const Matrix& input) {
  if (input.cols != params.input_width()) {
    throw ShapeError("mlp_forward: input " + shape_string(input) +
                     " vs first layer " +
                     shape_string(params.layers.front().weight));
  }
  MlpForward fwd;
  fwd.activations.reserve(params.layers.size() + 1);
  fwd.derivs.reserve(params.layers.size());
  fwd.activations.push_back(input);
  const std::size_t last = params.layers.size() - 1;
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    Matrix z = affine_forward(fwd.activations.back(), params.layers[l].weight,
                              params.layers[l].bias);
    auto [value, deriv] = activate(
        z, l == last ? Activation::logistic : Activation::rectifier);
    fwd.activations.push_back(std::move(value));
    fwd.derivs.push_back(std::move(deriv));
  }
  fwd.probs.resize(input.rows);
  const Matrix& out = fwd.activations.back();
  for (std::size_t i = 0; i < input.rows; ++i) {
    fwd.probs[i] = out.at(i, 0);
  }
  return fwd;
}

MlpBatchGrads mlp_backward_batch(const MlpParams& params, const MlpForward& fwd,
                                 std::span<const double> dloss_dprob) {
  const std::size_t batch = fwd.activations.front().rows;
  const std::size_t n_layers = params.layers.size();
  if (dloss_dprob.size() != batch) {
    throw ShapeError("mlp_backward: seed length " +
                     std::to_string(dloss_dprob.size()) + " vs batch " +
                     std::to_string(batch));
  }
  const kernels::Backend& k = kernels::active();

  MlpBatchGrads grads;
  grads.dweights.resize(n_layers);
  grads.dbiases.resize(n_layers);

  // delta for the output layer: dL/dz = dL/dp * p(1-p)
  Matrix delta(batch, 1);
  for (std::size_t i = 0; i < batch; ++i) {
    delta.at(i, 0) = dloss_dprob[i] * fwd.derivs.back().at(i, 0);
  }

  for (std::size_t l = n_layers; l-- > 0;) {
    const Matrix& a_prev = fwd.activations[l];
    const MlpLayer& layer = params.layers[l];

    // dW = a_prev^T * delta
    Matrix dw(layer.weight.rows, layer.weight.cols);
    const Matrix a_t = transpose(a_prev);
    k.matmul_accum(dw.values.data(), a_t.values.data(), delta.values.data(),
                   a_t.rows, a_t.cols, delta.cols);
    grads.dweights[l] = std::move(dw);

    // db = column sums of delta
    std::vector<double> db(layer.weight.cols, 0.0);
    for (std::size_t i = 0; i < batch; ++i) {
      for (std::size_t j = 0; j < delta.cols; ++j) {
        db[j] += delta.at(i, j);
      }
    }
    grads.dbiases[l] = std::move(db);

    // delta_prev = (delta * W^T) .* local derivative of the previous layer
    Matrix next(batch, layer.weight.rows);
    const Matrix w_t = transpose(layer.weight);
    k.matmul_accum(next.values.data(), delta.values.data(), w_t.values.data(),
                   batch, delta.cols, w_t.cols);
    if (l > 0) {
      k.mul_inplace(next.values.data(), fwd.derivs[l - 1].values.data(),
                    next.size());
    }
    delta = std::move(next);
  }
  grads.dinput = std::move(delta);
  return grads;
}

namespace {

MlpGradients run_single(const MlpParams& params, std::span<const double> input,
                        const int* label) {
  params.validate();
  Matrix x(1, input.size());
  std::copy(input.begin(), input.end(), x.values.begin());
  const MlpForward fwd = mlp_forward_batch(params, x);
  const double p = fwd.probs[0];

  MlpGradients out;
  out.prob = p;
  double seed = 1.0;
  if (label != nullptr) {
    const BceResult bce = bce_loss(p, *label);
    out.loss = bce.loss;
    seed = bce.dloss_dp;
  }
  MlpBatchGrads grads = mlp_backward_batch(params, fwd, std::span(&seed, 1));
  out.dweights = std::move(grads.dweights);
  out.dbiases = std::move(grads.dbiases);
  out.dinput.assign(grads.dinput.values.begin(), grads.dinput.values.end());
  return out;
}

}  // namespace

MlpGradients mlp_forward_backward(const MlpParams& params,
                                  std::span<const double> input, int label) {
  return run_single(params, input, &label);
}

MlpGradients mlp_prob_gradients(const MlpParams& params,
                                std::span<const double> input) {
  return run_single(params, input, nullptr);
}

}  // namespace pncf
