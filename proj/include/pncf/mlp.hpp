#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pncf/matrix.hpp"

namespace pncf {

enum class Activation { rectifier, logistic };

/// Elementwise activation with its local derivative.
/// rectifier: max(0,x), derivative 1 for x>0 else 0.
/// logistic:  1/(1+e^-x), derivative p(1-p).
std::pair<Matrix, Matrix> activate(const Matrix& x, Activation kind);

double logistic(double x);

/// Probabilities are clamped to [kProbEpsilon, 1-kProbEpsilon] before the
/// logarithm; this is part of the loss contract.
inline constexpr double kProbEpsilon = 1e-7;

struct BceResult {
  double loss;
  double dloss_dp;
};

/// Binary cross entropy for a single prediction. label must be 0 or 1.
BceResult bce_loss(double p, int label);

/// out[i][j] = sum_k x[i][k]*w[k][j] + b[j]
Matrix affine_forward(const Matrix& x, const Matrix& w,
                      std::span<const double> b);

struct MlpLayer {
  Matrix weight;             // n_in x n_out
  std::vector<double> bias;  // n_out
};

/// Fixed-topology MLP: rectifier hidden layers, logistic scalar output.
struct MlpParams {
  std::vector<MlpLayer> layers;

  std::size_t input_width() const { return layers.front().weight.rows; }
  /// Consecutive layer dimensions must chain and the final width must be 1.
  void validate() const;
};

// -- batched forward/backward, the workhorse for training ------------------

struct MlpForward {
  std::vector<Matrix> activations;  // activations[0] = input, then per layer
  std::vector<Matrix> derivs;       // local derivative of each hidden layer
  std::vector<double> probs;        // logistic output per row
};

MlpForward mlp_forward_batch(const MlpParams& params, const Matrix& input);

struct MlpBatchGrads {
  std::vector<Matrix> dweights;
  std::vector<std::vector<double>> dbiases;
  Matrix dinput;
};

/// Backward pass seeded with dL/dp per row.
MlpBatchGrads mlp_backward_batch(const MlpParams& params, const MlpForward& fwd,
                                 std::span<const double> dloss_dprob);

// -- single-sample contract operations --------------------------------------

struct MlpGradients {
  double prob = 0.0;
  double loss = 0.0;
  std::vector<Matrix> dweights;
  std::vector<std::vector<double>> dbiases;
  std::vector<double> dinput;
};

/// Forward plus exact analytic gradients of bce_loss(forward(input), label)
/// with respect to every weight, bias, and the input vector.
MlpGradients mlp_forward_backward(const MlpParams& params,
                                  std::span<const double> input, int label);

/// Gradients of the output probability itself (no loss attached).
MlpGradients mlp_prob_gradients(const MlpParams& params,
                                std::span<const double> input);

}  // namespace pncf
