#include "pncf/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pncf/rng.hpp"

namespace pncf {
namespace {

double loss_at(const MlpParams& params, std::span<const double> input,
               int label) {
  Matrix x(1, input.size());
  std::copy(input.begin(), input.end(), x.values.begin());
  const MlpForward fwd = mlp_forward_batch(params, x);
  return bce_loss(fwd.probs[0], label).loss;
}

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-12) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace

double grad_check(const MlpParams& net, std::span<const double> input,
                  int label, std::size_t samples, double h,
                  std::uint64_t seed) {
  if (samples < 1) throw ConfigError("grad_check: samples must be >= 1");
  if (!(h > 0.0)) throw ConfigError("grad_check: step size h must be > 0");

  const MlpGradients analytic = mlp_forward_backward(net, input, label);

  // Coordinate universe: every weight, every bias, then the input vector.
  struct Coord {
    enum Kind { weight, bias, in } kind;
    std::size_t layer;
    std::size_t index;
  };
  std::vector<Coord> space;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    for (std::size_t i = 0; i < net.layers[l].weight.size(); ++i) {
      space.push_back({Coord::weight, l, i});
    }
    for (std::size_t i = 0; i < net.layers[l].bias.size(); ++i) {
      space.push_back({Coord::bias, l, i});
    }
  }
  for (std::size_t i = 0; i < input.size(); ++i) {
    space.push_back({Coord::in, 0, i});
  }

  MlpParams probe = net;
  std::vector<double> probe_input(input.begin(), input.end());
  rng::Stream stream(rng::key(seed, samples, space.size()));

  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Coord c = space[stream.next_below(space.size())];
    double* slot = nullptr;
    double expected = 0.0;
    switch (c.kind) {
      case Coord::weight:
        slot = &probe.layers[c.layer].weight.values[c.index];
        expected = analytic.dweights[c.layer].values[c.index];
        break;
      case Coord::bias:
        slot = &probe.layers[c.layer].bias[c.index];
        expected = analytic.dbiases[c.layer][c.index];
        break;
      case Coord::in:
        slot = &probe_input[c.index];
        expected = analytic.dinput[c.index];
        break;
    }
    const double saved = *slot;
    *slot = saved + h;
    const double up = loss_at(probe, probe_input, label);
    *slot = saved - h;
    const double down = loss_at(probe, probe_input, label);
    *slot = saved;
    const double numeric = (up - down) / (2.0 * h);
    worst = std::max(worst, relative_error(expected, numeric));
  }
  return worst;
}

}  // namespace pncf
