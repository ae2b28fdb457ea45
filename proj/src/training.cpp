#include "pncf/training.hpp"

#include <chrono>
#include <cmath>

#include "pncf/rng.hpp"

namespace pncf {

void TrainConfig::validate() const {
  if (batch_size < 1) throw ConfigError("TrainConfig: batch_size must be >= 1");
  if (negatives_per_positive < 1) {
    throw ConfigError("TrainConfig: negatives_per_positive must be >= 1");
  }
  if (patience < 1) throw ConfigError("TrainConfig: patience must be >= 1");
  if (epochs > 0 && patience > epochs) {
    throw ConfigError("TrainConfig: patience " + std::to_string(patience) +
                      " exceeds epochs " + std::to_string(epochs));
  }
}

namespace {

struct ParamBinding {
  std::vector<std::span<double>> params;
  std::vector<std::size_t> sizes;
};

ParamBinding bind_params(NcfParams& p, bool freeze_trait_emb) {
  ParamBinding binding;
  auto add = [&](std::vector<double>& v) {
    binding.params.emplace_back(v);
    binding.sizes.push_back(v.size());
  };
  add(p.user_emb.values);
  add(p.item_emb.values);
  if (!p.trait_emb.empty() && !freeze_trait_emb) add(p.trait_emb.values);
  for (MlpLayer& layer : p.mlp.layers) {
    add(layer.weight.values);
    add(layer.bias);
  }
  return binding;
}

std::vector<std::span<const double>> bind_grads(const NcfGradients& g,
                                                bool freeze_trait_emb) {
  std::vector<std::span<const double>> grads;
  grads.emplace_back(g.duser_emb.values);
  grads.emplace_back(g.ditem_emb.values);
  if (!g.dtrait_emb.empty() && !freeze_trait_emb) {
    grads.emplace_back(g.dtrait_emb.values);
  }
  for (std::size_t l = 0; l < g.dmlp_weights.size(); ++l) {
    grads.emplace_back(g.dmlp_weights[l].values);
    grads.emplace_back(g.dmlp_biases[l]);
  }
  return grads;
}

}  // namespace

TrainResult train(const LeaveOneOutSplit& split,
                  const PersonalityTable* personalities,
                  const PersonalityMode& mode, const TrainConfig& config,
                  const Hyperparams& hyper) {
  config.validate();
  const InteractionSet& data = split.train;
  if (data.user_count() == 0 || data.item_count() == 0) {
    throw DataError("train: empty interaction set");
  }

  const PersonalityContext context =
      PersonalityContext::build(mode, data, personalities);

  TrainResult result;
  result.params = init_params(data.user_count(), data.item_count(), mode, hyper);
  if (config.epochs == 0) return result;

  AdamState adam = AdamState::init(
      bind_params(result.params, config.freeze_trait_emb).sizes, config.adam);

  EvalConfig val_config;
  val_config.ks = {10};
  val_config.negatives = config.eval_negatives;
  val_config.seed = config.seed;

  NcfParams best = result.params;
  double best_hr = -1.0;
  std::size_t epochs_since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();

    // fresh negatives and a fresh order every epoch, keyed by (seed, epoch)
    NegativeSampleResult sampled = sample_train_negatives(
        split, config.negatives_per_positive, rng::key(config.seed, 0x6e6567, epoch));
    rng::Stream shuffle_stream(rng::key(config.seed, 0x73687566, epoch));
    rng::shuffle(sampled.samples, shuffle_stream);

    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < sampled.samples.size();
         start += config.batch_size) {
      const std::size_t len =
          std::min(config.batch_size, sampled.samples.size() - start);
      const std::span<const TrainingSample> batch(&sampled.samples[start], len);
      BatchResult br = batch_gradients(result.params, context, batch);
      if (!std::isfinite(br.mean_loss)) {
        throw Error("train: loss diverged (non-finite) at epoch " +
                    std::to_string(epoch) + ", batch " +
                    std::to_string(batches + 1));
      }
      loss_sum += br.mean_loss * static_cast<double>(len);
      ++batches;

      ParamBinding binding = bind_params(result.params, config.freeze_trait_emb);
      const auto grads = bind_grads(br.grads, config.freeze_trait_emb);
      adam_step(binding.params, grads, adam);
    }

    EpochReport report;
    report.epoch = epoch;
    report.train_loss =
        loss_sum / static_cast<double>(sampled.samples.size());

    const EvalResult val = evaluate(result.params, split, context, val_config);
    report.val_hr10 = val.report.hr[0];
    report.val_ndcg10 = val.report.ndcg[0];
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    result.reports.push_back(report);

    if (report.val_hr10 > best_hr) {
      best_hr = report.val_hr10;
      best = result.params;
      result.best_epoch = epoch;
      epochs_since_best = 0;
    } else {
      ++epochs_since_best;
      if (epochs_since_best >= config.patience) break;
    }
  }

  result.params = std::move(best);
  return result;
}

}  // namespace pncf
