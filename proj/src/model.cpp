#include "pncf/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "pncf/rng.hpp"

namespace pncf {

std::string_view personality_kind_name(PersonalityKind kind) {
  switch (kind) {
    case PersonalityKind::plain: return "plain";
    case PersonalityKind::random_label: return "random";
    case PersonalityKind::same_trait: return "same";
    case PersonalityKind::most_salient: return "salient";
    case PersonalityKind::soft_labeled: return "soft";
    case PersonalityKind::hard_coded: return "hard";
  }
  return "plain";
}

PersonalityKind parse_personality_kind(std::string_view name) {
  if (name == "plain") return PersonalityKind::plain;
  if (name == "random") return PersonalityKind::random_label;
  if (name == "same") return PersonalityKind::same_trait;
  if (name == "salient") return PersonalityKind::most_salient;
  if (name == "soft") return PersonalityKind::soft_labeled;
  if (name == "hard") return PersonalityKind::hard_coded;
  throw ConfigError("unknown personality mode '" + std::string(name) +
                    "'; expected plain|random|same|salient|soft|hard");
}

std::size_t PersonalityMode::feature_dim() const {
  switch (kind) {
    case PersonalityKind::plain: return 0;
    case PersonalityKind::hard_coded: return kTraitCount;
    default: return kTraitVectorDim;
  }
}

bool PersonalityMode::uses_trait_embedding() const {
  return kind == PersonalityKind::random_label ||
         kind == PersonalityKind::same_trait ||
         kind == PersonalityKind::most_salient ||
         kind == PersonalityKind::soft_labeled;
}

bool PersonalityMode::needs_scores() const {
  return kind == PersonalityKind::most_salient ||
         kind == PersonalityKind::soft_labeled ||
         kind == PersonalityKind::hard_coded;
}

void NcfParams::validate() const {
  if (user_emb.cols != kEmbeddingDim || item_emb.cols != kEmbeddingDim) {
    throw ShapeError("NcfParams: embeddings must be " +
                     std::to_string(kEmbeddingDim) + "-dimensional");
  }
  if (mode.uses_trait_embedding()) {
    require_shape(trait_emb, kTraitCount, kTraitVectorDim, "trait_emb");
  } else if (!trait_emb.empty()) {
    throw ShapeError("NcfParams: trait_emb must be empty in mode " +
                     std::string(personality_kind_name(mode.kind)));
  }
  mlp.validate();
  const std::size_t expected = 2 * kEmbeddingDim + mode.feature_dim();
  if (mlp.input_width() != expected) {
    throw ShapeError("NcfParams: MLP input width " +
                     std::to_string(mlp.input_width()) + ", mode needs " +
                     std::to_string(expected));
  }
}

NcfParams init_params(std::size_t users, std::size_t items,
                      const PersonalityMode& mode, const Hyperparams& hyper) {
  if (users < 1 || items < 1) {
    throw ConfigError("init_params: need at least one user and one item");
  }
  NcfParams params;
  params.mode = mode;

  rng::Stream stream(rng::key(hyper.seed, 0x696e6974));
  auto fill_normal = [&](Matrix& m) {
    for (double& x : m.values) x = hyper.init_scale * stream.next_normal();
  };
  params.user_emb = Matrix(users, kEmbeddingDim);
  fill_normal(params.user_emb);
  params.item_emb = Matrix(items, kEmbeddingDim);
  fill_normal(params.item_emb);
  if (mode.uses_trait_embedding()) {
    params.trait_emb = Matrix(kTraitCount, kTraitVectorDim);
    fill_normal(params.trait_emb);
  }

  std::vector<std::size_t> widths;
  widths.push_back(2 * kEmbeddingDim + mode.feature_dim());
  widths.insert(widths.end(), hyper.mlp_hidden.begin(), hyper.mlp_hidden.end());
  widths.push_back(1);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    MlpLayer layer;
    layer.weight = Matrix(widths[l], widths[l + 1]);
    const double bound =
        std::sqrt(6.0 / static_cast<double>(widths[l] + widths[l + 1]));
    for (double& w : layer.weight.values) {
      w = bound * (2.0 * stream.next_double() - 1.0);
    }
    layer.bias.assign(widths[l + 1], 0.0);
    params.mlp.layers.push_back(std::move(layer));
  }
  params.validate();
  return params;
}

PersonalityContext PersonalityContext::build(
    const PersonalityMode& mode, const InteractionSet& interactions,
    const PersonalityTable* personalities) {
  PersonalityContext context;
  context.mode = mode;
  const std::size_t n = interactions.user_count();

  if (mode.needs_scores()) {
    if (personalities == nullptr) {
      throw ConfigError("mode '" +
                        std::string(personality_kind_name(mode.kind)) +
                        "' requires personality scores");
    }
    for (const std::string& user : interactions.user_ids) {
      if (personalities->find(user) == nullptr) {
        throw ConfigError("user '" + user + "' has no personality scores, "
                          "required by mode '" +
                          std::string(personality_kind_name(mode.kind)) + "'");
      }
    }
  }

  switch (mode.kind) {
    case PersonalityKind::plain:
      break;
    case PersonalityKind::random_label: {
      const auto labels =
          assign_random_labels(interactions.user_ids, mode.label_seed);
      context.label.resize(n);
      for (std::size_t u = 0; u < n; ++u) {
        context.label[u] =
            static_cast<int>(labels.at(interactions.user_ids[u]));
      }
      break;
    }
    case PersonalityKind::same_trait:
      context.label.assign(n, static_cast<int>(mode.same_trait));
      break;
    case PersonalityKind::most_salient: {
      context.label.resize(n);
      for (std::size_t u = 0; u < n; ++u) {
        context.label[u] = static_cast<int>(
            most_salient(*personalities->find(interactions.user_ids[u])));
      }
      break;
    }
    case PersonalityKind::soft_labeled: {
      context.soft.resize(n);
      for (std::size_t u = 0; u < n; ++u) {
        context.soft[u] =
            soft_weights(*personalities->find(interactions.user_ids[u]),
                         mode.temperature)
                .values();
      }
      break;
    }
    case PersonalityKind::hard_coded: {
      context.hard.resize(n);
      for (std::size_t u = 0; u < n; ++u) {
        context.hard[u] = hard_vector(
            *personalities->find(interactions.user_ids[u]), mode.hard_policy);
      }
      break;
    }
  }
  return context;
}

namespace {

void write_feature(const NcfParams& params, const PersonalityContext& context,
                   std::size_t user, double* out) {
  switch (context.mode.kind) {
    case PersonalityKind::plain:
      break;
    case PersonalityKind::random_label:
    case PersonalityKind::same_trait:
    case PersonalityKind::most_salient: {
      const auto row = static_cast<std::size_t>(context.label[user]);
      std::memcpy(out, params.trait_emb.row(row),
                  kTraitVectorDim * sizeof(double));
      break;
    }
    case PersonalityKind::soft_labeled: {
      const auto& weights = context.soft[user];
      for (std::size_t d = 0; d < kTraitVectorDim; ++d) out[d] = 0.0;
      for (std::size_t t = 0; t < kTraitCount; ++t) {
        const double* row = params.trait_emb.row(t);
        for (std::size_t d = 0; d < kTraitVectorDim; ++d) {
          out[d] += weights[t] * row[d];
        }
      }
      break;
    }
    case PersonalityKind::hard_coded:
      std::memcpy(out, context.hard[user].data(),
                  kTraitCount * sizeof(double));
      break;
  }
}

Matrix assemble_inputs(const NcfParams& params,
                       const PersonalityContext& context,
                       std::span<const TrainingSample> batch) {
  const std::size_t fd = params.mode.feature_dim();
  Matrix input(batch.size(), 2 * kEmbeddingDim + fd);
  for (std::size_t r = 0; r < batch.size(); ++r) {
    double* row = input.row(r);
    std::memcpy(row, params.user_emb.row(batch[r].user),
                kEmbeddingDim * sizeof(double));
    std::memcpy(row + kEmbeddingDim, params.item_emb.row(batch[r].item),
                kEmbeddingDim * sizeof(double));
    if (fd > 0) {
      write_feature(params, context, batch[r].user, row + 2 * kEmbeddingDim);
    }
  }
  return input;
}

void check_user_item(const NcfParams& params, std::size_t user,
                     std::size_t item) {
  if (user >= params.users()) {
    throw IndexError("user index " + std::to_string(user) + " out of range [0," +
                     std::to_string(params.users()) + ")");
  }
  if (item >= params.items()) {
    throw IndexError("item index " + std::to_string(item) + " out of range [0," +
                     std::to_string(params.items()) + ")");
  }
}

}  // namespace

std::vector<double> personality_feature(const NcfParams& params,
                                        const PersonalityContext& context,
                                        std::size_t user) {
  if (user >= params.users()) {
    throw IndexError("user index " + std::to_string(user) + " out of range");
  }
  std::vector<double> feature(params.mode.feature_dim(), 0.0);
  if (!feature.empty()) write_feature(params, context, user, feature.data());
  return feature;
}

double predict(const NcfParams& params, const PersonalityContext& context,
               std::size_t user, std::size_t item) {
  check_user_item(params, user, item);
  const TrainingSample sample{user, item, 1};
  const Matrix input = assemble_inputs(params, context, std::span(&sample, 1));
  return mlp_forward_batch(params.mlp, input).probs[0];
}

BatchResult batch_gradients(const NcfParams& params,
                            const PersonalityContext& context,
                            std::span<const TrainingSample> batch) {
  if (batch.empty()) throw ConfigError("batch_gradients: empty batch");
  for (const TrainingSample& s : batch) check_user_item(params, s.user, s.item);

  const Matrix input = assemble_inputs(params, context, batch);
  const MlpForward fwd = mlp_forward_batch(params.mlp, input);

  // mean loss over the batch; each row's seed is dL/dp scaled by 1/B
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  std::vector<double> seeds(batch.size());
  double loss_sum = 0.0;
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const BceResult bce = bce_loss(fwd.probs[r], batch[r].label);
    loss_sum += bce.loss;
    seeds[r] = bce.dloss_dp * inv_batch;
  }

  MlpBatchGrads mlp_grads = mlp_backward_batch(params.mlp, fwd, seeds);

  BatchResult result;
  result.mean_loss = loss_sum * inv_batch;
  result.grads.dmlp_weights = std::move(mlp_grads.dweights);
  result.grads.dmlp_biases = std::move(mlp_grads.dbiases);
  result.grads.duser_emb = Matrix(params.users(), kEmbeddingDim);
  result.grads.ditem_emb = Matrix(params.items(), kEmbeddingDim);
  if (params.mode.uses_trait_embedding()) {
    result.grads.dtrait_emb = Matrix(kTraitCount, kTraitVectorDim);
  }

  // scatter input gradients back to the referenced embedding rows
  const Matrix& dinput = mlp_grads.dinput;
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const double* drow = dinput.row(r);
    double* du = result.grads.duser_emb.row(batch[r].user);
    for (std::size_t d = 0; d < kEmbeddingDim; ++d) du[d] += drow[d];
    double* di = result.grads.ditem_emb.row(batch[r].item);
    for (std::size_t d = 0; d < kEmbeddingDim; ++d) {
      di[d] += drow[kEmbeddingDim + d];
    }

    const double* dfeat = drow + 2 * kEmbeddingDim;
    switch (params.mode.kind) {
      case PersonalityKind::plain:
      case PersonalityKind::hard_coded:
        break;  // no trait parameters on the path
      case PersonalityKind::random_label:
      case PersonalityKind::same_trait:
      case PersonalityKind::most_salient: {
        double* dt = result.grads.dtrait_emb.row(
            static_cast<std::size_t>(context.label[batch[r].user]));
        for (std::size_t d = 0; d < kTraitVectorDim; ++d) dt[d] += dfeat[d];
        break;
      }
      case PersonalityKind::soft_labeled: {
        const auto& weights = context.soft[batch[r].user];
        for (std::size_t t = 0; t < kTraitCount; ++t) {
          double* dt = result.grads.dtrait_emb.row(t);
          for (std::size_t d = 0; d < kTraitVectorDim; ++d) {
            dt[d] += weights[t] * dfeat[d];
          }
        }
        break;
      }
    }
  }
  return result;
}

}  // namespace pncf
