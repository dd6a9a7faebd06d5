#include "osnlink/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "osnlink/error.hpp"

namespace osnlink {

namespace {

constexpr double kProbabilityFloor = 1e-12;

std::size_t layer_count(const MlpConfig& cfg) { return cfg.n_hidden_layers + 1; }

Gradients zero_like(const std::vector<DenseLayer>& layers) {
  Gradients g;
  for (const auto& layer : layers) {
    g.weights.push_back(Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  return g;
}

Eigen::MatrixXd affine(const Eigen::MatrixXd& in, const DenseLayer& layer) {
  Eigen::MatrixXd z = in * layer.weights;
  z.rowwise() += layer.bias.transpose();
  return z;
}

void require_input_dim(const MlpModel& model, Eigen::Index cols) {
  if (static_cast<std::size_t>(cols) != model.config.input_dim) {
    fail(ErrorKind::DimensionMismatch, "input has " + std::to_string(cols) +
                                           " features, model expects " +
                                           std::to_string(model.config.input_dim));
  }
}

/// Shared forward body: `draw` supplies the dropout mask of hidden layer l
/// for an (n x width) activation, or nullptr for none.
template <typename MaskFn>
ForwardCache run_forward(const MlpModel& model, const Eigen::MatrixXd& inputs, MaskFn&& mask_for) {
  require_input_dim(model, inputs.cols());
  ForwardCache cache;
  cache.input = inputs;
  const std::size_t hidden = model.config.n_hidden_layers;
  const Eigen::MatrixXd* current = &cache.input;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    cache.pre_activations.push_back(affine(*current, model.layers[l]));
    if (l == hidden) break;
    Eigen::MatrixXd act = cache.pre_activations.back().cwiseMax(0.0);
    if (const Eigen::MatrixXd* mask = mask_for(l, act.rows(), act.cols())) {
      act = act.cwiseProduct(*mask);
      cache.dropout_masks.push_back(*mask);
    }
    cache.activations.push_back(std::move(act));
    current = &cache.activations.back();
  }
  cache.probabilities = softmax_rows(cache.pre_activations.back());
  return cache;
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& source, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), source.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = source.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

struct Dataset {
  Eigen::MatrixXd features;
  std::vector<std::uint8_t> labels;
};

Dataset to_dataset(std::span<const PairFeatureVector> samples, std::size_t input_dim,
                   const char* what) {
  if (samples.empty()) fail(ErrorKind::EmptyDataset, std::string(what) + " set is empty");
  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(samples.size()),
                    static_cast<Eigen::Index>(input_dim));
  d.labels.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (s.values.size() != input_dim) {
      fail(ErrorKind::DimensionMismatch, std::string(what) + " vector " + std::to_string(i) +
                                             " has " + std::to_string(s.values.size()) +
                                             " values, expected " + std::to_string(input_dim));
    }
    if (!s.label) {
      fail(ErrorKind::InvalidArgument, std::string(what) + " vector " + std::to_string(i) +
                                           " carries no label");
    }
    for (std::size_t j = 0; j < input_dim; ++j) {
      d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.values[j];
    }
    d.labels.push_back(*s.label ? 1 : 0);
  }
  return d;
}

}  // namespace

void MlpConfig::validate() const {
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidArgument, "MlpConfig: " + why); };
  if (input_dim == 0) bad("input_dim must be positive");
  if (hidden_nodes == 0) bad("hidden_nodes must be positive");
  if (n_hidden_layers == 0) bad("n_hidden_layers must be positive");
  if (output_dim != 2) bad("output_dim must be 2");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) bad("dropout_rate must lie in [0, 1)");
  if (!(learning_rate > 0.0)) bad("learning_rate must be positive");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) bad("adam_beta1 must lie in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) bad("adam_beta2 must lie in [0, 1)");
  if (!(adam_eps > 0.0)) bad("adam_eps must be positive");
  if (batch_size == 0) bad("batch_size must be positive");
  if (max_epochs == 0) bad("max_epochs must be positive");
}

MlpModel init_model(const MlpConfig& cfg) {
  cfg.validate();
  MlpModel model;
  model.config = cfg;
  Rng rng(cfg.rng_seed);
  std::size_t fan_in = cfg.input_dim;
  for (std::size_t l = 0; l < layer_count(cfg); ++l) {
    const std::size_t fan_out = (l + 1 == layer_count(cfg)) ? cfg.output_dim : cfg.hidden_nodes;
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    DenseLayer layer;
    layer.weights.resize(static_cast<Eigen::Index>(fan_in), static_cast<Eigen::Index>(fan_out));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        layer.weights(r, c) = rng.uniform(-bound, bound);
      }
    }
    layer.bias = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fan_out));
    model.layers.push_back(std::move(layer));
    fan_in = fan_out;
  }
  model.adam.first_moment = zero_like(model.layers);
  model.adam.second_moment = zero_like(model.layers);
  return model;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double peak = logits.row(r).maxCoeff();
    out.row(r) = (logits.row(r).array() - peak).exp();
    out.row(r) /= out.row(r).sum();
  }
  return out;
}

ForwardCache forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs, bool training,
                           Rng* rng) {
  const double rate = model.config.dropout_rate;
  if (!training || rate == 0.0) {
    return run_forward(model, inputs,
                       [](std::size_t, Eigen::Index, Eigen::Index) -> const Eigen::MatrixXd* {
                         return nullptr;
                       });
  }
  if (rng == nullptr) fail(ErrorKind::InvalidArgument, "training forward pass needs an Rng");
  const double keep = 1.0 - rate;
  const double scale = 1.0 / keep;
  Eigen::MatrixXd mask;
  return run_forward(model, inputs,
                     [&](std::size_t, Eigen::Index rows, Eigen::Index cols) -> const Eigen::MatrixXd* {
                       mask.resize(rows, cols);
                       for (Eigen::Index r = 0; r < rows; ++r) {
                         for (Eigen::Index c = 0; c < cols; ++c) {
                           mask(r, c) = rng->bernoulli(keep) ? scale : 0.0;
                         }
                       }
                       return &mask;
                     });
}

ForwardCache forward_with_masks(const MlpModel& model, const Eigen::MatrixXd& inputs,
                                const std::vector<Eigen::MatrixXd>& masks) {
  if (!masks.empty() && masks.size() != model.config.n_hidden_layers) {
    fail(ErrorKind::DimensionMismatch, "expected one dropout mask per hidden layer");
  }
  return run_forward(model, inputs,
                     [&](std::size_t l, Eigen::Index rows, Eigen::Index cols) -> const Eigen::MatrixXd* {
                       if (masks.empty()) return nullptr;
                       if (masks[l].rows() != rows || masks[l].cols() != cols) {
                         fail(ErrorKind::DimensionMismatch, "dropout mask shape mismatch");
                       }
                       return &masks[l];
                     });
}

Prediction to_prediction(const Eigen::Ref<const Eigen::RowVectorXd>& probabilities) {
  Prediction p;
  p.probabilities = {probabilities(0), probabilities(1)};
  p.predicted_same = p.probabilities[kPositiveClass] >= 0.5;
  return p;
}

std::pair<Prediction, ForwardCache> forward(const MlpModel& model, std::span<const double> x,
                                            bool training, Rng& rng) {
  require_input_dim(model, static_cast<Eigen::Index>(x.size()));
  const Eigen::MatrixXd input =
      Eigen::Map<const Eigen::RowVectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  ForwardCache cache = forward_batch(model, input, training, &rng);
  Prediction pred = to_prediction(cache.probabilities.row(0));
  return {pred, std::move(cache)};
}

double loss_cce(const Prediction& pred, bool label) {
  const double p = pred.probabilities[label ? kPositiveClass : 1 - kPositiveClass];
  return -std::log(std::max(p, kProbabilityFloor));
}

double batch_loss(const ForwardCache& cache, std::span<const std::uint8_t> labels) {
  double total = 0.0;
  for (Eigen::Index r = 0; r < cache.probabilities.rows(); ++r) {
    const auto cls = labels[static_cast<std::size_t>(r)] ? kPositiveClass : 1 - kPositiveClass;
    total -= std::log(std::max(cache.probabilities(r, static_cast<Eigen::Index>(cls)),
                               kProbabilityFloor));
  }
  return total / static_cast<double>(cache.probabilities.rows());
}

Gradients backward_batch(const MlpModel& model, const ForwardCache& cache,
                         std::span<const std::uint8_t> labels) {
  const Eigen::Index n = cache.probabilities.rows();
  if (static_cast<std::size_t>(n) != labels.size()) {
    fail(ErrorKind::DimensionMismatch, "label count differs from batch size");
  }
  Gradients g = zero_like(model.layers);
  // Softmax + cross-entropy: dL/dlogits = (p - onehot) / n.
  Eigen::MatrixXd delta = cache.probabilities;
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto cls = labels[static_cast<std::size_t>(r)] ? kPositiveClass : 1 - kPositiveClass;
    delta(r, static_cast<Eigen::Index>(cls)) -= 1.0;
  }
  delta /= static_cast<double>(n);

  const bool has_masks = !cache.dropout_masks.empty();
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    const Eigen::MatrixXd& layer_input = (l == 0) ? cache.input : cache.activations[l - 1];
    g.weights[l] = layer_input.transpose() * delta;
    g.biases[l] = delta.colwise().sum().transpose();
    if (l == 0) break;
    Eigen::MatrixXd upstream = delta * model.layers[l].weights.transpose();
    const Eigen::MatrixXd& z = cache.pre_activations[l - 1];
    upstream = upstream.cwiseProduct((z.array() > 0.0).cast<double>().matrix());
    if (has_masks) upstream = upstream.cwiseProduct(cache.dropout_masks[l - 1]);
    delta = std::move(upstream);
  }
  return g;
}

Gradients backward(const MlpModel& model, const ForwardCache& cache, bool label) {
  const std::uint8_t y = label ? 1 : 0;
  return backward_batch(model, cache, std::span<const std::uint8_t>(&y, 1));
}

void adam_step(MlpModel& model, const Gradients& gradients) {
  if (gradients.weights.size() != model.layers.size() ||
      gradients.biases.size() != model.layers.size()) {
    fail(ErrorKind::DimensionMismatch, "gradient layer count differs from model");
  }
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto& w = model.layers[l].weights;
    if (gradients.weights[l].rows() != w.rows() || gradients.weights[l].cols() != w.cols() ||
        gradients.biases[l].size() != model.layers[l].bias.size()) {
      fail(ErrorKind::DimensionMismatch, "gradient shape differs at layer " + std::to_string(l));
    }
  }
  const auto& cfg = model.config;
  auto& adam = model.adam;
  ++adam.step;
  const double t = static_cast<double>(adam.step);
  const double correct1 = 1.0 - std::pow(cfg.adam_beta1, t);
  const double correct2 = 1.0 - std::pow(cfg.adam_beta2, t);
  auto update = [&](auto& param, const auto& grad, auto& m, auto& v) {
    m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * grad;
    v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * grad.cwiseProduct(grad);
    param.array() -= cfg.learning_rate * (m.array() / correct1) /
                     ((v.array() / correct2).sqrt() + cfg.adam_eps);
  };
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    update(model.layers[l].weights, gradients.weights[l], adam.first_moment.weights[l],
           adam.second_moment.weights[l]);
    update(model.layers[l].bias, gradients.biases[l], adam.first_moment.biases[l],
           adam.second_moment.biases[l]);
  }
}

/// Per-column mean and standard deviation (1 for constant columns).
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  explicit Standardizer(const Eigen::MatrixXd& x) {
    mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - mean;
    scale = (centered.array().square().colwise().sum() / static_cast<double>(x.rows())).sqrt();
    for (Eigen::Index j = 0; j < scale.size(); ++j) {
      if (!(scale(j) > 1e-12)) scale(j) = 1.0;
    }
  }

  void apply(Eigen::MatrixXd& x) const {
    x = (x.rowwise() - mean).array().rowwise() / scale.array();
  }

  // Rewrites the first layer so the model accepts unscaled inputs.
  void fold_into(MlpModel& model) const {
    DenseLayer& first = model.layers.front();
    const Eigen::RowVectorXd shift = mean.array() / scale.array();
    first.bias -= (shift * first.weights).transpose();
    first.weights = scale.cwiseInverse().asDiagonal() * first.weights;
  }
};

TrainResult train(const MlpConfig& cfg, std::span<const PairFeatureVector> train_set,
                  std::span<const PairFeatureVector> validation_set) {
  cfg.validate();
  Dataset fit = to_dataset(train_set, cfg.input_dim, "training");
  Dataset val = to_dataset(validation_set, cfg.input_dim, "validation");
  const Standardizer standardizer(fit.features);
  standardizer.apply(fit.features);
  standardizer.apply(val.features);

  TrainResult result;
  MlpModel model = init_model(cfg);
  Rng rng(mix_seed(cfg.rng_seed ^ 0x6d6c702d74726169ULL));
  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  double best_loss = std::numeric_limits<double>::infinity();
  std::size_t stale_epochs = 0;
  result.model = model;
  std::vector<std::uint8_t> batch_labels;
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      const std::span<const std::size_t> rows(order.data() + start, stop - start);
      batch_labels.clear();
      for (const std::size_t r : rows) batch_labels.push_back(fit.labels[r]);
      const ForwardCache cache = forward_batch(model, gather_rows(fit.features, rows), true, &rng);
      loss_sum += batch_loss(cache, batch_labels) * static_cast<double>(rows.size());
      adam_step(model, backward_batch(model, cache, batch_labels));
    }
    const double val_loss = batch_loss(forward_batch(model, val.features, false, nullptr), val.labels);
    result.history.push_back({epoch, loss_sum / static_cast<double>(order.size()), val_loss});
    if (val_loss < best_loss) {
      best_loss = val_loss;
      result.model = model;
      result.best_epoch = epoch;
      stale_epochs = 0;
    } else if (++stale_epochs > cfg.early_stop_patience) {
      break;
    }
  }
  standardizer.fold_into(result.model);
  return result;
}

Prediction predict(const MlpModel& model, std::span<const double> x) {
  require_input_dim(model, static_cast<Eigen::Index>(x.size()));
  const Eigen::MatrixXd input =
      Eigen::Map<const Eigen::RowVectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  return to_prediction(forward_batch(model, input, false, nullptr).probabilities.row(0));
}

std::vector<Prediction> predict_all(const MlpModel& model,
                                    std::span<const PairFeatureVector> samples) {
  std::vector<Prediction> out;
  if (samples.empty()) return out;
  Eigen::MatrixXd inputs(static_cast<Eigen::Index>(samples.size()),
                         static_cast<Eigen::Index>(model.config.input_dim));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].values.size() != model.config.input_dim) {
      fail(ErrorKind::DimensionMismatch, "sample " + std::to_string(i) + " has " +
                                             std::to_string(samples[i].values.size()) +
                                             " values, model expects " +
                                             std::to_string(model.config.input_dim));
    }
    inputs.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(
        samples[i].values.data(), static_cast<Eigen::Index>(samples[i].values.size()));
  }
  const auto probs = forward_batch(model, inputs, false, nullptr).probabilities;
  out.reserve(samples.size());
  for (Eigen::Index r = 0; r < probs.rows(); ++r) out.push_back(to_prediction(probs.row(r)));
  return out;
}

}  // namespace osnlink
