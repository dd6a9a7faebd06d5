#pragma once

// Feed-forward classifier: input -> 3 x (dense + ReLU + dropout) -> dense ->
// softmax over {different, same}. Trained with categorical cross-entropy and
// Adam, with early stopping on validation loss.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "osnlink/profile.hpp"
#include "osnlink/rng.hpp"

namespace osnlink {

/// Output index of the "same individual" class.
inline constexpr std::size_t kPositiveClass = 1;

struct MlpConfig {
  std::size_t input_dim = 1;
  std::size_t hidden_nodes = 50;
  std::size_t n_hidden_layers = 3;
  std::size_t output_dim = 2;
  double dropout_rate = 0.5;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 200;
  std::size_t early_stop_patience = 10;
  std::uint64_t rng_seed = 0;

  /// Throws Error(InvalidArgument) on out-of-range settings.
  void validate() const;

  friend bool operator==(const MlpConfig&, const MlpConfig&) = default;
};

/// weights is fan_in x fan_out, so a batch X (rows = samples) maps to X W + b.
struct DenseLayer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
};

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

struct AdamState {
  Gradients first_moment;
  Gradients second_moment;
  std::uint64_t step = 0;
};

struct MlpModel {
  MlpConfig config;
  std::vector<DenseLayer> layers;
  AdamState adam;
};

struct Prediction {
  std::array<double, 2> probabilities{0.5, 0.5};
  bool predicted_same = false;
};

/// Intermediate values of a forward pass over a batch (one row per sample).
struct ForwardCache {
  Eigen::MatrixXd input;
  std::vector<Eigen::MatrixXd> pre_activations;  // one per layer
  std::vector<Eigen::MatrixXd> activations;      // hidden outputs after dropout
  std::vector<Eigen::MatrixXd> dropout_masks;    // 0 or 1/(1-rate); empty at inference
  Eigen::MatrixXd probabilities;
};

/// He-style uniform weights in +-sqrt(6 / fan_in), zero biases, zeroed Adam state.
MlpModel init_model(const MlpConfig& cfg);

/// Batched forward pass. Dropout is applied after each hidden ReLU only when
/// `training`; `rng` is then required.
ForwardCache forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs, bool training,
                           Rng* rng);

/// Forward pass reusing previously drawn dropout masks (one per hidden layer).
ForwardCache forward_with_masks(const MlpModel& model, const Eigen::MatrixXd& inputs,
                                const std::vector<Eigen::MatrixXd>& masks);

/// Single-sample forward pass. Throws Error(DimensionMismatch) on a wrong input size.
std::pair<Prediction, ForwardCache> forward(const MlpModel& model, std::span<const double> x,
                                            bool training, Rng& rng);

Prediction to_prediction(const Eigen::Ref<const Eigen::RowVectorXd>& probabilities);

/// Row-wise softmax with max subtraction.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits);

/// -log p[label class], with p floored at 1e-12.
double loss_cce(const Prediction& pred, bool label);

/// Mean cross-entropy of a cached batch.
double batch_loss(const ForwardCache& cache, std::span<const std::uint8_t> labels);

/// Gradients of the mean batch cross-entropy with the cached dropout masks.
Gradients backward_batch(const MlpModel& model, const ForwardCache& cache,
                         std::span<const std::uint8_t> labels);
Gradients backward(const MlpModel& model, const ForwardCache& cache, bool label);

/// Bias-corrected Adam update. Throws Error(DimensionMismatch) when the
/// gradient shapes do not match the parameters.
void adam_step(MlpModel& model, const Gradients& gradients);

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double validation_loss = 0.0;
};

struct TrainResult {
  MlpModel model;  // snapshot with the lowest validation loss
  std::vector<EpochStats> history;
  std::size_t best_epoch = 0;
};

/// Mini-batch training with seeded shuffling and early stopping: training
/// ends once `early_stop_patience` + 1 consecutive epochs fail to lower the
/// validation loss, or after `max_epochs`. Inputs are standardized with the
/// training set's column means and deviations while fitting; the returned
/// model has that scaling folded into its first layer and takes raw inputs.
///
/// Throws Error(EmptyDataset) for empty sets, Error(DimensionMismatch) when a
/// vector's size differs from cfg.input_dim, Error(InvalidArgument) for an
/// unlabeled vector.
TrainResult train(const MlpConfig& cfg, std::span<const PairFeatureVector> train_set,
                  std::span<const PairFeatureVector> validation_set);

Prediction predict(const MlpModel& model, std::span<const double> x);
std::vector<Prediction> predict_all(const MlpModel& model,
                                    std::span<const PairFeatureVector> samples);

/// Binary model file; layout documented in docs/model_format.md.
void save_model(const MlpModel& model, std::ostream& out);
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(std::istream& in);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace osnlink
