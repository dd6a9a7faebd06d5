#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "osnlink/dataset.hpp"
#include "osnlink/mlp.hpp"

namespace osnlink {

/// Counts for the positive ("same individual") class.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct FoldReport {
  std::size_t fold = 0;
  ConfusionCounts counts;
  Scores scores;
  std::size_t epochs_trained = 0;
  std::size_t best_epoch = 0;
};

struct EvalReport {
  ConfusionCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Scores macro;  // unweighted mean of per-fold scores
  std::vector<FoldReport> per_fold;
};

/// Throws Error(LengthMismatch) when the lists differ in length.
ConfusionCounts confusion(std::span<const Prediction> predictions, std::span<const bool> labels);
ConfusionCounts confusion(std::span<const Prediction> predictions, const std::vector<bool>& labels);

/// Precision, recall and F1 with 0 for every zero denominator.
Scores scores(const ConfusionCounts& c) noexcept;
EvalReport metrics(const ConfusionCounts& c) noexcept;

using Featurizer = std::function<PairFeatureVector(const LabeledPair&)>;

struct CrossValidationOptions {
  std::size_t k = 10;
  std::uint64_t seed = 0;
  /// Fraction of each training partition held back for early stopping.
  double early_stop_fraction = 0.1;
  bool user_disjoint = false;
  /// Folds trained concurrently; results do not depend on it.
  std::size_t jobs = 1;
  /// Receives each fold's trained model; called from worker threads when jobs > 1.
  std::function<void(std::size_t fold, const MlpModel&)> on_fold_model;
};

/// Trains on k-1 folds and scores the held-out fold, k times. The training
/// partition is further split (stratified) so early stopping never sees the
/// test fold. Fold i trains with seed `seed ^ i`. Counts are micro-averaged.
EvalReport cross_validate(const MlpConfig& cfg, const Featurizer& featurizer,
                          const LabeledPairSet& pairs, const CrossValidationOptions& options);

/// Same, on already featurized vectors aligned with `pairs.pairs`.
EvalReport cross_validate_features(const MlpConfig& cfg,
                                   std::span<const PairFeatureVector> features,
                                   const LabeledPairSet& pairs,
                                   const CrossValidationOptions& options);

}  // namespace osnlink
