#include "osnlink/eval.hpp"

#include <map>
#include <memory>
#include <string>
#include <thread>

#include "osnlink/error.hpp"

namespace osnlink {

namespace {

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

struct PairKey {
  std::string twitter_id;
  std::string flickr_id;
  bool label;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

FoldReport run_fold(const MlpConfig& base, std::span<const PairFeatureVector> features,
                    const std::map<PairKey, std::size_t>& index, const Fold& fold,
                    std::size_t fold_no, const CrossValidationOptions& options) {
  auto gather = [&](const LabeledPairSet& set) {
    std::vector<PairFeatureVector> out;
    out.reserve(set.pairs.size());
    for (const auto& p : set.pairs) {
      out.push_back(features[index.at({p.twitter_id, p.flickr_id, p.label})]);
    }
    return out;
  };

  const std::uint64_t fold_seed = options.seed ^ static_cast<std::uint64_t>(fold_no);
  MlpConfig cfg = base;
  cfg.rng_seed = fold_seed;

  LabeledPairSet fit_set = fold.train;
  LabeledPairSet stop_set = fold.train;
  try {
    auto [fit, stop] = split(fold.train, 1.0 - options.early_stop_fraction, mix_seed(fold_seed));
    fit_set = std::move(fit);
    stop_set = std::move(stop);
  } catch (const Error& e) {
    // Too small to hold anything back: stop on the training data itself.
    if (e.kind() != ErrorKind::DegenerateSplit) throw;
  }
  const auto fit_features = gather(fit_set);
  const auto stop_features = gather(stop_set);
  const auto test_features = gather(fold.test);

  TrainResult trained = train(cfg, fit_features, stop_features);
  const auto predictions = predict_all(trained.model, test_features);
  std::vector<bool> labels;
  labels.reserve(fold.test.pairs.size());
  for (const auto& p : fold.test.pairs) labels.push_back(p.label);

  FoldReport report;
  report.fold = fold_no;
  report.counts = confusion(predictions, labels);
  report.scores = scores(report.counts);
  report.epochs_trained = trained.history.size();
  report.best_epoch = trained.best_epoch;
  if (options.on_fold_model) options.on_fold_model(fold_no, trained.model);
  return report;
}

}  // namespace

ConfusionCounts confusion(std::span<const Prediction> predictions, std::span<const bool> labels) {
  if (predictions.size() != labels.size()) {
    fail(ErrorKind::LengthMismatch, std::to_string(predictions.size()) + " predictions for " +
                                        std::to_string(labels.size()) + " labels");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = predictions[i].predicted_same;
    if (predicted && labels[i]) ++c.tp;
    else if (predicted) ++c.fp;
    else if (labels[i]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

ConfusionCounts confusion(std::span<const Prediction> predictions, const std::vector<bool>& labels) {
  const std::unique_ptr<bool[]> flat(new bool[labels.size()]);
  for (std::size_t i = 0; i < labels.size(); ++i) flat[i] = labels[i];
  return confusion(predictions, std::span<const bool>(flat.get(), labels.size()));
}

Scores scores(const ConfusionCounts& c) noexcept {
  Scores s;
  const auto tp = static_cast<double>(c.tp);
  s.precision = safe_ratio(tp, tp + static_cast<double>(c.fp));
  s.recall = safe_ratio(tp, tp + static_cast<double>(c.fn));
  s.f1 = safe_ratio(2.0 * s.precision * s.recall, s.precision + s.recall);
  return s;
}

EvalReport metrics(const ConfusionCounts& c) noexcept {
  EvalReport r;
  r.counts = c;
  const Scores s = scores(c);
  r.precision = s.precision;
  r.recall = s.recall;
  r.f1 = s.f1;
  r.macro = s;
  return r;
}

EvalReport cross_validate_features(const MlpConfig& cfg,
                                   std::span<const PairFeatureVector> features,
                                   const LabeledPairSet& pairs,
                                   const CrossValidationOptions& options) {
  if (features.size() != pairs.pairs.size()) {
    fail(ErrorKind::LengthMismatch, "feature count differs from pair count");
  }
  std::map<PairKey, std::size_t> index;
  for (std::size_t i = 0; i < pairs.pairs.size(); ++i) {
    const auto& p = pairs.pairs[i];
    index.emplace(PairKey{p.twitter_id, p.flickr_id, p.label}, i);
  }
  const auto folds = options.user_disjoint ? k_folds_user_disjoint(pairs, options.k, options.seed)
                                           : k_folds(pairs, options.k, options.seed);

  std::vector<FoldReport> per_fold(folds.size());
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, folds.size()));
  if (jobs == 1) {
    for (std::size_t f = 0; f < folds.size(); ++f) {
      per_fold[f] = run_fold(cfg, features, index, folds[f], f, options);
    }
  } else {
    std::vector<std::exception_ptr> errors(folds.size());
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t f = w; f < folds.size(); f += jobs) {
          try {
            per_fold[f] = run_fold(cfg, features, index, folds[f], f, options);
          } catch (...) {
            errors[f] = std::current_exception();
          }
        }
      });
    }
    workers.clear();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EvalReport report;
  for (const auto& fold : per_fold) {
    report.counts += fold.counts;
    report.macro.precision += fold.scores.precision;
    report.macro.recall += fold.scores.recall;
    report.macro.f1 += fold.scores.f1;
  }
  const auto n = static_cast<double>(per_fold.size());
  report.macro.precision /= n;
  report.macro.recall /= n;
  report.macro.f1 /= n;
  const Scores micro = scores(report.counts);
  report.precision = micro.precision;
  report.recall = micro.recall;
  report.f1 = micro.f1;
  report.per_fold = std::move(per_fold);
  return report;
}

EvalReport cross_validate(const MlpConfig& cfg, const Featurizer& featurizer,
                          const LabeledPairSet& pairs, const CrossValidationOptions& options) {
  std::vector<PairFeatureVector> features;
  features.reserve(pairs.pairs.size());
  for (const auto& p : pairs.pairs) {
    auto v = featurizer(p);
    v.label = p.label;
    features.push_back(std::move(v));
  }
  return cross_validate_features(cfg, features, pairs, options);
}

}  // namespace osnlink
