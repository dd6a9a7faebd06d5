#pragma once

// End-to-end experiment orchestration shared by the CLI and the acceptance
// suite: negative sampling, featurization, k-fold training and reporting.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "osnlink/dataset.hpp"
#include "osnlink/embedding.hpp"
#include "osnlink/eval.hpp"
#include "osnlink/mlp.hpp"
#include "osnlink/strsim.hpp"
#include "osnlink/temporal.hpp"

namespace osnlink {

enum class ModelKind { ProfileSimilarity, Temporal, Embedding };

std::string_view model_kind_name(ModelKind kind) noexcept;  // "ps" / "temporal" / "embedding"
std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept;

struct RunConfig {
  ModelKind model = ModelKind::ProfileSimilarity;
  Measure measure = Measure::Editex;
  bool all_measures = false;
  TemporalMode temporal_mode = TemporalMode::HourOfDay;
  bool include_names = true;
  bool include_description = false;
  std::size_t neg_ratio = 8;
  std::size_t k = 10;
  std::uint64_t seed = 42;
  bool user_disjoint = false;
  std::size_t jobs = 1;

  // MLP settings; hidden_nodes defaults to 50 (300 for the embedding model).
  std::optional<std::size_t> hidden_nodes;
  double learning_rate = 1e-3;
  double dropout_rate = 0.5;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 200;
  std::size_t patience = 10;

  // Embedding table: file-loaded when a path is given, hashed otherwise.
  std::optional<std::filesystem::path> embeddings;
  std::optional<std::filesystem::path> char_embeddings;
  std::size_t embedding_dim_word = kDefaultWordDim;
  std::size_t embedding_dim_char = kDefaultCharDim;
  std::uint64_t embedding_seed = 7;

  /// Throws Error(InvalidArgument) on inconsistent settings.
  void validate() const;
  std::size_t resolved_hidden_nodes() const;
};

struct RunResult {
  EvalReport report;
  MlpConfig mlp;  // resolved config (input_dim, hidden nodes, ...)
  LabeledPairSet pairs;
  std::vector<MlpModel> fold_models;
};

/// Pair features for the configured model; vectors are aligned with
/// `pairs.pairs` and carry their labels.
std::vector<PairFeatureVector> featurize(const RunConfig& cfg, const Corpus& corpus,
                                         const LabeledPairSet& pairs);

RunResult run_experiment(const RunConfig& cfg, const Corpus& corpus);

/// Machine-readable report: model, measure/mode, precision, recall, f1,
/// counts, macro, per_fold, config, seed. Timestamps go under "metadata"
/// only when `timestamp` is provided.
nlohmann::json report_json(const RunConfig& cfg, const RunResult& result,
                           const std::optional<std::string>& timestamp = std::nullopt);

nlohmann::json run_config_json(const RunConfig& cfg, const MlpConfig& mlp);

/// Plain-text table in the style of a results table, one row per fold plus
/// micro and macro rows.
std::string report_text(const RunConfig& cfg, const RunResult& result);

/// Writes report.json, report.txt and models/fold-<i>.bin into `out_dir`.
void write_run_outputs(const RunConfig& cfg, const RunResult& result,
                       const std::filesystem::path& out_dir, const std::string& timestamp);

struct FeatureScore {
  std::string feature;
  double normalized = 0.0;
  double raw = 0.0;
};

/// Per-feature normalized and raw scores for a profile pair.
std::vector<FeatureScore> score_pair(const UserProfile& a, const UserProfile& b, Measure m,
                                     bool include_names = true);

}  // namespace osnlink
