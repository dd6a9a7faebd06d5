#include <gtest/gtest.h>

#include "osnlink/error.hpp"
#include "osnlink/experiment.hpp"
#include "osnlink/synth.hpp"

using namespace osnlink;

namespace {

const Corpus& small_corpus() {
  static const Corpus c = to_corpus(generate_synthetic({40, 0.15, 5}));
  return c;
}

RunConfig quick(ModelKind model) {
  RunConfig cfg;
  cfg.model = model;
  cfg.k = 3;
  cfg.max_epochs = 3;
  cfg.neg_ratio = 2;
  return cfg;
}

std::size_t input_dim_of(const RunConfig& cfg) {
  const auto r = run_experiment(cfg, small_corpus());
  return report_json(cfg, r)["config"]["input_dim"].get<std::size_t>();
}

}  // namespace

TEST(Experiment, InputDimensionsPerModel) {
  auto cfg = quick(ModelKind::ProfileSimilarity);
  EXPECT_EQ(input_dim_of(cfg), 5u);
  cfg.include_names = false;
  EXPECT_EQ(input_dim_of(cfg), 3u);
  cfg.all_measures = true;
  EXPECT_EQ(input_dim_of(cfg), 19u);
  cfg = quick(ModelKind::Temporal);
  EXPECT_EQ(input_dim_of(cfg), 49u);
  cfg.temporal_mode = TemporalMode::DayOfWeek;
  EXPECT_EQ(input_dim_of(cfg), 15u);
  cfg = quick(ModelKind::Embedding);
  cfg.hidden_nodes = 20;
  EXPECT_EQ(input_dim_of(cfg), 2u * (kDefaultWordDim + kDefaultCharDim + 1));
  cfg.include_description = true;
  EXPECT_EQ(input_dim_of(cfg), 3u * (kDefaultWordDim + kDefaultCharDim + 1));
}

TEST(Experiment, ReportShapeAndDeterminism) {
  const auto cfg = quick(ModelKind::ProfileSimilarity);
  const auto a = run_experiment(cfg, small_corpus());
  const auto b = run_experiment(cfg, small_corpus());
  const auto ja = report_json(cfg, a);
  EXPECT_EQ(ja.dump(), report_json(cfg, b).dump());
  for (const char* key : {"model", "measure", "precision", "recall", "f1", "per_fold", "config", "seed",
                          "counts", "macro"}) {
    EXPECT_TRUE(ja.contains(key)) << key;
  }
  EXPECT_FALSE(ja.contains("metadata"));
  EXPECT_EQ(ja["per_fold"].size(), 3u);
  EXPECT_EQ(ja["model"], "ps");
  EXPECT_EQ(ja["measure"], "editex");
  EXPECT_EQ(ja["config"]["mlp"]["hidden_nodes"], 50);
  const auto stamped = report_json(cfg, a, "2026-01-01T00:00:00Z");
  EXPECT_EQ(stamped["metadata"]["timestamp"], "2026-01-01T00:00:00Z");
  auto stripped = stamped;
  stripped.erase("metadata");
  EXPECT_EQ(stripped.dump(), ja.dump());
  EXPECT_EQ(a.fold_models.size(), 3u);
  EXPECT_EQ(a.pairs.count(false), 2 * a.pairs.count(true));

  const auto text = report_text(cfg, a);
  EXPECT_NE(text.find("micro"), std::string::npos);
  EXPECT_NE(text.find("macro"), std::string::npos);
  EXPECT_NE(text.find("input_dim: 5"), std::string::npos);
}

TEST(Experiment, WritesOutputs) {
  const auto cfg = quick(ModelKind::Temporal);
  const auto r = run_experiment(cfg, small_corpus());
  const auto dir = std::filesystem::temp_directory_path() / "osnlink_experiment_out";
  std::filesystem::remove_all(dir);
  write_run_outputs(cfg, r, dir, "2026-01-01T00:00:00Z");
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "report.txt"));
  for (int i = 0; i < 3; ++i) {
    const auto model_path = dir / "models" / ("fold-" + std::to_string(i) + ".bin");
    ASSERT_TRUE(std::filesystem::exists(model_path));
    const auto m = load_model(model_path);
    EXPECT_EQ(m.config.input_dim, 49u);
  }
  std::filesystem::remove_all(dir);
}

TEST(Experiment, ConfigValidation) {
  auto cfg = quick(ModelKind::ProfileSimilarity);
  cfg.k = 1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = quick(ModelKind::Embedding);
  cfg.char_embeddings = "chars.txt";
  EXPECT_THROW(cfg.validate(), Error);
  cfg = quick(ModelKind::ProfileSimilarity);
  cfg.dropout_rate = 1.5;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_EQ(quick(ModelKind::Embedding).resolved_hidden_nodes(), 300u);
  EXPECT_EQ(quick(ModelKind::Temporal).resolved_hidden_nodes(), 50u);
  cfg = quick(ModelKind::ProfileSimilarity);
  cfg.learning_rate = -1.0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_EQ(parse_model_kind("embedding"), ModelKind::Embedding);
  EXPECT_FALSE(parse_model_kind("svm").has_value());
}

TEST(ScorePair, IdenticalProfiles) {
  UserProfile a{Platform::TwitterLike, "1", "janedoe", "Jane Doe", "tea", "Perth", 12};
  UserProfile b = a;
  b.platform = Platform::FlickrLike;
  const auto scores = score_pair(a, b, Measure::Editex);
  ASSERT_EQ(scores.size(), 5u);
  const std::vector<std::string> names = {"user_name_score", "real_name_score", "post_ratio",
                                          "description_score", "location_score"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(scores[i].feature, names[i]);
    EXPECT_EQ(scores[i].normalized, 1.0);
  }
  EXPECT_EQ(scores[0].raw, 0.0);
  EXPECT_EQ(score_pair(a, b, Measure::Editex, false).size(), 3u);
}

TEST(ScorePair, RawValues) {
  UserProfile a{Platform::TwitterLike, "1", "janedoe", "", "", "", 25};
  UserProfile b{Platform::FlickrLike, "2", "jane_doe", "", "", "", 100};
  const auto s = score_pair(a, b, Measure::Levenshtein);
  EXPECT_EQ(s[0].raw, 1.0);
  EXPECT_EQ(s[0].normalized, 0.875);
  EXPECT_EQ(s[2].normalized, 0.25);
}
