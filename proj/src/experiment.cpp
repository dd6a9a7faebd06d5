#include "osnlink/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "osnlink/error.hpp"

namespace osnlink {

namespace {

using nlohmann::json;

json counts_json(const ConfusionCounts& c) {
  return json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
}

json scores_json(const Scores& s) {
  return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

std::string fmt_row(std::string_view label, const Scores& s, const ConfusionCounts* c) {
  char buf[160];
  if (c != nullptr) {
    std::snprintf(buf, sizeof buf, "%-6s %9.4f %9.4f %9.4f %7llu %7llu %7llu %7llu\n",
                  std::string(label).c_str(), s.precision, s.recall, s.f1,
                  static_cast<unsigned long long>(c->tp), static_cast<unsigned long long>(c->fp),
                  static_cast<unsigned long long>(c->fn), static_cast<unsigned long long>(c->tn));
  } else {
    std::snprintf(buf, sizeof buf, "%-6s %9.4f %9.4f %9.4f\n", std::string(label).c_str(),
                  s.precision, s.recall, s.f1);
  }
  return buf;
}

EmbeddingTable load_table(const RunConfig& cfg) {
  if (cfg.embeddings) {
    return load_embedding_file(*cfg.embeddings, cfg.char_embeddings, cfg.embedding_seed);
  }
  return make_hash_fallback(cfg.embedding_seed, cfg.embedding_dim_word, cfg.embedding_dim_char);
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::ProfileSimilarity: return "ps";
    case ModelKind::Temporal: return "temporal";
    case ModelKind::Embedding: return "embedding";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept {
  if (name == "ps" || name == "profile-similarity") return ModelKind::ProfileSimilarity;
  if (name == "temporal") return ModelKind::Temporal;
  if (name == "embedding") return ModelKind::Embedding;
  return std::nullopt;
}

void RunConfig::validate() const {
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidArgument, why); };
  if (k < 2) bad("k must be at least 2");
  if (jobs == 0) bad("jobs must be positive");
  if (hidden_nodes && *hidden_nodes == 0) bad("hidden nodes must be positive");
  if (char_embeddings && !embeddings) bad("--char-embeddings requires --embeddings");
  if (!embeddings && embedding_dim_word + embedding_dim_char == 0) {
    bad("embedding dimensions must not both be zero");
  }
  MlpConfig probe;
  probe.learning_rate = learning_rate;
  probe.dropout_rate = dropout_rate;
  probe.batch_size = batch_size;
  probe.max_epochs = max_epochs;
  probe.early_stop_patience = patience;
  probe.validate();
}

std::size_t RunConfig::resolved_hidden_nodes() const {
  if (hidden_nodes) return *hidden_nodes;
  return model == ModelKind::Embedding ? 300 : 50;
}

std::vector<PairFeatureVector> featurize(const RunConfig& cfg, const Corpus& corpus,
                                         const LabeledPairSet& pairs) {
  std::vector<PairFeatureVector> out;
  out.reserve(pairs.pairs.size());
  std::optional<EmbeddingTable> table;
  if (cfg.model == ModelKind::Embedding) table = load_table(cfg);
  for (const auto& p : pairs.pairs) {
    PairFeatureVector v;
    switch (cfg.model) {
      case ModelKind::ProfileSimilarity: {
        const auto& a = corpus.profile(Platform::TwitterLike, p.twitter_id);
        const auto& b = corpus.profile(Platform::FlickrLike, p.flickr_id);
        v = cfg.all_measures ? extract_ps_features_all(a, b, cfg.include_names)
                             : extract_ps_features(a, b, cfg.measure, cfg.include_names);
        break;
      }
      case ModelKind::Temporal:
        v = extract_temporal_features(corpus.posts_of(Platform::TwitterLike, p.twitter_id),
                                      corpus.posts_of(Platform::FlickrLike, p.flickr_id),
                                      cfg.temporal_mode);
        break;
      case ModelKind::Embedding:
        v = pair_embedding_features(corpus.profile(Platform::TwitterLike, p.twitter_id),
                                    corpus.profile(Platform::FlickrLike, p.flickr_id), *table,
                                    cfg.include_description);
        break;
    }
    v.label = p.label;
    out.push_back(std::move(v));
  }
  return out;
}

RunResult run_experiment(const RunConfig& cfg, const Corpus& corpus) {
  cfg.validate();
  RunResult result;
  result.pairs = negative_sample(corpus, cfg.neg_ratio, cfg.seed);
  const auto features = featurize(cfg, corpus, result.pairs);

  MlpConfig& mlp = result.mlp;
  mlp.input_dim = features.front().size();
  mlp.hidden_nodes = cfg.resolved_hidden_nodes();
  mlp.learning_rate = cfg.learning_rate;
  mlp.dropout_rate = cfg.dropout_rate;
  mlp.batch_size = cfg.batch_size;
  mlp.max_epochs = cfg.max_epochs;
  mlp.early_stop_patience = cfg.patience;
  mlp.rng_seed = cfg.seed;

  CrossValidationOptions options;
  options.k = cfg.k;
  options.seed = cfg.seed;
  options.jobs = cfg.jobs;
  options.user_disjoint = cfg.user_disjoint;
  result.fold_models.resize(cfg.k);
  std::mutex guard;
  options.on_fold_model = [&](std::size_t fold, const MlpModel& model) {
    std::lock_guard lock(guard);
    result.fold_models[fold] = model;
  };
  result.report = cross_validate_features(mlp, features, result.pairs, options);
  return result;
}

json run_config_json(const RunConfig& cfg, const MlpConfig& mlp) {
  json c;
  c["model"] = std::string(model_kind_name(cfg.model));
  c["measure"] = cfg.all_measures ? std::string("all") : std::string(measure_name(cfg.measure));
  c["all_measures"] = cfg.all_measures;
  c["temporal_mode"] = std::string(temporal_mode_name(cfg.temporal_mode));
  c["include_names"] = cfg.include_names;
  c["include_description"] = cfg.include_description;
  c["neg_ratio"] = cfg.neg_ratio;
  c["k"] = cfg.k;
  c["seed"] = cfg.seed;
  c["user_disjoint"] = cfg.user_disjoint;
  c["jobs"] = cfg.jobs;
  c["embeddings"] = cfg.embeddings ? json(cfg.embeddings->string()) : json(nullptr);
  c["char_embeddings"] = cfg.char_embeddings ? json(cfg.char_embeddings->string()) : json(nullptr);
  c["embedding_dim_word"] = cfg.embedding_dim_word;
  c["embedding_dim_char"] = cfg.embedding_dim_char;
  c["embedding_seed"] = cfg.embedding_seed;
  c["input_dim"] = mlp.input_dim;
  c["mlp"] = json{{"input_dim", mlp.input_dim},
                  {"hidden_nodes", mlp.hidden_nodes},
                  {"n_hidden_layers", mlp.n_hidden_layers},
                  {"output_dim", mlp.output_dim},
                  {"dropout_rate", mlp.dropout_rate},
                  {"learning_rate", mlp.learning_rate},
                  {"adam_beta1", mlp.adam_beta1},
                  {"adam_beta2", mlp.adam_beta2},
                  {"adam_eps", mlp.adam_eps},
                  {"batch_size", mlp.batch_size},
                  {"max_epochs", mlp.max_epochs},
                  {"early_stop_patience", mlp.early_stop_patience},
                  {"rng_seed", mlp.rng_seed}};
  return c;
}

json report_json(const RunConfig& cfg, const RunResult& result,
                 const std::optional<std::string>& timestamp) {
  const auto& r = result.report;
  json j;
  j["model"] = std::string(model_kind_name(cfg.model));
  if (cfg.model == ModelKind::ProfileSimilarity) {
    j["measure"] = cfg.all_measures ? std::string("all") : std::string(measure_name(cfg.measure));
  } else if (cfg.model == ModelKind::Temporal) {
    j["mode"] = std::string(temporal_mode_name(cfg.temporal_mode));
  }
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["counts"] = counts_json(r.counts);
  j["macro"] = scores_json(r.macro);
  json folds = json::array();
  for (const auto& f : r.per_fold) {
    json fj = scores_json(f.scores);
    fj["fold"] = f.fold;
    fj["counts"] = counts_json(f.counts);
    fj["epochs_trained"] = f.epochs_trained;
    fj["best_epoch"] = f.best_epoch;
    folds.push_back(std::move(fj));
  }
  j["per_fold"] = std::move(folds);
  j["pairs"] = json{{"positive", result.pairs.count(true)},
                    {"negative", result.pairs.count(false)}};
  j["config"] = run_config_json(cfg, result.mlp);
  j["seed"] = cfg.seed;
  if (timestamp) j["metadata"] = json{{"timestamp", *timestamp}};
  return j;
}

std::string report_text(const RunConfig& cfg, const RunResult& result) {
  std::ostringstream out;
  out << "model: " << model_kind_name(cfg.model);
  if (cfg.model == ModelKind::ProfileSimilarity) {
    out << "  measure: " << (cfg.all_measures ? "all" : measure_name(cfg.measure))
        << "  names: " << (cfg.include_names ? "yes" : "no");
  } else if (cfg.model == ModelKind::Temporal) {
    out << "  mode: " << temporal_mode_name(cfg.temporal_mode);
  } else {
    out << "  description: " << (cfg.include_description ? "yes" : "no");
  }
  out << "  input_dim: " << result.mlp.input_dim << "  hidden: " << result.mlp.hidden_nodes
      << "  k: " << cfg.k << "  seed: " << cfg.seed << '\n';
  out << "pairs: " << result.pairs.count(true) << " positive, " << result.pairs.count(false)
      << " negative\n\n";
  out << "fold   precision    recall        f1      tp      fp      fn      tn\n";
  for (const auto& f : result.report.per_fold) {
    out << fmt_row(std::to_string(f.fold), f.scores, &f.counts);
  }
  const Scores micro{result.report.precision, result.report.recall, result.report.f1};
  out << fmt_row("micro", micro, &result.report.counts);
  out << fmt_row("macro", result.report.macro, nullptr);
  return out.str();
}

void write_run_outputs(const RunConfig& cfg, const RunResult& result,
                       const std::filesystem::path& out_dir, const std::string& timestamp) {
  std::filesystem::create_directories(out_dir / "models");
  {
    std::ofstream f(out_dir / "report.json", std::ios::binary);
    if (!f) fail(ErrorKind::IoError, "cannot create " + (out_dir / "report.json").string());
    f << report_json(cfg, result, timestamp).dump(2) << '\n';
  }
  {
    std::ofstream f(out_dir / "report.txt", std::ios::binary);
    if (!f) fail(ErrorKind::IoError, "cannot create " + (out_dir / "report.txt").string());
    f << report_text(cfg, result);
  }
  for (std::size_t i = 0; i < result.fold_models.size(); ++i) {
    save_model(result.fold_models[i], out_dir / "models" / ("fold-" + std::to_string(i) + ".bin"));
  }
}

std::vector<FeatureScore> score_pair(const UserProfile& a, const UserProfile& b, Measure m,
                                     bool include_names) {
  const auto features = extract_ps_features(a, b, m, include_names);
  auto raw_of = [m](const std::string& x, const std::string& y) {
    return raw_measure(m, Text(x), Text(y));
  };
  std::vector<FeatureScore> out;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const std::string& name = (*features.schema)[i];
    double raw = 0.0;
    if (name == "user_name_score") raw = raw_of(a.user_name, b.user_name);
    else if (name == "real_name_score") raw = raw_of(a.real_name, b.real_name);
    else if (name == "description_score") raw = raw_of(a.description, b.description);
    else if (name == "location_score") raw = raw_of(a.location, b.location);
    else if (name == "post_ratio") raw = features.values[i];
    out.push_back({name, features.values[i], raw});
  }
  return out;
}

}  // namespace osnlink
