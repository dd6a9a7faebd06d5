// osnlink: cross-platform account linkage experiments from the command line.
//
//   osnlink synth --n-users 500 --noise 0.15 --seed 42 --out data/
//   osnlink run --data data/ --model ps --measure editex --output out/
//   osnlink score-pair --a a.json --b '{"platform":"flickr",...}'
//   osnlink folds --data data/ --k 10

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "osnlink/dataset.hpp"
#include "osnlink/error.hpp"
#include "osnlink/experiment.hpp"
#include "osnlink/synth.hpp"

using namespace osnlink;
namespace fs = std::filesystem;

namespace {

struct DataPaths {
  std::string dir;
  std::string profiles, posts, pairs;

  void add_to(CLI::App* app) {
    app->add_option("--data", dir, "Directory holding profiles.jsonl, posts.jsonl, pairs.csv");
    app->add_option("--profiles", profiles, "profiles.jsonl (overrides --data)");
    app->add_option("--posts", posts, "posts.jsonl (overrides --data)");
    app->add_option("--pairs", pairs, "pairs.csv (overrides --data)");
  }

  Corpus load() const {
    auto pick = [&](const std::string& explicit_path, const char* name) -> fs::path {
      if (!explicit_path.empty()) return explicit_path;
      if (dir.empty()) {
        fail(ErrorKind::InvalidArgument,
             std::string("no input for ") + name + "; pass --data or the file flag");
      }
      return fs::path(dir) / name;
    };
    return load_corpus(pick(profiles, "profiles.jsonl"), pick(posts, "posts.jsonl"),
                       pick(pairs, "pairs.csv"));
  }
};

template <class T>
std::map<std::string, T> choices(auto&& all, auto&& name_of) {
  std::map<std::string, T> out;
  for (const auto& v : all) out.emplace(std::string(name_of(v)), v);
  return out;
}

std::string now_utc() {
  const auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  return format_timestamp(now);
}

UserProfile read_profile_arg(const std::string& arg, const std::string& label) {
  std::string text = arg;
  std::string source = label;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || arg[first] != '{') {
    std::ifstream in(arg, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    source = arg;
  }
  return profile_from_json_text(text, source);
}

void print_fold_sizes(const std::vector<Fold>& folds) {
  std::printf("fold  train_pos  train_neg  test_pos  test_neg\n");
  for (std::size_t i = 0; i < folds.size(); ++i) {
    const auto& f = folds[i];
    std::printf("%-5zu %9zu %10zu %9zu %9zu\n", i, f.train.count(true), f.train.count(false),
                f.test.count(true), f.test.count(false));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-platform account linkage toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value / TOML config file; flags override it");

  const auto measures = choices<Measure>(kAllMeasures, measure_name);
  const std::map<std::string, ModelKind> models{{"ps", ModelKind::ProfileSimilarity},
                                                {"temporal", ModelKind::Temporal},
                                                {"embedding", ModelKind::Embedding}};
  const std::map<std::string, TemporalMode> modes{{"hod", TemporalMode::HourOfDay},
                                                  {"dow", TemporalMode::DayOfWeek}};

  // run
  RunConfig cfg;
  DataPaths run_data;
  std::string output;
  std::string embeddings, char_embeddings;
  std::size_t hidden_nodes = 0;
  bool no_names = false;
  auto* run = app.add_subcommand("run", "Train and cross-validate one model");
  run_data.add_to(run);
  run->add_option("--model", cfg.model, "ps | temporal | embedding")
      ->transform(CLI::CheckedTransformer(models, CLI::ignore_case).description(""))
      ->option_text("NAME");
  run->add_option("--measure", cfg.measure, "String measure for the ps model (default editex)")
      ->transform(CLI::CheckedTransformer(measures, CLI::ignore_case).description(""))
      ->option_text("NAME");
  run->add_flag("--all-measures", cfg.all_measures, "Use every measure side by side (ps)");
  run->add_option("--temporal-mode", cfg.temporal_mode, "hod | dow")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case).description(""))
      ->option_text("NAME");
  run->add_flag("--no-names", no_names, "Drop user name and real name features (ps)");
  run->add_flag("--include-description", cfg.include_description,
                "Embed the description field too (embedding)");
  run->add_option("--neg-ratio", cfg.neg_ratio, "Negatives per positive")->capture_default_str();
  run->add_option("--k", cfg.k, "Number of folds")->capture_default_str();
  run->add_option("--seed", cfg.seed)->capture_default_str();
  run->add_flag("--user-disjoint", cfg.user_disjoint, "Assign accounts, not pairs, to folds");
  run->add_option("--jobs", cfg.jobs, "Folds trained in parallel")->capture_default_str();
  run->add_option("--hidden-nodes", hidden_nodes, "Default 50, or 300 for embedding");
  run->add_option("--learning-rate", cfg.learning_rate)->capture_default_str();
  run->add_option("--dropout", cfg.dropout_rate)->capture_default_str();
  run->add_option("--batch-size", cfg.batch_size)->capture_default_str();
  run->add_option("--max-epochs", cfg.max_epochs)->capture_default_str();
  run->add_option("--patience", cfg.patience)->capture_default_str();
  run->add_option("--embeddings", embeddings, "Word vector file; hashed vectors when absent");
  run->add_option("--char-embeddings", char_embeddings, "Character n-gram vector file");
  run->add_option("--embedding-dim-word", cfg.embedding_dim_word)->capture_default_str();
  run->add_option("--embedding-dim-char", cfg.embedding_dim_char)->capture_default_str();
  run->add_option("--embedding-seed", cfg.embedding_seed)->capture_default_str();
  run->add_option("--output", output, "Directory for report.json, report.txt, models/");

  // synth
  SynthOptions synth_opts;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic paired corpus");
  synth->add_option("--n-users", synth_opts.n_users)->capture_default_str();
  synth->add_option("--noise", synth_opts.noise, "Per-character edit probability")
      ->capture_default_str();
  synth->add_option("--seed", synth_opts.seed)->capture_default_str();
  synth->add_option("--out", synth_out)->required();

  // score-pair
  std::string profile_a, profile_b;
  Measure score_measure = Measure::Editex;
  bool score_no_names = false;
  auto* score = app.add_subcommand("score-pair", "Print the feature breakdown of two profiles");
  score->add_option("--a", profile_a, "Inline JSON object or file")->required();
  score->add_option("--b", profile_b, "Inline JSON object or file")->required();
  score->add_option("--measure", score_measure, "String measure (default editex)")
      ->transform(CLI::CheckedTransformer(measures, CLI::ignore_case).description(""))
      ->option_text("NAME");
  score->add_flag("--no-names", score_no_names);

  // folds
  DataPaths fold_data;
  std::size_t fold_neg_ratio = 8, fold_k = 10;
  std::uint64_t fold_seed = 42;
  bool fold_user_disjoint = false;
  double split_fraction = 0.0;
  auto* folds = app.add_subcommand("folds", "Show the sampled pairs and their partitions");
  fold_data.add_to(folds);
  folds->add_option("--neg-ratio", fold_neg_ratio)->capture_default_str();
  folds->add_option("--k", fold_k)->capture_default_str();
  folds->add_option("--seed", fold_seed)->capture_default_str();
  folds->add_flag("--user-disjoint", fold_user_disjoint);
  folds->add_option("--split", split_fraction, "Show a train/test split with this train fraction instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*run) {
      cfg.include_names = !no_names;
      if (hidden_nodes != 0) cfg.hidden_nodes = hidden_nodes;
      if (!embeddings.empty()) cfg.embeddings = fs::path(embeddings);
      if (!char_embeddings.empty()) cfg.char_embeddings = fs::path(char_embeddings);
      cfg.validate();
      const Corpus corpus = run_data.load();
      if (corpus.stats.dangling_pairs + corpus.stats.duplicate_pairs > 0) {
        std::fprintf(stderr, "note: dropped %zu dangling and %zu duplicate pairs\n",
                     corpus.stats.dangling_pairs, corpus.stats.duplicate_pairs);
      }
      const RunResult result = run_experiment(cfg, corpus);
      std::cout << report_text(cfg, result);
      if (!output.empty()) write_run_outputs(cfg, result, output, now_utc());
    } else if (*synth) {
      write_synthetic(generate_synthetic(synth_opts), synth_out);
    } else if (*score) {
      const UserProfile a = read_profile_arg(profile_a, "--a");
      const UserProfile b = read_profile_arg(profile_b, "--b");
      std::printf("measure: %s\n", std::string(measure_name(score_measure)).c_str());
      std::printf("%-18s %10s %10s\n", "feature", "normalized", "raw");
      for (const auto& s : score_pair(a, b, score_measure, !score_no_names)) {
        std::printf("%-18s %10.6f %10.6f\n", s.feature.c_str(), s.normalized, s.raw);
      }
    } else if (*folds) {
      const Corpus corpus = fold_data.load();
      const LabeledPairSet pairs = negative_sample(corpus, fold_neg_ratio, fold_seed);
      std::printf("pairs: %zu positive, %zu negative\n", pairs.count(true), pairs.count(false));
      if (split_fraction > 0.0) {
        const auto [train, test] = split(pairs, split_fraction, fold_seed);
        std::printf("train: %zu positive, %zu negative\n", train.count(true), train.count(false));
        std::printf("test:  %zu positive, %zu negative\n", test.count(true), test.count(false));
      } else {
        print_fold_sizes(fold_user_disjoint ? k_folds_user_disjoint(pairs, fold_k, fold_seed)
                                            : k_folds(pairs, fold_k, fold_seed));
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", std::string(error_kind_name(e.kind())).c_str(),
                 e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: Internal: %s\n", e.what());
    return 3;
  }
  return 0;
}
