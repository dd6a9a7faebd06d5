#include "osnlink/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "osnlink/error.hpp"
#include "osnlink/rng.hpp"

namespace osnlink {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& why) {
  fail(ErrorKind::ParseError, source + ":" + std::to_string(line) + ": " + why);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

json parse_json_line(const std::string& line, const std::string& source, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    parse_error(source, line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) parse_error(source, line_no, "expected a JSON object");
  return obj;
}

Platform platform_field(const json& obj, const std::string& source, std::size_t line_no) {
  const auto it = obj.find("platform");
  if (it == obj.end() || !it->is_string()) {
    parse_error(source, line_no, "field 'platform' must be \"twitter\" or \"flickr\"");
  }
  const auto platform = parse_platform(it->get<std::string>());
  if (!platform) parse_error(source, line_no, "unknown platform '" + it->get<std::string>() + "'");
  return *platform;
}

std::string string_field(const json& obj, const char* name, bool required,
                         const std::string& source, std::size_t line_no) {
  const auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) {
    if (required) parse_error(source, line_no, std::string("missing field '") + name + "'");
    return {};
  }
  if (it->is_string()) return it->get<std::string>();
  // Numeric ids are common in crawled data.
  if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
  parse_error(source, line_no, std::string("field '") + name + "' must be a string");
}

UserProfile profile_from_json(const json& obj, const std::string& source, std::size_t line_no) {
  UserProfile p;
  p.platform = platform_field(obj, source, line_no);
  p.user_id = string_field(obj, "user_id", true, source, line_no);
  if (p.user_id.empty()) parse_error(source, line_no, "field 'user_id' is empty");
  p.user_name = string_field(obj, "user_name", false, source, line_no);
  p.real_name = string_field(obj, "real_name", false, source, line_no);
  p.description = string_field(obj, "description", false, source, line_no);
  p.location = string_field(obj, "location", false, source, line_no);
  if (const auto it = obj.find("post_count"); it != obj.end() && !it->is_null()) {
    if (it->is_number_unsigned()) {
      p.post_count = it->get<std::uint64_t>();
    } else if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
      p.post_count = static_cast<std::uint64_t>(it->get<std::int64_t>());
    } else {
      parse_error(source, line_no, "field 'post_count' must be a nonnegative integer");
    }
  }
  return p;
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    fn(line, line_no);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  return in;
}

LabeledPairSet with_members(const LabeledPairSet& base, const std::vector<bool>& keep) {
  LabeledPairSet out;
  out.neg_ratio = base.neg_ratio;
  out.seed = base.seed;
  for (std::size_t i = 0; i < base.pairs.size(); ++i) {
    if (keep[i]) out.pairs.push_back(base.pairs[i]);
  }
  return out;
}

/// Indices of each class in input order: [0] negatives, [1] positives.
std::array<std::vector<std::size_t>, 2> indices_by_class(const LabeledPairSet& set) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    by_class[set.pairs[i].label ? 1 : 0].push_back(i);
  }
  return by_class;
}

}  // namespace

const UserProfile& Corpus::profile(Platform platform, const std::string& user_id) const {
  const auto it = profiles.find(AccountKey{platform, user_id});
  if (it == profiles.end()) {
    fail(ErrorKind::InvalidArgument,
         "unknown " + std::string(platform_name(platform)) + " account '" + user_id + "'");
  }
  return it->second;
}

std::span<const PostEvent> Corpus::posts_of(Platform platform, const std::string& user_id) const {
  const auto it = posts.find(AccountKey{platform, user_id});
  if (it == posts.end()) return {};
  return it->second;
}

std::vector<std::string> Corpus::user_ids(Platform platform) const {
  std::vector<std::string> ids;
  for (const auto& [key, profile] : profiles) {
    if (key.platform == platform) ids.push_back(key.user_id);
  }
  return ids;
}

std::vector<UserProfile> read_profiles_jsonl(std::istream& in, const std::string& source) {
  std::vector<UserProfile> profiles;
  std::set<AccountKey> seen;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    UserProfile p = profile_from_json(parse_json_line(line, source, line_no), source, line_no);
    if (!seen.insert(AccountKey{p.platform, p.user_id}).second) {
      parse_error(source, line_no, "duplicate user_id '" + p.user_id + "'");
    }
    profiles.push_back(std::move(p));
  });
  return profiles;
}

UserProfile profile_from_json_text(const std::string& json_text, const std::string& source) {
  return profile_from_json(parse_json_line(json_text, source, 1), source, 1);
}

std::vector<PostEvent> read_posts_jsonl(std::istream& in, const std::string& source) {
  std::vector<PostEvent> posts;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    const json obj = parse_json_line(line, source, line_no);
    PostEvent e;
    e.platform = platform_field(obj, source, line_no);
    e.user_id = string_field(obj, "user_id", true, source, line_no);
    const std::string stamp = string_field(obj, "timestamp", true, source, line_no);
    try {
      e.timestamp = parse_timestamp(stamp);
    } catch (const Error& err) {
      parse_error(source, line_no, err.what());
    }
    posts.push_back(std::move(e));
  });
  return posts;
}

std::vector<PositivePair> read_pairs_csv(std::istream& in, const std::string& source) {
  std::vector<PositivePair> pairs;
  bool header_seen = false;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      parse_error(source, line_no, "expected two comma-separated fields");
    }
    std::string first = trim(std::string_view(line).substr(0, comma));
    std::string second = trim(std::string_view(line).substr(comma + 1));
    if (!header_seen) {
      if (first != "twitter_id" || second != "flickr_id") {
        parse_error(source, line_no, "expected header 'twitter_id,flickr_id'");
      }
      header_seen = true;
      return;
    }
    if (first.empty() || second.empty()) parse_error(source, line_no, "empty id");
    pairs.push_back({std::move(first), std::move(second)});
  });
  if (!header_seen) parse_error(source, 1, "expected header 'twitter_id,flickr_id'");
  return pairs;
}

void write_profiles_jsonl(std::ostream& out, std::span<const UserProfile> profiles) {
  for (const auto& p : profiles) {
    json obj = json::object();
    obj["platform"] = std::string(platform_name(p.platform));
    obj["user_id"] = p.user_id;
    obj["user_name"] = p.user_name;
    obj["real_name"] = p.real_name;
    obj["description"] = p.description;
    obj["location"] = p.location;
    obj["post_count"] = p.post_count;
    out << obj.dump() << '\n';
  }
}

void write_posts_jsonl(std::ostream& out, std::span<const PostEvent> posts) {
  for (const auto& e : posts) {
    json obj = json::object();
    obj["platform"] = std::string(platform_name(e.platform));
    obj["user_id"] = e.user_id;
    obj["timestamp"] = format_timestamp(e.timestamp);
    out << obj.dump() << '\n';
  }
}

void write_pairs_csv(std::ostream& out, std::span<const PositivePair> pairs) {
  out << "twitter_id,flickr_id\n";
  for (const auto& p : pairs) out << p.twitter_id << ',' << p.flickr_id << '\n';
}

Corpus build_corpus(std::vector<UserProfile> profiles, std::vector<PostEvent> posts,
                    std::vector<PositivePair> pairs) {
  Corpus corpus;
  for (auto& p : profiles) {
    AccountKey key{p.platform, p.user_id};
    corpus.profiles.emplace(std::move(key), std::move(p));
  }
  for (auto& e : posts) {
    AccountKey key{e.platform, e.user_id};
    if (!corpus.profiles.contains(key)) {
      ++corpus.stats.orphan_posts;
      continue;
    }
    corpus.posts[key].push_back(std::move(e));
  }
  std::set<PositivePair> seen;
  for (auto& pair : pairs) {
    if (!corpus.profiles.contains({Platform::TwitterLike, pair.twitter_id}) ||
        !corpus.profiles.contains({Platform::FlickrLike, pair.flickr_id})) {
      ++corpus.stats.dangling_pairs;
      continue;
    }
    if (!seen.insert(pair).second) {
      ++corpus.stats.duplicate_pairs;
      continue;
    }
    corpus.positive_pairs.push_back(std::move(pair));
  }
  if (corpus.positive_pairs.empty()) {
    fail(ErrorKind::EmptyCorpus, "no valid positive pairs after filtering (" +
                                     std::to_string(corpus.stats.dangling_pairs) +
                                     " dangling)");
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& profiles_path,
                   const std::filesystem::path& posts_path,
                   const std::filesystem::path& pairs_path) {
  auto profiles_in = open_input(profiles_path);
  auto profiles = read_profiles_jsonl(profiles_in, profiles_path.string());
  auto posts_in = open_input(posts_path);
  auto posts = read_posts_jsonl(posts_in, posts_path.string());
  auto pairs_in = open_input(pairs_path);
  auto pairs = read_pairs_csv(pairs_in, pairs_path.string());
  return build_corpus(std::move(profiles), std::move(posts), std::move(pairs));
}

std::size_t LabeledPairSet::count(bool label) const {
  return static_cast<std::size_t>(std::count_if(
      pairs.begin(), pairs.end(), [label](const LabeledPair& p) { return p.label == label; }));
}

LabeledPairSet negative_sample(const Corpus& corpus, std::size_t neg_ratio, std::uint64_t seed) {
  const auto twitter = corpus.user_ids(Platform::TwitterLike);
  const auto flickr = corpus.user_ids(Platform::FlickrLike);
  if (twitter.size() < 2 || flickr.size() < 2) {
    fail(ErrorKind::InsufficientPool, "negative sampling needs at least two accounts per platform");
  }
  std::unordered_map<std::string, std::uint64_t> flickr_index;
  for (std::size_t i = 0; i < flickr.size(); ++i) flickr_index.emplace(flickr[i], i);
  std::unordered_map<std::string, std::uint64_t> twitter_index;
  for (std::size_t i = 0; i < twitter.size(); ++i) twitter_index.emplace(twitter[i], i);

  const std::uint64_t width = flickr.size();
  std::unordered_set<std::uint64_t> positives;
  LabeledPairSet out;
  out.neg_ratio = neg_ratio;
  out.seed = seed;
  for (const auto& p : corpus.positive_pairs) {
    positives.insert(twitter_index.at(p.twitter_id) * width + flickr_index.at(p.flickr_id));
    out.pairs.push_back({p.twitter_id, p.flickr_id, true});
  }

  const std::uint64_t pool = twitter.size() * width - positives.size();
  const std::uint64_t needed = neg_ratio * corpus.positive_pairs.size();
  if (needed > pool) {
    fail(ErrorKind::InsufficientPool,
         "only " + std::to_string(pool) + " negative pairs available for " +
             std::to_string(needed) + " requested; achievable ratio " +
             std::to_string(pool / corpus.positive_pairs.size()));
  }

  Rng rng(seed);
  std::vector<std::uint64_t> chosen;
  chosen.reserve(needed);
  if (needed * 2 <= pool) {
    std::unordered_set<std::uint64_t> taken;
    while (chosen.size() < needed) {
      const std::uint64_t cell = rng.below(twitter.size() * width);
      if (positives.contains(cell) || !taken.insert(cell).second) continue;
      chosen.push_back(cell);
    }
  } else {
    // Dense request: enumerate the pool and take a partial shuffle.
    std::vector<std::uint64_t> candidates;
    candidates.reserve(pool);
    for (std::uint64_t cell = 0; cell < twitter.size() * width; ++cell) {
      if (!positives.contains(cell)) candidates.push_back(cell);
    }
    for (std::uint64_t i = 0; i < needed; ++i) {
      const std::uint64_t j = i + rng.below(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
      chosen.push_back(candidates[i]);
    }
  }
  for (const std::uint64_t cell : chosen) {
    out.pairs.push_back({twitter[cell / width], flickr[cell % width], false});
  }
  return out;
}

std::pair<LabeledPairSet, LabeledPairSet> split(const LabeledPairSet& set, double train_fraction,
                                                std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    fail(ErrorKind::InvalidArgument, "train fraction must lie strictly between 0 and 1");
  }
  Rng rng(seed);
  std::vector<bool> in_train(set.pairs.size(), false);
  for (auto& members : indices_by_class(set)) {
    if (members.empty()) continue;
    const auto n_train = static_cast<std::size_t>(
        std::llround(static_cast<double>(members.size()) * train_fraction));
    if (n_train == 0 || n_train == members.size()) {
      fail(ErrorKind::DegenerateSplit, "splitting " + std::to_string(members.size()) +
                                           " examples of a class at " +
                                           std::to_string(train_fraction) +
                                           " leaves one side without that class");
    }
    rng.shuffle(members);
    for (std::size_t i = 0; i < n_train; ++i) in_train[members[i]] = true;
  }
  std::vector<bool> in_test(in_train.size());
  for (std::size_t i = 0; i < in_train.size(); ++i) in_test[i] = !in_train[i];
  return {with_members(set, in_train), with_members(set, in_test)};
}

std::vector<Fold> k_folds(const LabeledPairSet& set, std::size_t k, std::uint64_t seed) {
  if (k < 2) fail(ErrorKind::TooFewExamples, "k-fold partitioning needs k >= 2");
  auto by_class = indices_by_class(set);
  for (const auto& members : by_class) {
    if (members.size() < k) {
      fail(ErrorKind::TooFewExamples, "a class has " + std::to_string(members.size()) +
                                          " examples, fewer than k = " + std::to_string(k));
    }
  }
  Rng rng(seed);
  std::vector<std::size_t> fold_of(set.pairs.size(), 0);
  for (auto& members : by_class) {
    rng.shuffle(members);
    for (std::size_t pos = 0; pos < members.size(); ++pos) fold_of[members[pos]] = pos % k;
  }
  std::vector<Fold> folds;
  folds.reserve(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<bool> test(set.pairs.size());
    std::vector<bool> train(set.pairs.size());
    for (std::size_t i = 0; i < set.pairs.size(); ++i) {
      test[i] = fold_of[i] == f;
      train[i] = !test[i];
    }
    folds.push_back({with_members(set, train), with_members(set, test)});
  }
  return folds;
}

std::vector<Fold> k_folds_user_disjoint(const LabeledPairSet& set, std::size_t k,
                                        std::uint64_t seed) {
  if (k < 2) fail(ErrorKind::TooFewExamples, "k-fold partitioning needs k >= 2");
  // Units of accounts that must share a fold: each positive pair, then every
  // remaining account on its own.
  std::map<AccountKey, std::size_t> unit_of;
  std::size_t units = 0;
  for (const auto& p : set.pairs) {
    if (!p.label) continue;
    const AccountKey t{Platform::TwitterLike, p.twitter_id};
    const AccountKey f{Platform::FlickrLike, p.flickr_id};
    const auto ti = unit_of.find(t);
    const auto fi = unit_of.find(f);
    if (ti == unit_of.end() && fi == unit_of.end()) {
      unit_of[t] = unit_of[f] = units++;
    } else if (ti == unit_of.end()) {
      unit_of[t] = fi->second;
    } else if (fi == unit_of.end()) {
      unit_of[f] = ti->second;
    }
  }
  for (const auto& p : set.pairs) {
    for (AccountKey key : {AccountKey{Platform::TwitterLike, p.twitter_id},
                           AccountKey{Platform::FlickrLike, p.flickr_id}}) {
      if (!unit_of.contains(key)) unit_of[key] = units++;
    }
  }
  if (units < k) {
    fail(ErrorKind::TooFewExamples, "only " + std::to_string(units) + " account groups for k = " +
                                        std::to_string(k));
  }
  std::vector<std::size_t> order(units);
  for (std::size_t u = 0; u < units; ++u) order[u] = u;
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::size_t> fold_of_unit(units);
  for (std::size_t pos = 0; pos < units; ++pos) fold_of_unit[order[pos]] = pos % k;

  std::vector<Fold> folds;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<bool> test(set.pairs.size());
    std::vector<bool> train(set.pairs.size());
    for (std::size_t i = 0; i < set.pairs.size(); ++i) {
      const auto& p = set.pairs[i];
      const std::size_t ft = fold_of_unit[unit_of.at({Platform::TwitterLike, p.twitter_id})];
      const std::size_t ff = fold_of_unit[unit_of.at({Platform::FlickrLike, p.flickr_id})];
      test[i] = ft == f && ff == f;
      train[i] = ft != f && ff != f;
    }
    folds.push_back({with_members(set, train), with_members(set, test)});
  }
  return folds;
}

}  // namespace osnlink
