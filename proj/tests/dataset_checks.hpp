#pragma once

// Partition invariants for sampled pair sets, shared by the unit tests and
// the acceptance binary. Each checker returns an empty string on success and
// a description of the first violation otherwise.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "osnlink/dataset.hpp"
#include "osnlink/rng.hpp"

namespace checks {

using namespace osnlink;

using PairKey = std::tuple<std::string, std::string, bool>;

inline PairKey key_of(const LabeledPair& p) { return {p.twitter_id, p.flickr_id, p.label}; }

inline std::multiset<PairKey> keys(const LabeledPairSet& s) {
  std::multiset<PairKey> out;
  for (const auto& p : s.pairs) out.insert(key_of(p));
  return out;
}

/// A corpus with `n_twitter` x `n_flickr` accounts and `n_pos` positive pairs
/// matching distinct accounts.
inline Corpus random_corpus(Rng& rng, std::size_t n_twitter, std::size_t n_flickr,
                            std::size_t n_pos) {
  std::vector<UserProfile> profiles;
  for (std::size_t i = 0; i < n_twitter; ++i) {
    profiles.push_back({Platform::TwitterLike, "t" + std::to_string(i), "u", "", "", "", 1});
  }
  for (std::size_t i = 0; i < n_flickr; ++i) {
    profiles.push_back({Platform::FlickrLike, "f" + std::to_string(i), "u", "", "", "", 1});
  }
  std::vector<std::size_t> t(n_twitter), f(n_flickr);
  for (std::size_t i = 0; i < n_twitter; ++i) t[i] = i;
  for (std::size_t i = 0; i < n_flickr; ++i) f[i] = i;
  rng.shuffle(t);
  rng.shuffle(f);
  std::vector<PositivePair> pairs;
  for (std::size_t i = 0; i < n_pos; ++i) {
    pairs.push_back({"t" + std::to_string(t[i]), "f" + std::to_string(f[i])});
  }
  return build_corpus(std::move(profiles), {}, std::move(pairs));
}

inline std::string check_negative_sample(const Corpus& corpus, const LabeledPairSet& s,
                                         std::size_t ratio) {
  std::set<std::pair<std::string, std::string>> positives;
  for (const auto& p : corpus.positive_pairs) positives.insert({p.twitter_id, p.flickr_id});
  if (s.count(true) != corpus.positive_pairs.size()) return "positive count changed";
  if (s.count(false) != ratio * s.count(true)) {
    return "negatives " + std::to_string(s.count(false)) + " != " + std::to_string(ratio) + " x " +
           std::to_string(s.count(true));
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& p : s.pairs) {
    if (!corpus.profiles.contains({Platform::TwitterLike, p.twitter_id}) ||
        !corpus.profiles.contains({Platform::FlickrLike, p.flickr_id})) {
      return "pair endpoint is not a known account";
    }
    if (!seen.insert({p.twitter_id, p.flickr_id}).second) return "duplicate pair";
    if (!p.label && positives.contains({p.twitter_id, p.flickr_id})) return "negative collides with positive";
  }
  return {};
}

inline std::string check_split(const LabeledPairSet& all, const LabeledPairSet& train,
                               const LabeledPairSet& test, double fraction) {
  auto joined = keys(train);
  for (const auto& k : keys(test)) joined.insert(k);
  if (joined != keys(all)) return "split halves do not cover the input exactly";
  if (train.pairs.size() + test.pairs.size() != all.pairs.size()) return "split is not disjoint";
  for (const bool label : {true, false}) {
    const auto n = all.count(label);
    const auto expect = static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction));
    if (train.count(label) != expect) return "class not split at round(n * fraction)";
  }
  return {};
}

inline std::string check_folds(const LabeledPairSet& all, const std::vector<Fold>& folds,
                               std::size_t k) {
  if (folds.size() != k) return "wrong fold count";
  std::multiset<PairKey> tests;
  for (const bool label : {true, false}) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& f : folds) {
      lo = std::min(lo, f.test.count(label));
      hi = std::max(hi, f.test.count(label));
    }
    if (hi - lo > 1) return "fold sizes differ by more than one within a class";
  }
  const auto everything = keys(all);
  for (const auto& f : folds) {
    auto joined = keys(f.train);
    const auto test = keys(f.test);
    for (const auto& key : test) {
      joined.insert(key);
      tests.insert(key);
    }
    if (joined != everything) return "fold train + test does not cover the input";
    if (f.train.pairs.size() + f.test.pairs.size() != all.pairs.size()) return "fold leaks pairs";
  }
  if (tests != everything) return "test folds do not cover every pair exactly once";
  return {};
}

}  // namespace checks
