#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "osnlink/profile.hpp"
#include "osnlink/temporal.hpp"

namespace osnlink {

struct AccountKey {
  Platform platform = Platform::TwitterLike;
  std::string user_id;

  friend auto operator<=>(const AccountKey&, const AccountKey&) = default;
  friend bool operator==(const AccountKey&, const AccountKey&) = default;
};

/// Ground-truth link between a Twitter-like and a Flickr-like account.
struct PositivePair {
  std::string twitter_id;
  std::string flickr_id;

  friend auto operator<=>(const PositivePair&, const PositivePair&) = default;
  friend bool operator==(const PositivePair&, const PositivePair&) = default;
};

struct LoadStats {
  std::size_t dangling_pairs = 0;   // endpoint without a profile
  std::size_t duplicate_pairs = 0;  // repeated positive rows
  std::size_t orphan_posts = 0;     // posts of accounts without a profile
};

struct Corpus {
  std::map<AccountKey, UserProfile> profiles;
  std::map<AccountKey, std::vector<PostEvent>> posts;
  std::vector<PositivePair> positive_pairs;
  LoadStats stats;

  /// Throws Error(InvalidArgument) when the account is unknown.
  const UserProfile& profile(Platform platform, const std::string& user_id) const;
  /// Empty span for accounts without posts.
  std::span<const PostEvent> posts_of(Platform platform, const std::string& user_id) const;
  std::vector<std::string> user_ids(Platform platform) const;
};

/// Cross-references parsed records into a Corpus: drops pairs whose
/// endpoints lack a profile and repeated pairs, counting both.
/// Throws Error(EmptyCorpus) when no pair survives.
Corpus build_corpus(std::vector<UserProfile> profiles, std::vector<PostEvent> posts,
                    std::vector<PositivePair> pairs);

/// profiles.jsonl / posts.jsonl / pairs.csv readers. Throw Error(ParseError)
/// naming `source` and the 1-based line.
std::vector<UserProfile> read_profiles_jsonl(std::istream& in, const std::string& source);
std::vector<PostEvent> read_posts_jsonl(std::istream& in, const std::string& source);
std::vector<PositivePair> read_pairs_csv(std::istream& in, const std::string& source);

void write_profiles_jsonl(std::ostream& out, std::span<const UserProfile> profiles);
void write_posts_jsonl(std::ostream& out, std::span<const PostEvent> posts);
void write_pairs_csv(std::ostream& out, std::span<const PositivePair> pairs);

UserProfile profile_from_json_text(const std::string& json_text, const std::string& source);

Corpus load_corpus(const std::filesystem::path& profiles_path,
                   const std::filesystem::path& posts_path,
                   const std::filesystem::path& pairs_path);

struct LabeledPair {
  std::string twitter_id;
  std::string flickr_id;
  bool label = false;

  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

struct LabeledPairSet {
  std::vector<LabeledPair> pairs;
  std::size_t neg_ratio = 0;
  std::uint64_t seed = 0;

  std::size_t count(bool label) const;
};

/// Positives in corpus order followed by `neg_ratio` x |positives| distinct
/// random cross-platform pairs that are not positives.
/// Throws Error(InsufficientPool) when fewer than two accounts exist on a
/// platform or the pool cannot supply enough negatives.
LabeledPairSet negative_sample(const Corpus& corpus, std::size_t neg_ratio, std::uint64_t seed);

/// Stratified split: each class is shuffled and cut at
/// round(count * train_fraction). Both halves keep the input order.
/// Throws Error(DegenerateSplit) if a class present in the input would be
/// missing from either side, Error(InvalidArgument) unless 0 < fraction < 1.
std::pair<LabeledPairSet, LabeledPairSet> split(const LabeledPairSet& set, double train_fraction,
                                                std::uint64_t seed);

struct Fold {
  LabeledPairSet train;
  LabeledPairSet test;
};

/// Stratified k-fold partition: each class is shuffled and dealt round-robin.
/// Throws Error(TooFewExamples) when k < 2 or a class has fewer than k members.
std::vector<Fold> k_folds(const LabeledPairSet& set, std::size_t k, std::uint64_t seed);

/// Stricter variant: accounts, rather than pairs, are assigned to folds (a
/// positive pair's two accounts travel together). A fold's test set holds the
/// pairs whose two accounts both belong to it; its training set holds pairs
/// touching no account of the fold. Pairs straddling two folds are unused.
std::vector<Fold> k_folds_user_disjoint(const LabeledPairSet& set, std::size_t k,
                                        std::uint64_t seed);

}  // namespace osnlink
