#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "osnlink/error.hpp"
#include "osnlink/synth.hpp"

using namespace osnlink;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const UserProfile& find(const SynthCorpus& c, Platform p, const std::string& id) {
  for (const auto& u : c.profiles) {
    if (u.platform == p && u.user_id == id) return u;
  }
  throw std::runtime_error("missing " + id);
}

}  // namespace

TEST(Synth, Cardinality) {
  const auto c = generate_synthetic({200, 0.15, 1});
  EXPECT_EQ(c.pairs.size(), 200u);
  EXPECT_EQ(c.profiles.size(), 400u);
  std::set<std::string> tw, fl;
  for (const auto& p : c.pairs) {
    tw.insert(p.twitter_id);
    fl.insert(p.flickr_id);
  }
  EXPECT_EQ(tw.size(), 200u);
  EXPECT_EQ(fl.size(), 200u);
  const auto corpus = to_corpus(c);
  EXPECT_EQ(corpus.positive_pairs.size(), 200u);
  EXPECT_EQ(corpus.stats.dangling_pairs, 0u);
  EXPECT_EQ(corpus.stats.orphan_posts, 0u);
  for (const auto& p : c.pairs) {
    EXPECT_FALSE(corpus.posts_of(Platform::TwitterLike, p.twitter_id).empty());
    EXPECT_FALSE(corpus.posts_of(Platform::FlickrLike, p.flickr_id).empty());
  }
}

TEST(Synth, ZeroNoiseFieldsIdentical) {
  const auto c = generate_synthetic({100, 0.0, 3});
  for (const auto& p : c.pairs) {
    const auto& a = find(c, Platform::TwitterLike, p.twitter_id);
    const auto& b = find(c, Platform::FlickrLike, p.flickr_id);
    EXPECT_EQ(a.user_name, b.user_name);
    EXPECT_EQ(a.real_name, b.real_name);
    EXPECT_EQ(a.description, b.description);
    EXPECT_EQ(a.location, b.location);
    EXPECT_EQ(a.post_count, b.post_count);
  }
}

TEST(Synth, NoiseChangesNames) {
  const auto c = generate_synthetic({200, 0.15, 3});
  std::size_t differing = 0;
  for (const auto& p : c.pairs) {
    differing += find(c, Platform::TwitterLike, p.twitter_id).user_name !=
                 find(c, Platform::FlickrLike, p.flickr_id).user_name;
  }
  EXPECT_GT(differing, 100u);
  EXPECT_LT(differing, 200u);
}

TEST(Synth, DeterministicFiles) {
  const auto base = std::filesystem::temp_directory_path() / "osnlink_synth_test";
  std::filesystem::remove_all(base);
  write_synthetic(generate_synthetic({50, 0.2, 9}), base / "a");
  write_synthetic(generate_synthetic({50, 0.2, 9}), base / "b");
  write_synthetic(generate_synthetic({50, 0.2, 10}), base / "c");
  for (const char* f : {"profiles.jsonl", "posts.jsonl", "pairs.csv"}) {
    EXPECT_EQ(slurp(base / "a" / f), slurp(base / "b" / f)) << f;
  }
  EXPECT_NE(slurp(base / "a" / "profiles.jsonl"), slurp(base / "c" / "profiles.jsonl"));
  const auto loaded = load_corpus(base / "a" / "profiles.jsonl", base / "a" / "posts.jsonl",
                                  base / "a" / "pairs.csv");
  EXPECT_EQ(loaded.positive_pairs.size(), 50u);
  std::filesystem::remove_all(base);
}

TEST(Synth, RejectsBadOptions) {
  EXPECT_THROW(generate_synthetic({9, 0.1, 1}), Error);
  EXPECT_THROW(generate_synthetic({10, -0.1, 1}), Error);
  EXPECT_THROW(generate_synthetic({10, 1.5, 1}), Error);
  EXPECT_NO_THROW(generate_synthetic({10, 1.0, 1}));
}
