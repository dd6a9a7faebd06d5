#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "osnlink/dataset.hpp"

namespace osnlink {

struct SynthOptions {
  std::size_t n_users = 500;
  double noise = 0.15;  // per-character edit probability, also drives field drift
  std::uint64_t seed = 42;
};

struct SynthCorpus {
  std::vector<UserProfile> profiles;  // twitter account, flickr account, per person
  std::vector<PostEvent> posts;
  std::vector<PositivePair> pairs;
};

/// Version of the generator constants; bump when output changes.
inline constexpr int kSynthVersion = 1;

/// Generates `n_users` persons, each owning one account per platform. Names
/// are noise-perturbed copies of a per-person original; descriptions,
/// locations and post counts drift with probability growing with `noise`;
/// posting times follow a per-person weekly/daily schedule shared by both
/// accounts. With noise 0 every paired field is identical.
///
/// Throws Error(InvalidArgument) for n_users < 10 or noise outside [0, 1].
SynthCorpus generate_synthetic(const SynthOptions& options);

/// Writes profiles.jsonl, posts.jsonl and pairs.csv into `out_dir`.
void write_synthetic(const SynthCorpus& corpus, const std::filesystem::path& out_dir);

Corpus to_corpus(const SynthCorpus& corpus);

}  // namespace osnlink
