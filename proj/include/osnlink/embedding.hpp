#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "osnlink/profile.hpp"

namespace osnlink {

enum class EmbeddingSource { FileLoaded, HashFallback };

/// Word vectors plus character 3-gram vectors for stacked field embeddings.
///
/// A HashFallback table has no vocabulary: every n-gram gets a unit vector
/// drawn from a generator seeded by (text, seed), and a token's word vector
/// is the normalized sum of its padded 3-grams' word-space vectors. A FileLoaded
/// table uses its stored vectors and falls back to hashed vectors only for
/// character n-grams missing from the file.
struct EmbeddingTable {
  std::size_t dim_word = 0;
  std::size_t dim_char = 0;
  std::unordered_map<std::string, std::vector<double>> word_vectors;
  std::unordered_map<std::string, std::vector<double>> char_ngram_vectors;
  EmbeddingSource source = EmbeddingSource::HashFallback;
  std::uint64_t seed = 0;

  std::size_t dim() const noexcept { return dim_word + dim_char; }

  /// Vector for a folded token, or nullopt when a file-loaded table lacks it.
  std::optional<std::vector<double>> word_vector(std::string_view token) const;
  std::vector<double> char_vector(std::string_view ngram) const;
};

inline constexpr std::size_t kDefaultWordDim = 32;
inline constexpr std::size_t kDefaultCharDim = 32;
inline constexpr std::size_t kCharNgram = 3;

EmbeddingTable make_hash_fallback(std::uint64_t seed, std::size_t dim_word = kDefaultWordDim,
                                  std::size_t dim_char = kDefaultCharDim);

/// Unit vector that is a pure function of (text, seed, dim). `domain` keeps
/// word and n-gram vectors for the same string independent.
std::vector<double> hashed_unit_vector(std::string_view text, std::uint64_t seed,
                                       std::size_t dim, std::uint64_t domain);

/// word2vec text format: a "V D" header followed by V lines "token v1 .. vD".
/// An optional second section introduced by a line "#char-ngrams V D" holds
/// character n-gram vectors; without it, dim_char is 0 unless `char_path`
/// supplies the n-gram vectors in the same format. Tokens are case-folded on
/// load; duplicates keep the last occurrence.
///
/// Throws Error(MalformedLine) naming the 1-based line, Error(DimensionMismatch)
/// when a row's value count differs from the header, Error(IoError) when a
/// file cannot be opened.
EmbeddingTable load_embedding_file(const std::filesystem::path& path,
                                   const std::optional<std::filesystem::path>& char_path = {},
                                   std::uint64_t fallback_seed = 0);
EmbeddingTable load_embedding_stream(std::istream& words, std::istream* chars = nullptr,
                                     std::uint64_t fallback_seed = 0);

/// Whitespace-split tokens of the folded text.
std::vector<std::string> tokenize(const Text& text);

/// Concatenation of the mean word vector of known tokens and the mean of the
/// character 3-gram vectors of every token (padded with '<' and '>').
/// Empty text yields the zero vector.
std::vector<double> embed_field(const Text& text, const EmbeddingTable& table);

FeatureSchema embedding_schema(const EmbeddingTable& table, bool include_description);

/// Per included field (user_name, real_name, optionally description): the
/// element-wise 1 / (1 + |e_a - e_b|) followed by (cos(e_a, e_b) + 1) / 2.
PairFeatureVector pair_embedding_features(const UserProfile& a, const UserProfile& b,
                                          const EmbeddingTable& table, bool include_description);

}  // namespace osnlink
