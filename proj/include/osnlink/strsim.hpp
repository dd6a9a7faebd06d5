#pragma once

// String comparison measures used by the profile-similarity model.
//
// All measures operate on case-folded Unicode scalar values. Distances are
// raw integers; `normalized_similarity` maps every measure onto [0, 1] where
// 1 means identical.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace osnlink {

/// Case-folded text, stored as Unicode scalar values.
///
/// Construction decodes UTF-8 (malformed sequences become U+FFFD) and folds
/// to lowercase with a fixed, locale-free table covering Latin, Greek,
/// Cyrillic and fullwidth Latin letters.
class Text {
 public:
  Text() = default;
  explicit Text(std::string_view utf8);

  const std::u32string& chars() const noexcept { return chars_; }
  std::u32string_view view() const noexcept { return chars_; }
  std::size_t size() const noexcept { return chars_.size(); }
  bool empty() const noexcept { return chars_.empty(); }

  /// UTF-8 encoding of the folded form.
  std::string utf8() const;

  friend bool operator==(const Text&, const Text&) = default;

 private:
  std::u32string chars_;
};

char32_t fold_case(char32_t c) noexcept;
std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view text);

enum class Measure {
  Levenshtein,
  DamerauLevenshtein,
  Editex,
  JaroWinkler,
  Jaccard2Gram,
  NcdBzip2,
  Lcs,
  SmithWaterman,
  Cosine2Gram,
};

inline constexpr std::array<Measure, 9> kAllMeasures = {
    Measure::Levenshtein, Measure::DamerauLevenshtein, Measure::Editex,
    Measure::JaroWinkler, Measure::Jaccard2Gram,       Measure::NcdBzip2,
    Measure::Lcs,         Measure::SmithWaterman,      Measure::Cosine2Gram,
};

/// Canonical lowercase identifier, e.g. "editex", "ncd-bzip2".
std::string_view measure_name(Measure m) noexcept;

/// Accepts canonical names plus a few common aliases ("jaro", "ncd", "damerau").
std::optional<Measure> parse_measure(std::string_view name) noexcept;

std::size_t levenshtein(const Text& a, const Text& b);

/// Optimal-string-alignment form: a transposition of adjacent characters
/// costs 1, but transposed characters are not edited again.
std::size_t damerau_levenshtein(const Text& a, const Text& b);

/// Phonetic edit distance. Substitution cost is 0 for equal characters, 1
/// within a shared letter group, 2 otherwise; deleting a character after
/// 'h' or 'w' costs at most 1. Characters outside the letter groups form
/// singleton groups.
std::size_t editex(const Text& a, const Text& b);

double jaro_winkler(const Text& a, const Text& b);

/// Jaccard coefficient of the character 2-gram sets.
double jaccard_2gram(const Text& a, const Text& b);

/// Normalized compression distance using bzip2 on the UTF-8 bytes.
double ncd_bzip2(const Text& a, const Text& b);

/// Compressed size in bytes of `bytes` under bzip2.
std::size_t bzip2_size(std::string_view bytes);

std::size_t lcs_length(const Text& a, const Text& b);

struct LocalAlignment {
  long score = 0;
  // Half-open character ranges of the aligned region in each input.
  std::size_t a_begin = 0;
  std::size_t a_end = 0;
  std::size_t b_begin = 0;
  std::size_t b_end = 0;
};

inline constexpr long kSwMatch = 1;
inline constexpr long kSwMismatch = -1;
inline constexpr long kSwGap = -1;

/// Smith-Waterman local alignment with traceback from the best cell.
LocalAlignment smith_waterman_alignment(const Text& a, const Text& b);

/// Best local alignment score (match +1, mismatch -1, gap -1).
std::size_t smith_waterman(const Text& a, const Text& b);

/// Cosine of the character 2-gram count vectors.
double cosine_2gram(const Text& a, const Text& b);

/// The measure's own output: a distance, score, length or similarity.
double raw_measure(Measure m, const Text& a, const Text& b);

/// Measure mapped onto [0, 1], higher meaning more similar. Equal inputs
/// always yield exactly 1.
double normalized_similarity(Measure m, const Text& a, const Text& b);

}  // namespace osnlink
