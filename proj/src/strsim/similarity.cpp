#include <algorithm>
#include <array>
#include <utility>

#include "osnlink/strsim.hpp"

namespace osnlink {

namespace {

constexpr std::array<std::pair<std::string_view, Measure>, 9> kNames = {{
    {"levenshtein", Measure::Levenshtein},
    {"damerau-levenshtein", Measure::DamerauLevenshtein},
    {"editex", Measure::Editex},
    {"jaro-winkler", Measure::JaroWinkler},
    {"jaccard", Measure::Jaccard2Gram},
    {"ncd-bzip2", Measure::NcdBzip2},
    {"lcs", Measure::Lcs},
    {"smith-waterman", Measure::SmithWaterman},
    {"cosine", Measure::Cosine2Gram},
}};

constexpr std::array<std::pair<std::string_view, Measure>, 8> kAliases = {{
    {"damerau", Measure::DamerauLevenshtein},
    {"jaro", Measure::JaroWinkler},
    {"jaccard-2gram", Measure::Jaccard2Gram},
    {"ncd", Measure::NcdBzip2},
    {"bzip2", Measure::NcdBzip2},
    {"lc-sequence", Measure::Lcs},
    {"smithwaterman", Measure::SmithWaterman},
    {"cosine-2gram", Measure::Cosine2Gram},
}};

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view measure_name(Measure m) noexcept {
  for (const auto& [name, id] : kNames) {
    if (id == m) return name;
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) noexcept {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](char c) {
    if (c == '_') return '-';
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
  });
  for (const auto& [n, id] : kNames) {
    if (n == lowered) return id;
  }
  for (const auto& [n, id] : kAliases) {
    if (n == lowered) return id;
  }
  return std::nullopt;
}

double raw_measure(Measure m, const Text& a, const Text& b) {
  switch (m) {
    case Measure::Levenshtein: return static_cast<double>(levenshtein(a, b));
    case Measure::DamerauLevenshtein: return static_cast<double>(damerau_levenshtein(a, b));
    case Measure::Editex: return static_cast<double>(editex(a, b));
    case Measure::JaroWinkler: return jaro_winkler(a, b);
    case Measure::Jaccard2Gram: return jaccard_2gram(a, b);
    case Measure::NcdBzip2: return ncd_bzip2(a, b);
    case Measure::Lcs: return static_cast<double>(lcs_length(a, b));
    case Measure::SmithWaterman: return static_cast<double>(smith_waterman(a, b));
    case Measure::Cosine2Gram: return cosine_2gram(a, b);
  }
  return 0.0;
}

double normalized_similarity(Measure m, const Text& a, const Text& b) {
  if (a == b) return 1.0;
  const std::size_t longest = std::max(a.size(), b.size());
  const std::size_t shortest = std::min(a.size(), b.size());
  double sim = 0.0;
  switch (m) {
    case Measure::Levenshtein:
      sim = 1.0 - ratio(levenshtein(a, b), longest);
      break;
    case Measure::DamerauLevenshtein:
      sim = 1.0 - ratio(damerau_levenshtein(a, b), longest);
      break;
    case Measure::Editex:
      // Each character costs at most 2.
      sim = 1.0 - ratio(editex(a, b), 2 * longest);
      break;
    case Measure::JaroWinkler:
      sim = jaro_winkler(a, b);
      break;
    case Measure::Jaccard2Gram:
      sim = jaccard_2gram(a, b);
      break;
    case Measure::NcdBzip2:
      sim = 1.0 - ncd_bzip2(a, b);
      break;
    case Measure::Lcs:
      sim = ratio(lcs_length(a, b), longest);
      break;
    case Measure::SmithWaterman:
      sim = ratio(smith_waterman(a, b), shortest);
      break;
    case Measure::Cosine2Gram:
      sim = cosine_2gram(a, b);
      break;
  }
  return std::clamp(sim, 0.0, 1.0);
}

}  // namespace osnlink
