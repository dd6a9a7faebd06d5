#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "osnlink/strsim.hpp"

namespace osnlink {

namespace {

using Bigram = std::pair<char32_t, char32_t>;

std::map<Bigram, std::size_t> bigram_counts(const std::u32string& s) {
  std::map<Bigram, std::size_t> counts;
  for (std::size_t i = 1; i < s.size(); ++i) ++counts[{s[i - 1], s[i]}];
  return counts;
}

std::set<Bigram> bigram_set(const std::u32string& s) {
  std::set<Bigram> grams;
  for (std::size_t i = 1; i < s.size(); ++i) grams.emplace(s[i - 1], s[i]);
  return grams;
}

double jaro(const std::u32string& s, const std::u32string& t) {
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  const std::size_t window = std::max(n, m) / 2 > 0 ? std::max(n, m) / 2 - 1 : 0;
  std::vector<bool> s_matched(n, false);
  std::vector<bool> t_matched(m, false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(m, i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!t_matched[j] && s[i] == t[j]) {
        s_matched[i] = t_matched[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  std::size_t half_transpositions = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!s_matched[i]) continue;
    while (!t_matched[k]) ++k;
    if (s[i] != t[k]) ++half_transpositions;
    ++k;
  }
  const double mm = static_cast<double>(matches);
  const double transpositions = static_cast<double>(half_transpositions / 2);
  return (mm / n + mm / m + (mm - transpositions) / mm) / 3.0;
}

}  // namespace

double jaro_winkler(const Text& a, const Text& b) {
  if (a == b) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  // Greedy matching is order-sensitive in rare cases; fix the argument order.
  const bool swap = b.chars() < a.chars();
  const auto& s = swap ? b.chars() : a.chars();
  const auto& t = swap ? a.chars() : b.chars();
  const double sim = jaro(s, t);
  std::size_t prefix = 0;
  while (prefix < 4 && prefix < s.size() && prefix < t.size() && s[prefix] == t[prefix]) ++prefix;
  return std::clamp(sim + static_cast<double>(prefix) * 0.1 * (1.0 - sim), 0.0, 1.0);
}

double jaccard_2gram(const Text& a, const Text& b) {
  if (a == b) return 1.0;
  const auto sa = bigram_set(a.chars());
  const auto sb = bigram_set(b.chars());
  if (sa.empty() || sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& g : sa) common += sb.count(g);
  const std::size_t uni = sa.size() + sb.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double cosine_2gram(const Text& a, const Text& b) {
  if (a == b) return 1.0;
  const auto ca = bigram_counts(a.chars());
  const auto cb = bigram_counts(b.chars());
  if (ca.empty() || cb.empty()) return 0.0;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [g, c] : ca) {
    na += static_cast<double>(c * c);
    if (auto it = cb.find(g); it != cb.end()) dot += static_cast<double>(c * it->second);
  }
  for (const auto& [g, c] : cb) nb += static_cast<double>(c * c);
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

}  // namespace osnlink
