#include <algorithm>
#include <cstdint>
#include <vector>

#include "osnlink/strsim.hpp"

namespace osnlink {

namespace {

/// Row-major (rows x cols) table.
template <typename T>
class Table {
 public:
  Table(std::size_t rows, std::size_t cols) : cols_(cols), cells_(rows * cols, T{}) {}
  T& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  T operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

 private:
  std::size_t cols_;
  std::vector<T> cells_;
};

// Editex letter groups, one bit per group.
constexpr std::uint16_t editex_groups(char32_t c) noexcept {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
      return 1u << 0;
    case U'b': return 1u << 1;
    case U'p': return (1u << 1) | (1u << 7);
    case U'c': return (1u << 2) | (1u << 9);
    case U'k': case U'q': return 1u << 2;
    case U'd': case U't': return 1u << 3;
    case U'l': case U'r': return 1u << 4;
    case U'm': case U'n': return 1u << 5;
    case U'g': case U'j': return 1u << 6;
    case U'f': case U'v': return 1u << 7;
    case U's': case U'z': return (1u << 8) | (1u << 9);
    case U'x': return 1u << 8;
    default: return 0;
  }
}

// Stands in for the character before the first one; equal to nothing.
constexpr char32_t kNoChar = 0x110000;

constexpr std::size_t editex_r(char32_t a, char32_t b) noexcept {
  if (a == b) return 0;
  return (editex_groups(a) & editex_groups(b)) != 0 ? 1 : 2;
}

constexpr std::size_t editex_d(char32_t a, char32_t b) noexcept {
  if (a != b && (a == U'h' || a == U'w')) return 1;
  return editex_r(a, b);
}

}  // namespace

std::size_t levenshtein(const Text& a, const Text& b) {
  const auto& s = a.chars();
  const auto& t = b.chars();
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  std::vector<std::size_t> prev(m + 1);
  std::vector<std::size_t> cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (s[i - 1] != t[j - 1] ? 1 : 0);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

std::size_t damerau_levenshtein(const Text& a, const Text& b) {
  const auto& s = a.chars();
  const auto& t = b.chars();
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  Table<std::size_t> d(n + 1, m + 1);
  for (std::size_t i = 0; i <= n; ++i) d(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) d(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t best = std::min({d(i - 1, j) + 1, d(i, j - 1) + 1,
                                   d(i - 1, j - 1) + (s[i - 1] != t[j - 1] ? 1 : 0)});
      if (i > 1 && j > 1 && s[i - 1] == t[j - 2] && s[i - 2] == t[j - 1]) {
        best = std::min(best, d(i - 2, j - 2) + 1);
      }
      d(i, j) = best;
    }
  }
  return d(n, m);
}

std::size_t editex(const Text& a, const Text& b) {
  const auto& s = a.chars();
  const auto& t = b.chars();
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  // Character preceding position k (1-based) of a string.
  auto before = [](const std::u32string& str, std::size_t k) {
    return k >= 2 ? str[k - 2] : kNoChar;
  };
  Table<std::size_t> e(n + 1, m + 1);
  for (std::size_t i = 1; i <= n; ++i) e(i, 0) = e(i - 1, 0) + editex_d(before(s, i), s[i - 1]);
  for (std::size_t j = 1; j <= m; ++j) e(0, j) = e(0, j - 1) + editex_d(before(t, j), t[j - 1]);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      e(i, j) = std::min({e(i - 1, j) + editex_d(before(s, i), s[i - 1]),
                          e(i, j - 1) + editex_d(before(t, j), t[j - 1]),
                          e(i - 1, j - 1) + editex_r(s[i - 1], t[j - 1])});
    }
  }
  return e(n, m);
}

std::size_t lcs_length(const Text& a, const Text& b) {
  const auto& s = a.chars();
  const auto& t = b.chars();
  const std::size_t m = t.size();
  std::vector<std::size_t> prev(m + 1, 0);
  std::vector<std::size_t> cur(m + 1, 0);
  for (const char32_t x : s) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = (x == t[j - 1]) ? prev[j - 1] + 1 : std::max(cur[j - 1], prev[j]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

LocalAlignment smith_waterman_alignment(const Text& a, const Text& b) {
  enum Source : std::uint8_t { kNone, kDiagonal, kUp, kLeft };
  const auto& s = a.chars();
  const auto& t = b.chars();
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  // First row and column stay zero.
  Table<long> score(n + 1, m + 1);
  Table<std::uint8_t> from(n + 1, m + 1);
  long best = 0;
  std::size_t best_i = 0;
  std::size_t best_j = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const long diag = score(i - 1, j - 1) + (s[i - 1] == t[j - 1] ? kSwMatch : kSwMismatch);
      const long up = score(i - 1, j) + kSwGap;
      const long left = score(i, j - 1) + kSwGap;
      long cell = 0;
      std::uint8_t src = kNone;
      if (diag > cell) {
        cell = diag;
        src = kDiagonal;
      }
      if (up > cell) {
        cell = up;
        src = kUp;
      }
      if (left > cell) {
        cell = left;
        src = kLeft;
      }
      score(i, j) = cell;
      from(i, j) = src;
      if (cell > best) {
        best = cell;
        best_i = i;
        best_j = j;
      }
    }
  }

  LocalAlignment out;
  out.score = best;
  out.a_end = best_i;
  out.b_end = best_j;
  std::size_t i = best_i;
  std::size_t j = best_j;
  while (score(i, j) > 0) {
    const auto src = from(i, j);
    if (src == kDiagonal || src == kUp) --i;
    if (src == kDiagonal || src == kLeft) --j;
  }
  out.a_begin = i;
  out.b_begin = j;
  return out;
}

std::size_t smith_waterman(const Text& a, const Text& b) {
  return static_cast<std::size_t>(smith_waterman_alignment(a, b).score);
}

}  // namespace osnlink
