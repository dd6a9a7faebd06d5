#pragma once

// Reference implementations used only by tests. The recursive forms are
// direct transcriptions of the recurrences, without memoization, and are
// meant for short strings. PrefixLattice evaluates the same recurrences for
// every pair of strings over a small alphabet at once, indexing each string
// by its prefixes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

inline std::size_t lev(std::string_view a, std::string_view b, std::size_t i, std::size_t j) {
  if (std::min(i, j) == 0) return std::max(i, j);
  return std::min({lev(a, b, i - 1, j) + 1, lev(a, b, i, j - 1) + 1,
                   lev(a, b, i - 1, j - 1) + (a[i - 1] != b[j - 1] ? 1u : 0u)});
}
inline std::size_t lev(std::string_view a, std::string_view b) {
  return lev(a, b, a.size(), b.size());
}

inline std::size_t osa(std::string_view a, std::string_view b, std::size_t i, std::size_t j) {
  if (i == 0 && j == 0) return 0;
  std::size_t best = SIZE_MAX;
  if (i > 0) best = std::min(best, osa(a, b, i - 1, j) + 1);
  if (j > 0) best = std::min(best, osa(a, b, i, j - 1) + 1);
  if (i > 0 && j > 0) best = std::min(best, osa(a, b, i - 1, j - 1) + (a[i - 1] != b[j - 1] ? 1u : 0u));
  if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
    best = std::min(best, osa(a, b, i - 2, j - 2) + 1);
  }
  return best;
}
inline std::size_t osa(std::string_view a, std::string_view b) {
  return osa(a, b, a.size(), b.size());
}

// Letter groups 0..9; a character may sit in several.
inline bool same_group(char x, char y) {
  static const char* const groups[] = {"aeiouy", "bp", "ckq", "dt", "lr",
                                       "mn",     "gj", "fpv", "sxz", "csz"};
  for (const char* g : groups) {
    const std::string_view gs(g);
    if (gs.find(x) != std::string_view::npos && gs.find(y) != std::string_view::npos) return true;
  }
  return false;
}

inline int r_cost(char x, char y) {
  if (x == y) return 0;
  return same_group(x, y) ? 1 : 2;
}

// `x` == '\0' marks the missing predecessor of the first character.
inline int d_cost(char x, char y) {
  if ((x == 'h' || x == 'w') && x != y) return 1;
  return r_cost(x, y);
}

inline std::size_t editex(std::string_view s, std::string_view t, std::size_t i, std::size_t j) {
  auto prev = [](std::string_view str, std::size_t k) { return k >= 2 ? str[k - 2] : '\0'; };
  if (i == 0 && j == 0) return 0;
  if (j == 0) return editex(s, t, i - 1, 0) + d_cost(prev(s, i), s[i - 1]);
  if (i == 0) return editex(s, t, 0, j - 1) + d_cost(prev(t, j), t[j - 1]);
  return std::min({editex(s, t, i - 1, j) + d_cost(prev(s, i), s[i - 1]),
                   editex(s, t, i, j - 1) + d_cost(prev(t, j), t[j - 1]),
                   editex(s, t, i - 1, j - 1) + r_cost(s[i - 1], t[j - 1])});
}
inline std::size_t editex(std::string_view s, std::string_view t) {
  return editex(s, t, s.size(), t.size());
}

inline std::size_t lcs(std::string_view a, std::string_view b, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) return 0;
  if (a[i - 1] == b[j - 1]) return lcs(a, b, i - 1, j - 1) + 1;
  return std::max(lcs(a, b, i - 1, j), lcs(a, b, i, j - 1));
}
inline std::size_t lcs(std::string_view a, std::string_view b) {
  return lcs(a, b, a.size(), b.size());
}

// Global alignment score, match +1, mismatch -1, gap -1.
inline long global_score(std::string_view a, std::string_view b) {
  if (a.empty()) return -static_cast<long>(b.size());
  if (b.empty()) return -static_cast<long>(a.size());
  const auto ra = a.substr(0, a.size() - 1);
  const auto rb = b.substr(0, b.size() - 1);
  return std::max({global_score(ra, rb) + (a.back() == b.back() ? 1 : -1),
                   global_score(ra, b) - 1, global_score(a, rb) - 1});
}

// Best local alignment: the best global score over all substring pairs.
inline long local_score(std::string_view a, std::string_view b) {
  long best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t i2 = i + 1; i2 <= a.size(); ++i2) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        for (std::size_t j2 = j + 1; j2 <= b.size(); ++j2) {
          best = std::max(best, global_score(a.substr(i, i2 - i), b.substr(j, j2 - j)));
        }
      }
    }
  }
  return best;
}

/// Every string over `alphabet` up to `max_len`, shortest first, with each
/// string's prefix ids so recurrences over all pairs fill in id order.
class PrefixLattice {
 public:
  PrefixLattice(std::string_view alphabet, std::size_t max_len) {
    strings_.push_back("");
    parent_.push_back(0);
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      const std::size_t level_end = strings_.size();
      for (std::size_t p = level_begin; p < level_end; ++p) {
        for (const char c : alphabet) {
          strings_.push_back(strings_[p] + c);
          parent_.push_back(p);
        }
      }
      level_begin = level_end;
    }
  }

  std::size_t size() const { return strings_.size(); }
  const std::string& str(std::size_t id) const { return strings_[id]; }

  enum class Kind { Levenshtein, Osa, Editex, Lcs, SmithWaterman };

  /// Value of the recurrence for every (id_a, id_b), row-major.
  std::vector<std::uint8_t> table(Kind kind) const {
    if (kind == Kind::SmithWaterman) return local_table();
    const std::size_t n = size();
    std::vector<std::uint8_t> v(n * n);
    auto at = [&](std::size_t a, std::size_t b) -> std::uint8_t& { return v[a * n + b]; };
    auto last = [&](std::size_t id) { return strings_[id].back(); };
    auto before_last = [&](std::size_t id) {
      const auto& s = strings_[id];
      return s.size() >= 2 ? s[s.size() - 2] : '\0';
    };
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t la = strings_[a].size();
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t lb = strings_[b].size();
        std::size_t val = 0;
        switch (kind) {
          case Kind::Levenshtein:
            if (std::min(la, lb) == 0) {
              val = std::max(la, lb);
            } else {
              val = std::min({at(parent_[a], b) + 1u, at(a, parent_[b]) + 1u,
                              at(parent_[a], parent_[b]) + (last(a) != last(b) ? 1u : 0u)});
            }
            break;
          case Kind::Osa: {
            if (la == 0 && lb == 0) break;
            std::size_t best = SIZE_MAX;
            if (la > 0) best = std::min<std::size_t>(best, at(parent_[a], b) + 1u);
            if (lb > 0) best = std::min<std::size_t>(best, at(a, parent_[b]) + 1u);
            if (la > 0 && lb > 0) {
              best = std::min<std::size_t>(
                  best, at(parent_[a], parent_[b]) + (last(a) != last(b) ? 1u : 0u));
            }
            if (la > 1 && lb > 1 && last(a) == before_last(b) && before_last(a) == last(b)) {
              best = std::min<std::size_t>(best, at(parent_[parent_[a]], parent_[parent_[b]]) + 1u);
            }
            val = best;
            break;
          }
          case Kind::Editex: {
            if (la == 0 && lb == 0) break;
            const int da = la > 0 ? d_cost(before_last(a), last(a)) : 0;
            const int db = lb > 0 ? d_cost(before_last(b), last(b)) : 0;
            if (lb == 0) {
              val = at(parent_[a], b) + da;
            } else if (la == 0) {
              val = at(a, parent_[b]) + db;
            } else {
              val = std::min<std::size_t>({at(parent_[a], b) + static_cast<std::size_t>(da),
                                           at(a, parent_[b]) + static_cast<std::size_t>(db),
                                           at(parent_[a], parent_[b]) +
                                               static_cast<std::size_t>(r_cost(last(a), last(b)))});
            }
            break;
          }
          case Kind::Lcs:
            if (la == 0 || lb == 0) break;
            if (last(a) == last(b)) {
              val = at(parent_[a], parent_[b]) + 1u;
            } else {
              val = std::max(at(parent_[a], b), at(a, parent_[b]));
            }
            break;
          case Kind::SmithWaterman:
            break;
        }
        at(a, b) = static_cast<std::uint8_t>(val);
      }
    }
    return v;
  }

 private:
  // Best local alignment score (+1 / -1 / gap -1). `end` holds the best
  // alignment ending at both last characters, clamped at 0.
  std::vector<std::uint8_t> local_table() const {
    const std::size_t n = size();
    std::vector<std::int8_t> end(n * n, 0);
    std::vector<std::uint8_t> best(n * n, 0);
    for (std::size_t a = 1; a < n; ++a) {
      for (std::size_t b = 1; b < n; ++b) {
        const std::size_t pa = parent_[a];
        const std::size_t pb = parent_[b];
        const int step = strings_[a].back() == strings_[b].back() ? 1 : -1;
        const int e = std::max({0, end[pa * n + pb] + step, end[pa * n + b] - 1, end[a * n + pb] - 1});
        end[a * n + b] = static_cast<std::int8_t>(e);
        best[a * n + b] = static_cast<std::uint8_t>(
            std::max({e, int{best[pa * n + b]}, int{best[a * n + pb]}}));
      }
    }
    return best;
  }

  std::vector<std::string> strings_;
  std::vector<std::size_t> parent_;
};

}  // namespace oracle
