#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "osnlink/rng.hpp"
#include "osnlink/strsim.hpp"

using namespace osnlink;

namespace {

Text T(const char* s) { return Text(s); }

std::string random_word(Rng& rng, std::string_view alphabet, std::size_t max_len) {
  std::string s;
  const auto len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
  return s;
}

// Short strings mixing letter groups, h/w, digits, punctuation and non-ASCII.
std::string random_mixed(Rng& rng, std::size_t max_len) {
  static const std::vector<std::string> pieces = {"a", "b", "c", "k", "h", "w", "s", "z", "p",
                                                  "1", "_", ".", "é", "Ж", "ß", "X", " "};
  std::string s;
  const auto len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) s += pieces[rng.below(pieces.size())];
  return s;
}

}  // namespace

TEST(Text, FoldsCaseAcrossScripts) {
  EXPECT_EQ(T("JaneDoe"), T("janedoe"));
  EXPECT_EQ(T("ÀÉÎ"), T("àéî"));
  EXPECT_EQ(T("ΣΩ"), T("σω"));
  EXPECT_EQ(T("ЖУК"), T("жук"));
  EXPECT_EQ(T("ＡＢ"), T("ａｂ"));
  EXPECT_EQ(T("abc").size(), 3u);
  EXPECT_EQ(T("é").size(), 1u);
}

TEST(Text, FoldingIsIdempotent) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Text once(random_mixed(rng, 8));
    EXPECT_EQ(Text(once.utf8()), once);
  }
  for (char32_t c = 0; c < 0x10000; ++c) {
    if (c >= 0xD800 && c < 0xE000) continue;
    ASSERT_EQ(fold_case(fold_case(c)), fold_case(c)) << static_cast<unsigned>(c);
  }
}

TEST(Text, MalformedUtf8BecomesReplacementChar) {
  const auto chars = decode_utf8(std::string("a\xff" "b\xc3", 4));
  ASSERT_EQ(chars.size(), 4u);
  EXPECT_EQ(chars[1], U'�');
  EXPECT_EQ(chars[3], U'�');
  EXPECT_EQ(encode_utf8(decode_utf8("naïve Ж")), "naïve Ж");
}

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein(T("abc"), T("abc")), 0u);
  EXPECT_EQ(levenshtein(T(""), T("abc")), 3u);
  EXPECT_EQ(levenshtein(T("kitten"), T("sitting")), 3u);
  EXPECT_EQ(levenshtein(T("janedoe"), T("jane_doe")), 1u);
}

TEST(DamerauLevenshtein, Examples) {
  EXPECT_EQ(damerau_levenshtein(T("ab"), T("ba")), 1u);
  EXPECT_EQ(damerau_levenshtein(T("abc"), T("abc")), 0u);
  EXPECT_EQ(damerau_levenshtein(T("ca"), T("abc")), 3u);
  EXPECT_EQ(oracle::osa("ca", "abc"), 3u);
}

TEST(Editex, Examples) {
  EXPECT_EQ(editex(T("abc"), T("abc")), 0u);
  EXPECT_EQ(editex(T("can"), T("kan")), 1u);
  EXPECT_EQ(editex(T("cat"), T("dog")), oracle::editex("cat", "dog"));
  EXPECT_EQ(editex(T("smith"), T("smyth")), oracle::editex("smith", "smyth"));
  EXPECT_EQ(editex(T("ah"), T("a")), oracle::editex("ah", "a"));
}

TEST(Editex, NonLettersAreSingletonGroups) {
  EXPECT_EQ(editex(T("a1"), T("a2")), 2u);
  EXPECT_EQ(editex(T("a_"), T("a_")), 0u);
  // p is in two groups (bp, fpv), so it is 1 away from both b and f.
  EXPECT_EQ(editex(T("pa"), T("ba")), 1u);
  EXPECT_EQ(editex(T("pa"), T("fa")), 1u);
  EXPECT_EQ(editex(T("ba"), T("fa")), 2u);
}

TEST(Editex, CaseInsensitive) { EXPECT_EQ(editex(T("CAN"), T("kan")), 1u); }

TEST(Oracles, ShortStringsExhaustive) {
  oracle::PrefixLattice lattice("abcd", 3);
  std::vector<Text> texts;
  for (std::size_t i = 0; i < lattice.size(); ++i) texts.emplace_back(lattice.str(i));
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    for (std::size_t j = 0; j < lattice.size(); ++j) {
      const auto& a = lattice.str(i);
      const auto& b = lattice.str(j);
      ASSERT_EQ(levenshtein(texts[i], texts[j]), oracle::lev(a, b)) << a << " / " << b;
      ASSERT_EQ(damerau_levenshtein(texts[i], texts[j]), oracle::osa(a, b)) << a << " / " << b;
      ASSERT_EQ(editex(texts[i], texts[j]), oracle::editex(a, b)) << a << " / " << b;
      ASSERT_EQ(lcs_length(texts[i], texts[j]), oracle::lcs(a, b)) << a << " / " << b;
      ASSERT_EQ(static_cast<long>(smith_waterman(texts[i], texts[j])), oracle::local_score(a, b))
          << a << " / " << b;
    }
  }
}

TEST(Oracles, RandomLongerStrings) {
  Rng rng(11);
  for (int n = 0; n < 150; ++n) {
    const std::string a = random_word(rng, "abchkwpsz", 6);
    const std::string b = random_word(rng, "abchkwpsz", 6);
    ASSERT_EQ(levenshtein(Text(a), Text(b)), oracle::lev(a, b)) << a << " / " << b;
    ASSERT_EQ(damerau_levenshtein(Text(a), Text(b)), oracle::osa(a, b)) << a << " / " << b;
    ASSERT_EQ(editex(Text(a), Text(b)), oracle::editex(a, b)) << a << " / " << b;
    ASSERT_EQ(lcs_length(Text(a), Text(b)), oracle::lcs(a, b)) << a << " / " << b;
  }
}

TEST(Oracles, LatticeAgreesWithRecursion) {
  oracle::PrefixLattice lattice("abh", 3);
  const auto lev = lattice.table(oracle::PrefixLattice::Kind::Levenshtein);
  const auto osa = lattice.table(oracle::PrefixLattice::Kind::Osa);
  const auto edx = lattice.table(oracle::PrefixLattice::Kind::Editex);
  const auto lcs = lattice.table(oracle::PrefixLattice::Kind::Lcs);
  const auto sw = lattice.table(oracle::PrefixLattice::Kind::SmithWaterman);
  const std::size_t n = lattice.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = lattice.str(i);
      const auto& b = lattice.str(j);
      ASSERT_EQ(lev[i * n + j], oracle::lev(a, b));
      ASSERT_EQ(osa[i * n + j], oracle::osa(a, b));
      ASSERT_EQ(edx[i * n + j], oracle::editex(a, b));
      ASSERT_EQ(lcs[i * n + j], oracle::lcs(a, b));
      ASSERT_EQ(sw[i * n + j], oracle::local_score(a, b)) << a << " / " << b;
    }
  }
}

TEST(JaroWinkler, Examples) {
  EXPECT_DOUBLE_EQ(jaro_winkler(T("abc"), T("abc")), 1.0);
  EXPECT_DOUBLE_EQ(jaro_winkler(T("abc"), T("xyz")), 0.0);
  EXPECT_NEAR(jaro_winkler(T("martha"), T("marhta")), 0.9611, 1e-4);
  EXPECT_NEAR(jaro_winkler(T("dwayne"), T("duane")), 0.84, 1e-4);
  EXPECT_NEAR(jaro_winkler(T("dixon"), T("dicksonx")), 0.8133, 1e-4);
}

TEST(Jaccard, Examples) {
  EXPECT_DOUBLE_EQ(jaccard_2gram(T("abc"), T("abc")), 1.0);
  EXPECT_DOUBLE_EQ(jaccard_2gram(T("abcd"), T("abce")), 0.5);
  EXPECT_DOUBLE_EQ(jaccard_2gram(T("ab"), T("xy")), 0.0);
  EXPECT_DOUBLE_EQ(jaccard_2gram(T("a"), T("a")), 1.0);
  EXPECT_DOUBLE_EQ(jaccard_2gram(T("a"), T("b")), 0.0);
  EXPECT_DOUBLE_EQ(jaccard_2gram(T(""), T("ab")), 0.0);
  // Sets, not counts.
  EXPECT_DOUBLE_EQ(jaccard_2gram(T("abab"), T("ab")), 0.5);
}

TEST(Cosine, Examples) {
  EXPECT_DOUBLE_EQ(cosine_2gram(T("abc"), T("abc")), 1.0);
  EXPECT_DOUBLE_EQ(cosine_2gram(T("ab"), T("cd")), 0.0);
  EXPECT_NEAR(cosine_2gram(T("abab"), T("ab")), 2.0 / std::sqrt(5.0), 1e-12);
  EXPECT_DOUBLE_EQ(cosine_2gram(T("x"), T("y")), 0.0);
}

TEST(Lcs, Examples) {
  EXPECT_EQ(lcs_length(T("abc"), T("abc")), 3u);
  EXPECT_EQ(lcs_length(T("abc"), T("xyz")), 0u);
  EXPECT_EQ(lcs_length(T("abcbdab"), T("bdcaba")), 4u);
}

TEST(SmithWaterman, Examples) {
  EXPECT_EQ(smith_waterman(T("abc"), T("abc")), 3u);
  EXPECT_EQ(smith_waterman(T("abc"), T("xyz")), 0u);
  EXPECT_EQ(smith_waterman(T("aab"), T("ab")), 2u);
}

TEST(SmithWaterman, TracebackRecoversAlignedRegion) {
  const auto al = smith_waterman_alignment(T("xxabcxx"), T("yabcy"));
  EXPECT_EQ(al.score, 3);
  EXPECT_EQ(al.a_begin, 2u);
  EXPECT_EQ(al.a_end, 5u);
  EXPECT_EQ(al.b_begin, 1u);
  EXPECT_EQ(al.b_end, 4u);
  const auto none = smith_waterman_alignment(T("abc"), T("xyz"));
  EXPECT_EQ(none.score, 0);
  EXPECT_EQ(none.a_begin, none.a_end);
}

TEST(Ncd, SelfSimilarAndRandom) {
  std::string abab;
  for (int i = 0; i < 512; ++i) abab += "ab";
  EXPECT_LE(ncd_bzip2(Text(abab), Text(abab)), 0.15);
  EXPECT_GT(ncd_bzip2(Text(abab), Text(abab)), 0.0);

  Rng rng(99);
  const std::string alnum = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string r1, r2;
  for (int i = 0; i < 1024; ++i) r1 += alnum[rng.below(alnum.size())];
  for (int i = 0; i < 1024; ++i) r2 += alnum[rng.below(alnum.size())];
  EXPECT_GE(ncd_bzip2(Text(r1), Text(r2)), 0.8);
  EXPECT_DOUBLE_EQ(normalized_similarity(Measure::NcdBzip2, T(""), T("")), 1.0);
}

TEST(Ncd, MatchesCompressedSizes) {
  const std::string a = "janedoe", b = "jane_doe";
  const double ca = static_cast<double>(bzip2_size(a));
  const double cb = static_cast<double>(bzip2_size(b));
  const double cab = static_cast<double>(bzip2_size(a + b));
  EXPECT_DOUBLE_EQ(ncd_bzip2(Text(a), Text(b)), (cab - std::min(ca, cb)) / std::max(ca, cb));
  EXPECT_GT(bzip2_size(""), 0u);
}

TEST(Normalized, Examples) {
  EXPECT_NEAR(normalized_similarity(Measure::Levenshtein, T("kitten"), T("sitting")), 1.0 - 3.0 / 7.0,
              1e-12);
  for (const Measure m : kAllMeasures) {
    EXPECT_DOUBLE_EQ(normalized_similarity(m, T("x"), T("x")), 1.0) << measure_name(m);
    EXPECT_DOUBLE_EQ(normalized_similarity(m, T(""), T("")), 1.0) << measure_name(m);
  }
  EXPECT_DOUBLE_EQ(normalized_similarity(Measure::Lcs, T("abc"), T("xyz")), 0.0);
  EXPECT_DOUBLE_EQ(normalized_similarity(Measure::Editex, T("can"), T("kan")), 1.0 - 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(normalized_similarity(Measure::SmithWaterman, T("aab"), T("ab")), 1.0);
  EXPECT_DOUBLE_EQ(normalized_similarity(Measure::Levenshtein, T("janedoe"), T("jane_doe")), 0.875);
}

TEST(Normalized, RawMeasureDispatch) {
  EXPECT_DOUBLE_EQ(raw_measure(Measure::Levenshtein, T("kitten"), T("sitting")), 3.0);
  EXPECT_DOUBLE_EQ(raw_measure(Measure::Lcs, T("abcbdab"), T("bdcaba")), 4.0);
  EXPECT_DOUBLE_EQ(raw_measure(Measure::Jaccard2Gram, T("abcd"), T("abce")), 0.5);
}

TEST(MeasureNames, RoundTrip) {
  for (const Measure m : kAllMeasures) EXPECT_EQ(parse_measure(measure_name(m)), m);
  EXPECT_EQ(parse_measure("jaro"), Measure::JaroWinkler);
  EXPECT_FALSE(parse_measure("soundex").has_value());
}

TEST(MeasureProperties, SymmetryIdentityRangeOrdering) {
  Rng rng(2024);
  for (int n = 0; n < 400; ++n) {
    const Text a(random_mixed(rng, 9));
    const Text b(random_mixed(rng, 9));
    for (const Measure m : kAllMeasures) {
      const double ab = normalized_similarity(m, a, b);
      const double ba = normalized_similarity(m, b, a);
      ASSERT_GE(ab, 0.0);
      ASSERT_LE(ab, 1.0);
      if (m == Measure::NcdBzip2) {
        ASSERT_LE(std::abs(ab - ba), 0.05) << measure_name(m);
      } else {
        ASSERT_EQ(ab, ba) << measure_name(m) << ": " << a.utf8() << " / " << b.utf8();
      }
      ASSERT_EQ(normalized_similarity(m, a, a), 1.0) << measure_name(m);
    }
    ASSERT_GE(levenshtein(a, b), damerau_levenshtein(a, b));
    ASSERT_LE(smith_waterman(a, b), std::min(a.size(), b.size()));
    ASSERT_LE(lcs_length(a, b), std::min(a.size(), b.size()));
    ASSERT_EQ(levenshtein(a, b) == 0, a == b);
  }
}
