#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "oracles.hpp"
#include "symrec/errors.hpp"
#include "symrec/generator.hpp"

using namespace symrec;
using oracle::NameSet;

namespace {

std::vector<SymptomId> letters(const std::string& s) {
  std::vector<SymptomId> out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

DisorderSpec single(const std::string& label, GeneratorSpec g) { return DisorderSpec(label, {std::move(g)}); }

DisorderSpec g1_example() { return single("g1", GeneratorSpec::subset(letters("abcdefgh"), 5)); }
DisorderSpec g2_example() { return single("g2", GeneratorSpec::subset(letters("defghijk"), 4)); }

std::vector<SymptomId> random_subset(const std::vector<SymptomId>& from, std::size_t max, std::mt19937& rng) {
  std::vector<SymptomId> pool = from;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min<std::size_t>(pool.size(), rng() % (max + 1)));
  return pool;
}

bool contains_all(const NameSet& q, const std::vector<SymptomId>& p) {
  return std::all_of(p.begin(), p.end(), [&](const auto& s) { return q.count(s) > 0; });
}

bool avoids_all(const NameSet& q, const std::vector<SymptomId>& a) {
  return std::none_of(a.begin(), a.end(), [&](const auto& s) { return q.count(s) > 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Enumeration and counting

TEST(Enumerate, IdentityYieldsBaseSet) {
  auto sets = enumerate_all(GeneratorSpec::identity(letters("abcd")));
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0], letters("abcd"));
}

TEST(Enumerate, SubsetG1Example) {
  auto g = GeneratorSpec::subset(letters("abcdefgh"), 5);
  EXPECT_EQ(enumerate_all(g).size(), 93u);
  EXPECT_EQ(count(g), 93u);
}

TEST(Enumerate, MultiSetTouchingBothSets) {
  auto g = GeneratorSpec::multi_set({letters("ab"), letters("cd")}, 2);
  auto expected = oracle::enumerate(g);
  EXPECT_EQ(expected.size(), 9u);
  EXPECT_EQ(oracle::to_name_sets(enumerate_all(g)), expected);
  EXPECT_EQ(count(g), 9u);
}

TEST(Enumerate, DisjointCombination) {
  auto g = GeneratorSpec::disjoint_combination({letters("a"), letters("b")}, {letters("c"), letters("d")});
  auto sets = enumerate_all(g);
  EXPECT_EQ(sets, (std::vector<SymptomSet>{letters("ac"), letters("ad"), letters("bc"), letters("bd")}));
  EXPECT_EQ(count(g), 4u);
}

TEST(Enumerate, CursorResetReplaysStream) {
  auto cursor = enumerate(GeneratorSpec::subset(letters("abcd"), 2));
  std::vector<SymptomSet> first, second;
  while (cursor.next()) first.push_back(cursor.current_set());
  cursor.reset();
  while (cursor.next()) second.push_back(cursor.current_set());
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.size(), 11u);
}

TEST(Count, KnownValues) {
  EXPECT_EQ(count(GeneratorSpec::subset(letters("defghijk"), 4)), 163u);
  EXPECT_EQ(count(GeneratorSpec::subset(letters("eijk"), 0)), 16u);
  EXPECT_EQ(count(GeneratorSpec::subset(letters("abcdef"), 6)), 1u);
  EXPECT_EQ(count_disorder(single("x", GeneratorSpec::identity(letters("abc")))), 1u);
}

TEST(Count, OverflowIsReported) {
  std::vector<SymptomId> many;
  for (int i = 0; i < 70; ++i) many.push_back("s" + std::to_string(i));
  EXPECT_THROW(count(GeneratorSpec::subset(many, 0)), CountOverflow);
}

TEST(Count, LargeSubsetIsClosedForm) {
  std::vector<SymptomId> syms;
  for (int i = 0; i < 24; ++i) syms.push_back("s" + std::to_string(100 + i));
  auto g = GeneratorSpec::subset(syms, 5);

  std::uint64_t brute = 0;
  for (std::uint32_t mask = 0; mask < (1U << 24); ++mask)
    if (std::popcount(mask) >= 5) ++brute;

  auto t0 = std::chrono::steady_clock::now();
  auto n = count(g);
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(n, brute);
  EXPECT_GT(n, 4'200'000u);
  EXPECT_LT(ms, 10.0);
}

// count(g) = |enumerate(g)|, the stream has no duplicates, follows
// (cardinality, lexicographic) order, and matches the brute-force set.
TEST(EnumerateProperty, MatchesBruteForceOverRandomGenerators) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 3000; ++trial) {
    auto syms = oracle::alphabet(1 + rng() % 12);
    auto g = oracle::random_generator(syms, rng);
    auto stream = enumerate_all(g);
    auto expected = oracle::enumerate(g);
    SCOPED_TRACE(to_bracket(g));
    ASSERT_EQ(oracle::to_name_sets(stream), expected);
    ASSERT_EQ(stream.size(), expected.size());
    ASSERT_EQ(count(g), expected.size());
    for (const auto& s : stream) ASSERT_TRUE(oracle::member(g, NameSet(s.begin(), s.end())));
    ASSERT_TRUE(std::is_sorted(stream.begin(), stream.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    }));
  }
}

TEST(EnumerateDisorder, ProductOfComponents) {
  DisorderSpec d("d1", {GeneratorSpec::identity(letters("cd")), GeneratorSpec::subset(letters("ab"), 1)});
  auto sets = oracle::to_name_sets(enumerate_all(d));
  std::set<NameSet> expected{{"a", "c", "d"}, {"b", "c", "d"}, {"a", "b", "c", "d"}};
  EXPECT_EQ(sets, expected);
  EXPECT_EQ(count_disorder(d), 3u);
}

TEST(EnumerateDisorder, SingleComponentMatchesGenerator) {
  auto g = GeneratorSpec::multi_set({letters("ab"), letters("c"), letters("de")}, 2);
  EXPECT_EQ(enumerate_all(single("x", g)), enumerate_all(g));
}

TEST(EnumerateDisorder, CaseOneCounts) {
  DisorderSpec a("g1", {GeneratorSpec::identity(letters("dfh")), GeneratorSpec::subset(letters("abceg"), 2)});
  DisorderSpec b("g2", {GeneratorSpec::identity(letters("dfh")), GeneratorSpec::subset(letters("egijk"), 1)});
  DisorderSpec c("g1", {GeneratorSpec::identity(letters("dfgh")), GeneratorSpec::subset(letters("abce"), 1)});
  EXPECT_EQ(enumerate_all(a).size(), 26u);
  EXPECT_EQ(count_disorder(a), 26u);
  EXPECT_EQ(count_disorder(b), 31u);
  EXPECT_EQ(count_disorder(c), 15u);
}

TEST(EnumerateDisorderProperty, MatchesBruteForce) {
  std::mt19937 rng(99);
  auto pool = oracle::alphabet(12);
  for (int trial = 0; trial < 1500; ++trial) {
    auto d = oracle::random_disorder("d", pool, rng, 12);
    SCOPED_TRACE(to_bracket(d));
    auto stream = enumerate_all(d);
    auto expected = oracle::enumerate(d);
    ASSERT_EQ(oracle::to_name_sets(stream), expected);
    ASSERT_EQ(stream.size(), expected.size());
    ASSERT_EQ(count_disorder(d), expected.size());
  }
}

// ---------------------------------------------------------------------------
// Validation

TEST(Validation, Invariants) {
  EXPECT_THROW(GeneratorSpec::subset(letters("abcdefgh"), 9), SpecValidation);
  EXPECT_THROW(GeneratorSpec::multi_set({letters("ab")}, 2), SpecValidation);
  EXPECT_THROW(GeneratorSpec::multi_set({letters("ab"), {}}, 1), SpecValidation);
  EXPECT_THROW(GeneratorSpec::multi_set({letters("ab"), letters("bc")}, 1), SpecValidation);
  EXPECT_THROW(GeneratorSpec::disjoint_combination({}, {letters("a")}), SpecValidation);
  EXPECT_THROW(GeneratorSpec::disjoint_combination({letters("a")}, {{}}), SpecValidation);
  EXPECT_THROW(GeneratorSpec::ex_multi_set({letters("a")}, {letters("b")}, 2, 0, 0), SpecValidation);
  EXPECT_THROW(GeneratorSpec::ex_multi_set({letters("a")}, {letters("b")}, 0, 2, 0), SpecValidation);
  EXPECT_THROW(GeneratorSpec::ex_multi_set({letters("a")}, {letters("b")}, 0, 0, 3), SpecValidation);
  EXPECT_THROW(GeneratorSpec::subset(letters("aab"), 1), SpecValidation);
}

TEST(Validation, KExceedsSetSizeMessage) {
  try {
    GeneratorSpec::subset(letters("abcdefgh"), 9);
    FAIL();
  } catch (const SpecValidation& e) {
    EXPECT_EQ(e.detail(), "k exceeds set size");
  }
}

TEST(Validation, DisorderSupportsMustBeDisjoint) {
  EXPECT_THROW(DisorderSpec("x", {GeneratorSpec::identity(letters("ab")), GeneratorSpec::subset(letters("bc"), 1)}),
               SpecValidation);
  EXPECT_THROW(DisorderSpec("x", {}), SpecValidation);
}

TEST(Validation, SetsAreCanonicalized) {
  EXPECT_EQ(GeneratorSpec::subset({"c", "a", "b"}, 1), GeneratorSpec::subset({"a", "b", "c"}, 1));
}

// ---------------------------------------------------------------------------
// simplify_max

TEST(SimplifyMax, ThreeSharedSymptoms) {
  auto s1 = simplify_max(g1_example(), letters("dfh"));
  auto s2 = simplify_max(g2_example(), letters("dfh"));
  EXPECT_EQ(to_bracket(s1), "[{d, f, h}], [{a, b, c, e, g}, 2]");
  EXPECT_EQ(to_bracket(s2), "[{d, f, h}], [{e, g, i, j, k}, 1]");
  EXPECT_EQ(count_disorder(s1), 26u);
  EXPECT_EQ(count_disorder(s2), 31u);
}

TEST(SimplifyMax, FourSharedSymptoms) {
  auto s1 = simplify_max(g1_example(), letters("dfgh"));
  auto s2 = simplify_max(g2_example(), letters("dfgh"));
  EXPECT_EQ(to_bracket(s1), "[{d, f, g, h}], [{a, b, c, e}, 1]");
  EXPECT_EQ(to_bracket(s2), "[{d, f, g, h}], [{e, i, j, k}, 0]");
  EXPECT_EQ(count_disorder(s1), 15u);
  EXPECT_EQ(count_disorder(s2), 16u);
}

TEST(SimplifyMax, OverlapRewrites) {
  auto a = simplify_max(single("1", GeneratorSpec::subset(letters("abcd"), 3)), letters("cd"));
  auto b = simplify_max(single("2", GeneratorSpec::subset(letters("cdefg"), 4)), letters("cd"));
  EXPECT_EQ(to_bracket(a), "[{c, d}], [{a, b}, 1]");
  EXPECT_EQ(to_bracket(b), "[{c, d}], [{e, f, g}, 2]");
}

TEST(SimplifyMax, EmptyPresentIsIdentity) {
  auto d = g1_example();
  EXPECT_EQ(simplify_max(d, {}), d);
}

TEST(SimplifyMax, PresentOutsideSupportThrows) {
  std::vector<SymptomId> present{"z"};
  EXPECT_THROW(simplify_max(g1_example(), present), PresentOutsideSupport);
}

TEST(SimplifyMax, SoundnessAgainstBruteForce) {
  std::mt19937 rng(2024);
  auto pool = oracle::alphabet(10);
  for (int trial = 0; trial < 2000; ++trial) {
    auto d = oracle::random_disorder("d", pool, rng, 10);
    auto present = random_subset(d.support(), 4, rng);
    SCOPED_TRACE(to_bracket(d));
    std::set<NameSet> expected;
    for (const auto& q : oracle::enumerate(d))
      if (contains_all(q, present)) expected.insert(q);

    if (g3_exclusion_check(d, present)) {
      EXPECT_TRUE(expected.empty());
      EXPECT_THROW(simplify_max(d, present), Unsupported);
      continue;
    }
    auto simplified = simplify_max(d, present);
    ASSERT_EQ(oracle::enumerate(simplified), expected);
    ASSERT_EQ(count_disorder(simplified), expected.size());
  }
}

// ---------------------------------------------------------------------------
// simplify_min

TEST(SimplifyMin, OverlapExample) {
  auto [a, b] = simplify_min(single("1", GeneratorSpec::subset(letters("abcd"), 3)),
                             single("2", GeneratorSpec::subset(letters("cdefg"), 4)));
  EXPECT_EQ(to_bracket(a), "[{c, d}], [{a}]");
  EXPECT_EQ(to_bracket(b), "[{c, d}], [{e, f}]");
  EXPECT_EQ(a.label(), "1");
  EXPECT_EQ(b.label(), "2");
}

TEST(SimplifyMin, ZeroResidual) {
  auto [a, b] = simplify_min(single("1", GeneratorSpec::subset(letters("ab"), 1)),
                             single("2", GeneratorSpec::subset(letters("ac"), 1)));
  EXPECT_EQ(to_bracket(a), "[{a}], [{}, 0]");
  EXPECT_EQ(to_bracket(b), "[{a}], [{}, 0]");
}

TEST(SimplifyMin, IdenticalSpecs) {
  auto d = single("1", GeneratorSpec::subset(letters("ab"), 2));
  auto [a, b] = simplify_min(d, d);
  EXPECT_EQ(to_bracket(a), "[{a, b}], [{}, 0]");
  EXPECT_EQ(to_bracket(b), "[{a, b}], [{}, 0]");
}

TEST(SimplifyMin, RejectsOtherShapes) {
  auto g1 = single("1", GeneratorSpec::subset(letters("ab"), 1));
  auto g0 = single("2", GeneratorSpec::identity(letters("ab")));
  DisorderSpec two("3", {GeneratorSpec::subset(letters("a"), 1), GeneratorSpec::subset(letters("b"), 1)});
  EXPECT_THROW(simplify_min(g1, g0), Unsupported);
  EXPECT_THROW(simplify_min(two, g1), Unsupported);
}

// ---------------------------------------------------------------------------
// g3_exclusion_check and apply_absent

TEST(G3Exclusion, Examples) {
  auto d = single("x", GeneratorSpec::disjoint_combination({letters("a"), letters("b")}, {letters("c"), letters("d")}));
  EXPECT_TRUE(g3_exclusion_check(d, letters("ab")));
  EXPECT_FALSE(g3_exclusion_check(d, letters("ac")));
  EXPECT_FALSE(g3_exclusion_check(d, {}));
  bool found = false;
  for (const auto& q : oracle::enumerate(d)) found |= contains_all(q, letters("ac"));
  EXPECT_TRUE(found);
}

TEST(G3Exclusion, ImpliesNoCoveringProfile) {
  std::mt19937 rng(31);
  auto pool = oracle::alphabet(10);
  int fired = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto d = oracle::random_disorder("d", pool, rng, 10);
    auto present = random_subset(pool, 4, rng);
    if (!g3_exclusion_check(d, present)) continue;
    ++fired;
    for (const auto& q : oracle::enumerate(d)) ASSERT_FALSE(contains_all(q, present));
  }
  EXPECT_GT(fired, 20);
}

TEST(ApplyAbsent, Examples) {
  EXPECT_FALSE(apply_absent(single("x", GeneratorSpec::subset(letters("abc"), 3)), letters("c")));
  auto d = single("x", GeneratorSpec::subset(letters("abc"), 1));
  EXPECT_EQ(apply_absent(d, {}), d);
  auto g3 = single("x", GeneratorSpec::disjoint_combination({letters("a"), letters("b")}, {letters("c"), letters("d")}));
  auto reduced = apply_absent(g3, letters("a"));
  ASSERT_TRUE(reduced);
  EXPECT_EQ(*reduced,
            single("x", GeneratorSpec::disjoint_combination({letters("b")}, {letters("c"), letters("d")})));
}

TEST(ApplyAbsent, SoundnessAgainstBruteForce) {
  std::mt19937 rng(77);
  auto pool = oracle::alphabet(10);
  int infeasible = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    auto d = oracle::random_disorder("d", pool, rng, 10);
    auto absent = random_subset(pool, 4, rng);
    SCOPED_TRACE(to_bracket(d));
    std::set<NameSet> expected;
    for (const auto& q : oracle::enumerate(d))
      if (avoids_all(q, absent)) expected.insert(q);
    auto reduced = apply_absent(d, absent);
    if (!reduced) {
      ++infeasible;
      ASSERT_TRUE(expected.empty());
      continue;
    }
    ASSERT_EQ(oracle::enumerate(*reduced), expected);
    ASSERT_EQ(count_disorder(*reduced), expected.size());
  }
  EXPECT_GT(infeasible, 20);
}

TEST(Bracket, Rendering) {
  EXPECT_EQ(to_bracket(GeneratorSpec::subset(letters("abcd"), 3)), "[{a, b, c, d}, 3]");
  EXPECT_EQ(to_bracket(GeneratorSpec::identity(letters("cd"))), "[{c, d}]");
}
