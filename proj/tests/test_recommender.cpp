#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "oracles.hpp"
#include "symrec/errors.hpp"
#include "symrec/io.hpp"
#include "symrec/recommender.hpp"

using namespace symrec;

namespace {

std::vector<SymptomId> names(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

std::vector<SymptomId> letters(const std::string& s) {
  std::vector<SymptomId> out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

Dataset example() { return Dataset::from_matrix("demo", oracle::example_matrix()); }

std::vector<DisorderSpec> overlapping_specs() {
  return {DisorderSpec("g1", {GeneratorSpec::subset(letters("abcdefgh"), 5)}),
          DisorderSpec("g2", {GeneratorSpec::subset(letters("defghijk"), 4)})};
}

Recommendation with_path(Recommendation r, RecommendationPath p) {
  r.path = p;
  return r;
}

}  // namespace

TEST(Recommend, WorkedExample) {
  auto rec = recommend(example(), ObservationSet(names({"S5", "S6", "S7", "S8"}), {}));
  EXPECT_EQ(rec.candidates, names({"D1", "D2", "D3"}));
  EXPECT_EQ(rec.excluded, names({"D4"}));
  EXPECT_EQ(rec.group_sizes, (std::vector<std::uint64_t>{3, 2, 1}));
  EXPECT_EQ(rec.informative.s_inter, names({"S1", "S3", "S4", "S9"}));
  EXPECT_EQ(rec.columns, names({"S1", "S2", "S3", "S4", "S9", "S10"}));
  EXPECT_EQ(rec.frequencies[1][3], (Frequency{1, 2}));
  EXPECT_EQ(*rec.pairs.find("S1"), (std::vector<DisorderPair>{{"D1", "D2"}, {"D3", "D2"}}));
  EXPECT_EQ(rec.path, RecommendationPath::materialized);
  EXPECT_FALSE(rec.diagnosis_complete);
  EXPECT_TRUE(rec.warnings.empty());
}

TEST(Recommend, NoObservations) {
  auto rec = recommend(example(), {});
  EXPECT_EQ(rec.candidates, names({"D1", "D2", "D3", "D4"}));
  EXPECT_TRUE(rec.excluded.empty());
  EXPECT_EQ(rec.columns.size(), 10u);
  EXPECT_EQ(rec.group_sizes, (std::vector<std::uint64_t>{5, 3, 2, 1}));
}

TEST(Recommend, PresentAndAbsentNarrowToOne) {
  auto rec = recommend(example(), ObservationSet(names({"S5", "S6", "S7", "S8", "S1"}), names({"S4"})));
  EXPECT_EQ(rec.candidates, names({"D1"}));
  EXPECT_EQ(rec.group_sizes, std::vector<std::uint64_t>{3});
  EXPECT_TRUE(rec.diagnosis_complete);
  EXPECT_EQ(rec.excluded, names({"D2", "D3", "D4"}));
}

TEST(Recommend, UnknownSymptomsWarn) {
  auto present = recommend(example(), ObservationSet(names({"zz"}), {}));
  EXPECT_TRUE(present.no_candidates());
  ASSERT_EQ(present.warnings.size(), 1u);
  auto absent = recommend(example(), ObservationSet({}, names({"zz"})));
  EXPECT_EQ(absent.candidates.size(), 4u);
  EXPECT_EQ(absent.warnings.size(), 1u);
}

TEST(Recommend, NoCandidatesIsLegal) {
  auto rec = recommend(example(), ObservationSet(names({"S2", "S4"}), {}));
  EXPECT_TRUE(rec.no_candidates());
  EXPECT_EQ(rec.excluded.size(), 4u);
  EXPECT_TRUE(rec.informative.s_inter.empty());
}

TEST(Recommend, NeedsMatrix) {
  EXPECT_THROW(recommend(Dataset::from_specs("s", overlapping_specs()), {}), InvalidArgument);
}

TEST(RecommendLazy, CaseOneMaterializesConditionedProfiles) {
  auto ds = Dataset::from_specs("s", overlapping_specs());
  auto rec = recommend_lazy(ds, ObservationSet(letters("dfh"), {}));
  EXPECT_EQ(rec.candidates, names({"g1", "g2"}));
  EXPECT_EQ(rec.group_sizes, (std::vector<std::uint64_t>{26, 31}));
  EXPECT_EQ(rec.path, RecommendationPath::lazy_generated);
  // Budget 57 = 26 + 31 suffices; the unconditioned 93 + 163 would not.
  EXPECT_NO_THROW(recommend_lazy(ds, ObservationSet(letters("dfh"), {}), 57));
  EXPECT_THROW(recommend_lazy(ds, ObservationSet(letters("dfh"), {}), 56), Overbudget);
  EXPECT_THROW(recommend_lazy(ds, {}, 255), Overbudget);
}

TEST(RecommendLazy, OverbudgetNamesDisorder) {
  try {
    recommend_lazy(Dataset::from_specs("s", overlapping_specs()), {}, 100);
    FAIL();
  } catch (const Overbudget& e) {
    EXPECT_EQ(e.disorder(), "g2");
  }
}

TEST(RecommendLazy, EmptyObservationsMatchEager) {
  auto specs = overlapping_specs();
  auto eager = recommend(Dataset::from_matrix("m", generate_matrix(specs)), {});
  auto lazy = recommend_lazy(Dataset::from_specs("s", specs), {});
  EXPECT_EQ(with_path(lazy, RecommendationPath::materialized), eager);
}

TEST(RecommendLazy, ExcludesWhenPresentOutsideSupport) {
  auto rec = recommend_lazy(Dataset::from_specs("s", overlapping_specs()), ObservationSet(letters("a"), {}));
  EXPECT_EQ(rec.candidates, names({"g1"}));
  EXPECT_EQ(rec.excluded, names({"g2"}));
}

TEST(RecommendAuto, PicksPath) {
  EXPECT_EQ(recommend_auto(example(), {}).path, RecommendationPath::materialized);
  EXPECT_EQ(recommend_auto(Dataset::from_specs("s", overlapping_specs()), {}).path, RecommendationPath::lazy_generated);
}

TEST(GenerateMatrix, CountsAndBudget) {
  auto m = generate_matrix(overlapping_specs());
  EXPECT_EQ(m.rows(), 93u + 163u);
  EXPECT_EQ(m.space().symptoms(), oracle::alphabet(11));
  EXPECT_THROW(generate_matrix(overlapping_specs(), 255), Overbudget);
}

TEST(Dataset, FromBothValidates) {
  auto specs = overlapping_specs();
  EXPECT_NO_THROW(Dataset::from_both("b", generate_matrix(specs), specs));
  std::vector<DisorderSpec> other{specs[0], DisorderSpec("g2", {GeneratorSpec::subset(letters("defghijk"), 5)})};
  EXPECT_ANY_THROW(Dataset::from_both("b", generate_matrix(specs), other));
  EXPECT_THROW(Dataset::from_specs("e", {}), EmptyCatalog);
}

// The eager pipeline (generate everything, then filter) is the oracle for the
// lazy one.
TEST(RecommendProperty, LazyEqualsEager) {
  std::mt19937 rng(4242);
  int trials = 0, nonempty = 0;
  while (trials < 1500) {
    auto pool = oracle::alphabet(2 + rng() % 11);
    std::vector<DisorderSpec> specs;
    std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) specs.push_back(oracle::random_disorder("D" + std::to_string(i), pool, rng));
    ObservationSet obs;
    std::size_t k = rng() % 5;
    for (std::size_t i = 0; i < k; ++i) {
      auto s = rng() % 10 == 0 ? std::string("zz") : pool[rng() % pool.size()];
      if (!obs.state_of(s)) obs.insert({s, rng() % 2 ? ObservationState::present : ObservationState::absent});
    }
    ++trials;
    auto eager = recommend(Dataset::from_matrix("m", generate_matrix(specs)), obs);
    auto lazy = recommend_lazy(Dataset::from_specs("s", specs), obs);
    ASSERT_EQ(lazy.path, RecommendationPath::lazy_generated);
    ASSERT_EQ(io::serialize_recommendation(with_path(lazy, eager.path)), io::serialize_recommendation(eager));
    ASSERT_EQ(with_path(lazy, eager.path), eager);
    nonempty += !eager.no_candidates();
  }
  EXPECT_GT(nonempty, trials / 4);
}

TEST(RecommendProperty, CandidatesShrinkAsObservationsAccumulate) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto pool = oracle::alphabet(10);
    std::vector<DisorderSpec> specs;
    for (int i = 0; i < 4; ++i) specs.push_back(oracle::random_disorder("D" + std::to_string(i), pool, rng));
    auto ds = Dataset::from_specs("s", specs);
    ObservationSet obs;
    auto prev = recommend_lazy(ds, obs).candidates;
    for (int step = 0; step < 4; ++step) {
      const auto& s = pool[rng() % pool.size()];
      if (obs.state_of(s)) continue;
      obs.insert({s, rng() % 2 ? ObservationState::present : ObservationState::absent});
      auto now = recommend_lazy(ds, obs).candidates;
      for (const auto& c : now) ASSERT_NE(std::find(prev.begin(), prev.end(), c), prev.end());
      prev = now;
    }
  }
}

TEST(RecommendProperty, Deterministic) {
  auto ds = Dataset::from_specs("s", overlapping_specs());
  ObservationSet obs(letters("dg"), letters("k"));
  auto a = io::serialize_recommendation(recommend_lazy(ds, obs));
  auto b = io::serialize_recommendation(recommend_lazy(ds, obs));
  EXPECT_EQ(a, b);
}

TEST(RecommendScale, LargeMaterializedMatrix) {
  std::mt19937_64 rng(1);
  std::vector<std::string> syms;
  for (int i = 0; i < 64; ++i) syms.push_back("s" + std::to_string(i));
  ProfileMatrix::Builder b{SymptomSpace(syms)};
  for (int r = 0; r < 100000; ++r) {
    std::uint64_t w = rng();
    b.add_row("D" + std::to_string(r % 8), std::span<const Profile::Word>(&w, 1));
  }
  auto ds = Dataset::from_matrix("big", std::move(b).build());
  auto t0 = std::chrono::steady_clock::now();
  auto rec = recommend(ds, ObservationSet(names({"s3"}), names({"s7"})));
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(rec.candidates.size(), 8u);
  EXPECT_LT(ms, 1000.0);
}
