#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "symrec/errors.hpp"
#include "symrec/io.hpp"
#include "symrec/session.hpp"

using namespace symrec;

namespace {

constexpr auto present = ObservationState::present;
constexpr auto absent = ObservationState::absent;

struct Fixture : ::testing::Test {
  DatasetStore datasets;
  SessionStore sessions{datasets};
  void SetUp() override { datasets.add(Dataset::from_matrix("demo", oracle::example_matrix())); }
};

}  // namespace

TEST(SessionTransitions, RevisionBumpsOnlyOnChange) {
  Session s{"s", "d", {}, 0};
  s = session_observe(s, {"a", present});
  EXPECT_EQ(s.revision, 1u);
  s = session_observe(s, {"a", present});
  EXPECT_EQ(s.revision, 1u);
  EXPECT_THROW(session_observe(s, {"a", absent}), ContradictoryObservation);
  s = session_observe(s, {"a", absent}, true);
  EXPECT_EQ(s.revision, 2u);
  s = session_retract(s, "a");
  EXPECT_EQ(s.revision, 3u);
  s = session_retract(s, "a");
  EXPECT_EQ(s.revision, 3u);
  EXPECT_TRUE(s.observations.empty());
}

TEST_F(Fixture, WorkedExampleThroughSession) {
  auto s = sessions.create("demo");
  for (const char* x : {"S5", "S6", "S7", "S8"}) s = sessions.observe(s.id, {x, present});
  EXPECT_EQ(s.revision, 4u);
  auto snap = sessions.recommend(s.id);
  EXPECT_EQ(snap.recommendation.candidates, (std::vector<std::string>{"D1", "D2", "D3"}));
  EXPECT_EQ(snap.recommendation.informative.s_inter, (std::vector<std::string>{"S1", "S3", "S4", "S9"}));
  EXPECT_EQ(snap.session, s);
}

TEST_F(Fixture, FreshSessionIsUnfiltered) {
  auto s = sessions.create("demo");
  EXPECT_EQ(s.revision, 0u);
  auto rec = sessions.recommend(s.id).recommendation;
  EXPECT_EQ(rec.candidates.size(), 4u);
  EXPECT_TRUE(rec.excluded.empty());
}

TEST_F(Fixture, Errors) {
  EXPECT_THROW(sessions.create("nope"), UnknownDataset);
  EXPECT_THROW(sessions.get("nope"), UnknownSession);
  auto s = sessions.create("demo");
  EXPECT_THROW(sessions.observe(s.id, {"zz", present}, false, true), UnknownSymptom);
  EXPECT_NO_THROW(sessions.observe(s.id, {"zz", present}));
  sessions.observe(s.id, {"S1", present});
  EXPECT_THROW(sessions.observe(s.id, {"S1", absent}), ContradictoryObservation);
  EXPECT_THROW(datasets.add(Dataset::from_matrix("demo", oracle::example_matrix())), InvalidArgument);
}

TEST_F(Fixture, RetractionRestoresRecommendation) {
  std::mt19937 rng(3);
  auto symptoms = oracle::example_symptoms();
  for (int trial = 0; trial < 200; ++trial) {
    auto s = sessions.create("demo");
    for (int i = 0; i < 3; ++i) {
      const auto& x = symptoms[rng() % symptoms.size()];
      if (!sessions.get(s.id).observations.state_of(x)) sessions.observe(s.id, {x, rng() % 2 ? present : absent});
    }
    auto before = sessions.recommend(s.id).recommendation;
    const auto& x = symptoms[rng() % symptoms.size()];
    if (sessions.get(s.id).observations.state_of(x)) continue;
    sessions.observe(s.id, {x, rng() % 2 ? present : absent});
    sessions.retract(s.id, x);
    ASSERT_EQ(sessions.recommend(s.id).recommendation, before);
  }
}

TEST_F(Fixture, CandidatesNeverGrow) {
  std::mt19937 rng(4);
  auto symptoms = oracle::example_symptoms();
  for (int trial = 0; trial < 100; ++trial) {
    auto s = sessions.create("demo");
    auto prev = sessions.recommend(s.id).recommendation.candidates;
    for (int i = 0; i < 5; ++i) {
      const auto& x = symptoms[rng() % symptoms.size()];
      if (sessions.get(s.id).observations.state_of(x)) continue;
      sessions.observe(s.id, {x, rng() % 2 ? present : absent});
      auto now = sessions.recommend(s.id).recommendation.candidates;
      for (const auto& c : now) ASSERT_NE(std::find(prev.begin(), prev.end(), c), prev.end());
      prev = now;
    }
  }
}

TEST_F(Fixture, ConcurrentObservationsAreNotLost) {
  auto s = sessions.create("demo");
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 50; ++i) sessions.observe(s.id, {"x" + std::to_string(t * 50 + i), absent});
    });
  for (auto& th : threads) th.join();
  auto final = sessions.get(s.id);
  EXPECT_EQ(final.observations.size(), 400u);
  EXPECT_EQ(final.revision, 400u);
}

TEST_F(Fixture, SnapshotRestore) {
  auto a = sessions.create("demo");
  sessions.observe(a.id, {"S5", present});
  sessions.observe(a.id, {"S2", absent});
  auto snap = sessions.snapshot();

  SessionStore other(datasets);
  other.restore(snap);
  EXPECT_EQ(other.get(a.id), sessions.get(a.id));
  EXPECT_EQ(other.recommend(a.id).recommendation, sessions.recommend(a.id).recommendation);

  for (const auto& s : snap) EXPECT_EQ(io::session_from_json(io::session_to_json(s)), s);

  DatasetStore empty;
  SessionStore orphan(empty);
  EXPECT_THROW(orphan.restore(snap), UnknownDataset);
}

TEST(DatasetStore, NextIdSkipsTaken) {
  DatasetStore store;
  store.add(Dataset::from_matrix("ds-1", oracle::example_matrix()));
  EXPECT_EQ(store.next_id(), "ds-2");
  EXPECT_EQ(store.list().size(), 1u);
}
