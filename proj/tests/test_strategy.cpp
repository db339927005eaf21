#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "swarmopt/objective.hpp"
#include "swarmopt/strategy.hpp"

namespace swarmopt {
namespace {

Trial completed(std::uint64_t id, Point p, double value) {
  Trial t;
  t.trial_id = id;
  t.point = std::move(p);
  t.value = value;
  t.state = TrialState::Completed;
  return t;
}

void expect_code(ErrorCode code, const auto& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Strategy, TellRejectsUnknownAndDuplicate) {
  RandomStrategy s(bench::ackley_space(2), 1);
  const auto pts = s.initial_points(2);
  EXPECT_EQ(s.pending(), 2u);
  expect_code(ErrorCode::UnknownTrial, [&] { s.tell(completed(0, Point{{9.9, 9.9}}, 1.0)); });
  s.tell(completed(0, pts[0], 1.0));
  expect_code(ErrorCode::DuplicateTell, [&] { s.tell(completed(0, pts[1], 1.0)); });
  EXPECT_EQ(s.pending(), 1u);
  EXPECT_EQ(s.completed(), 1u);
}

TEST(Strategy, BestPrefersEarliestOnTies) {
  RandomStrategy s(bench::ackley_space(1), 2);
  const auto pts = s.initial_points(3);
  expect_code(ErrorCode::NoCompletedTrials, [&] { s.best(); });
  s.tell(completed(5, pts[0], 2.0));
  s.tell(completed(3, pts[1], 1.0));
  s.tell(completed(4, pts[2], 1.0));
  const auto b = s.best();
  EXPECT_EQ(b.trial_id, 3u);
  EXPECT_EQ(b.value, 1.0);
}

TEST(Strategy, BestIgnoresFailuresWhenPossible) {
  RandomStrategy s(bench::ackley_space(1), 2);
  const auto pts = s.initial_points(2);
  s.tell(completed(0, pts[0], INFINITY));
  s.tell(completed(1, pts[1], 7.0));
  EXPECT_EQ(s.best().trial_id, 1u);
}

TEST(RandomStrategy, SameSeedSameSequence) {
  RandomStrategy a(bench::gnn_space(), 42), b(bench::gnn_space(), 42), c(bench::gnn_space(), 43);
  EXPECT_EQ(a.initial_points(5), b.initial_points(5));
  EXPECT_EQ(a.ask(7), b.ask(7));
  EXPECT_NE(a.ask(3), c.ask(3));
}

TEST(GridStrategy, VisitsEveryCellOnce) {
  GridStrategy s(bench::satellite_space(), 0);
  std::set<std::vector<double>> seen;
  for (const auto& p : s.initial_points(10)) seen.insert(p.coords);
  for (;;) {
    const auto batch = s.ask(7);
    if (batch.empty()) break;
    for (const auto& p : batch) EXPECT_TRUE(seen.insert(p.coords).second);
  }
  EXPECT_EQ(seen.size(), 270u);
  EXPECT_EQ(s.remaining(), 0u);
}

TEST(GridStrategy, ShortFinalBatchAndExhaustion) {
  GridStrategy s(SearchSpace({Dimension::discrete("a", {1, 2, 3})}), 0);
  EXPECT_EQ(s.initial_points(2).size(), 2u);
  EXPECT_EQ(s.ask(5).size(), 1u);
  EXPECT_TRUE(s.ask(5).empty());
  GridStrategy t(SearchSpace({Dimension::discrete("a", {1, 2})}), 0);
  expect_code(ErrorCode::GridExhausted, [&] { t.initial_points(3); });
}

TEST(GridStrategy, RejectsContinuousSpace) {
  expect_code(ErrorCode::ContinuousDimensionInGrid, [&] { GridStrategy(bench::ackley_space(2), 0); });
}

TEST(BayesianStrategy, DefaultsToMeanLie) {
  EXPECT_EQ(BayesianSearch{}.lie, acquisition::LieStrategy::ConstantLiarMean);
  EXPECT_EQ(BayesianSearch{}.acquisition.kind, acquisition::Kind::ExpectedImprovement);
}

TEST(BayesianStrategy, NeedsObservationsBeforeAsk) {
  BayesianStrategy s(bench::ackley_space(2), 3, {});
  s.initial_points(2);
  expect_code(ErrorCode::NoCompletedTrials, [&] { s.ask(1); });
  EXPECT_FALSE(s.model().has_value());
}

TEST(BayesianStrategy, RefitsOnEveryTell) {
  BayesianStrategy s(bench::ackley_space(2), 3, {});
  const auto pts = s.initial_points(4);
  for (std::uint64_t i = 0; i < 4; ++i) {
    s.tell(completed(i, pts[i], bench::ackley(pts[i].coords)));
    ASSERT_TRUE(s.model().has_value());
    EXPECT_EQ(s.model()->size(), i + 1);
  }
  const auto batch = s.ask(3);
  ASSERT_EQ(batch.size(), 3u);
  for (const auto& p : batch) EXPECT_TRUE(s.space().contains(p));
  EXPECT_EQ(s.pending(), 3u);
}

TEST(BayesianStrategy, FailedEvaluationsKeepModelFinite) {
  BayesianStrategy s(bench::ackley_space(2), 8, {});
  const auto pts = s.initial_points(3);
  s.tell(completed(0, pts[0], 1.0));
  s.tell(completed(1, pts[1], INFINITY));
  s.tell(completed(2, pts[2], 3.0));
  EXPECT_TRUE(s.model()->dual_weights().allFinite());
  EXPECT_EQ(s.model()->observed_targets()[1], 3.0 + 2.0);
  EXPECT_EQ(s.ask(2).size(), 2u);
}

TEST(PenalizeFailures, Examples) {
  EXPECT_EQ(penalize_failures(std::vector<double>{1.0, INFINITY, 1.5}), (std::vector<double>{1.0, 2.5, 1.5}));
  EXPECT_EQ(penalize_failures(std::vector<double>{1.0, NAN, 11.0}), (std::vector<double>{1.0, 21.0, 11.0}));
  EXPECT_EQ(penalize_failures(std::vector<double>{INFINITY}), (std::vector<double>{0.0}));
}

TEST(MakeStrategy, DispatchesOnKind) {
  EXPECT_NE(dynamic_cast<RandomStrategy*>(make_strategy(RandomSearch{}, bench::ackley_space(1), 0).get()), nullptr);
  EXPECT_NE(dynamic_cast<GridStrategy*>(make_strategy(GridSearch{}, bench::satellite_space(), 0).get()), nullptr);
  EXPECT_NE(dynamic_cast<BayesianStrategy*>(make_strategy(BayesianSearch{}, bench::ackley_space(1), 0).get()),
            nullptr);
}

}  // namespace
}  // namespace swarmopt
