#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "swarmopt/objective.hpp"
#include "swarmopt/space.hpp"

namespace swarmopt {
namespace {

struct FixedSampler {
  double u = 0.5;
  std::size_t idx = 0;
  double uniform() { return u; }
  std::size_t index(std::size_t) { return idx; }
};

SearchSpace one(Dimension d) { return SearchSpace({std::move(d)}); }

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> v;
  for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
  return v;
}

TEST(Space, RejectsInvalidDimensions) {
  EXPECT_THROW(Dimension::continuous("x", 1.0, 1.0), Error);
  EXPECT_THROW(Dimension::continuous("x", 0.0, INFINITY), Error);
  EXPECT_THROW(Dimension::discrete("x", {}), Error);
  EXPECT_THROW(Dimension::discrete("x", {1.0, 1.0}), Error);
  EXPECT_THROW(Dimension::discrete("x", {2.0, 1.0}), Error);
  EXPECT_THROW(SearchSpace({}), Error);
  EXPECT_THROW(SearchSpace({Dimension::continuous("x", 0, 1), Dimension::continuous("x", 0, 2)}), Error);
}

TEST(Space, SampleUniformWithFixedDraws) {
  FixedSampler half{0.5, 0};
  EXPECT_EQ(sample_uniform(one(Dimension::continuous("x", 0, 10)), half), Point{{5.0}});
  EXPECT_EQ(sample_uniform(one(Dimension::discrete("sats", {2, 3, 4, 5, 6})), half), Point{{2.0}});
}

TEST(Space, SampleUniformMeanMatchesUniformLaw) {
  Rng rng(7);
  const auto space = one(Dimension::continuous("x", 0, 1));
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) sum += sample_uniform(space, rng).coords[0];
  const double mean = sum / 10000.0;
  EXPECT_GE(mean, 0.47);
  EXPECT_LE(mean, 0.53);
}

TEST(Space, SampleUniformAlwaysInSpace) {
  Rng rng(11);
  const SearchSpace space({Dimension::continuous("a", -5, 5), Dimension::discrete("b", {1, 2, 4, 8}),
                           Dimension::continuous("c", 1e-3, 2e-3)});
  for (int i = 0; i < 100000; ++i) ASSERT_TRUE(space.contains(sample_uniform(space, rng)));
}

TEST(Space, GridOfSatelliteSpaceHas270DistinctCells) {
  const auto space = bench::satellite_space();
  const auto cells = grid_points(space);
  ASSERT_EQ(cells.size(), 270u);
  std::set<std::vector<double>> distinct;
  for (const auto& c : cells) {
    EXPECT_TRUE(space.contains(c));
    distinct.insert(c.coords);
  }
  EXPECT_EQ(distinct.size(), 270u);
}

TEST(Space, GridEdgeCases) {
  EXPECT_EQ(grid_points(one(Dimension::discrete("x", {1}))), std::vector<Point>{Point{{1}}});
  const SearchSpace two({Dimension::discrete("a", {0, 1}), Dimension::discrete("b", {0, 1})});
  const std::vector<Point> expected{Point{{0, 0}}, Point{{0, 1}}, Point{{1, 0}}, Point{{1, 1}}};
  EXPECT_EQ(grid_points(two), expected);
}

TEST(Space, GridRejectsContinuousDimension) {
  try {
    grid_points(SearchSpace({Dimension::discrete("a", {0, 1}), Dimension::continuous("b", 0, 1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContinuousDimensionInGrid);
  }
}

TEST(Space, NormalizeExamples) {
  EXPECT_DOUBLE_EQ(normalize(one(Dimension::continuous("x", 0, 10)), Point{{5}}).coords[0], 0.5);
  EXPECT_DOUBLE_EQ(normalize(one(Dimension::discrete("w", range(1, 10, 1))), Point{{1}}).coords[0], 0.0);
  EXPECT_DOUBLE_EQ(normalize(one(Dimension::continuous("x", -5, 5)), Point{{-5}}).coords[0], 0.0);
  EXPECT_DOUBLE_EQ(normalize(one(Dimension::discrete("s", {3})), Point{{3}}).coords[0], 0.5);
}

TEST(Space, NormalizeRejectsOutsidePoints) {
  const auto space = one(Dimension::discrete("s", {1, 2, 3}));
  try {
    normalize(space, Point{{2.5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointOutOfSpace);
  }
  EXPECT_THROW(normalize(one(Dimension::continuous("x", 0, 1)), Point{{1.5}}), Error);
  EXPECT_THROW(normalize(one(Dimension::continuous("x", 0, 1)), Point{{0.5, 0.5}}), Error);
}

TEST(Space, DenormalizeExamples) {
  EXPECT_DOUBLE_EQ(denormalize(one(Dimension::continuous("x", 0, 10)), UnitPoint{{0.25}}).coords[0], 2.5);
  const auto p2p = one(Dimension::discrete("p2p", range(100, 500, 1)));
  ASSERT_EQ(p2p[0].as_discrete().values.size(), 401u);
  EXPECT_EQ(denormalize(p2p, UnitPoint{{0.0}}).coords[0], 100.0);
  // round(0.6 * 4) = 2
  EXPECT_EQ(denormalize(one(Dimension::discrete("steps", {5, 7, 9, 11, 13})), UnitPoint{{0.6}}).coords[0], 9.0);
}

TEST(Space, DenormalizeRejectsOutOfRange) {
  try {
    denormalize(one(Dimension::continuous("x", 0, 1)), UnitPoint{{1.01}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnitCoordinateOutOfRange);
  }
  EXPECT_THROW(denormalize(one(Dimension::continuous("x", 0, 1)), UnitPoint{{NAN}}), Error);
}

TEST(Space, RoundTripProperty) {
  Rng rng(3);
  const SearchSpace space({Dimension::continuous("a", -1e3, 7.5), Dimension::discrete("b", {-2, 0.5, 9, 100}),
                           Dimension::discrete("c", {42}), Dimension::continuous("d", 1e-6, 1e-5)});
  for (int i = 0; i < 20000; ++i) {
    const Point p = sample_uniform(space, rng);
    const Point back = denormalize(space, normalize(space, p));
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (space[j].is_discrete()) {
        ASSERT_EQ(back.coords[j], p.coords[j]);
      } else {
        ASSERT_NEAR(back.coords[j], p.coords[j], 1e-12 * std::max(1.0, std::abs(p.coords[j])));
      }
    }
  }
}

TEST(Space, GridPointAtInvertsEnumeration) {
  const auto space = bench::gnn_space();
  EXPECT_EQ(space.grid_size(), 401u * 10u * 41u * 5u);
  EXPECT_EQ(grid_point_at(space, 0), (Point{{100, 1, 20, 5}}));
  EXPECT_EQ(grid_point_at(space, 1), (Point{{100, 1, 20, 7}}));
  EXPECT_EQ(grid_point_at(space, space.grid_size() - 1), (Point{{500, 10, 60, 13}}));
}

}  // namespace
}  // namespace swarmopt
