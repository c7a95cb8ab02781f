// Copyright 2026 The cefix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "cefix/error.hpp"
#include "cefix/instances.hpp"
#include "cefix/metric.hpp"

namespace cefix {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point random_point(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> c(dim);
  for (auto& v : c) v = u(rng);
  return Point(std::move(c));
}

TEST(Distance, RealLineAbsoluteDifference) {
  EXPECT_EQ(distance(MetricSpace::real_line(), Point{3.0}, Point{-2.0}), 5.0);
}

TEST(Distance, SumMetricAddsCoordinates) {
  EXPECT_EQ(distance(MetricSpace::sum_metric(2), Point{0.0, 0.0}, Point{1.0, 2.0}), 3.0);
}

TEST(Distance, SelfDistanceIsZero) {
  std::mt19937_64 rng(3);
  for (const auto& s : {MetricSpace::real_line(), MetricSpace::sum_metric(3),
                        MetricSpace::euclidean(2)}) {
    const Point p = random_point(rng, s.dim());
    EXPECT_EQ(s.distance(p, p), 0.0) << s.name();
  }
}

TEST(Distance, DimensionMismatchIsInvalidInput) {
  try {
    MetricSpace::euclidean(2).distance(Point{1.0}, Point{1.0, 2.0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
}

TEST(MetricAxioms, HoldOnRandomTriplesForEveryBuiltInSpace) {
  const std::vector<MetricSpace> spaces{
      MetricSpace::real_line(), MetricSpace::sum_metric(2), MetricSpace::sum_metric(4),
      MetricSpace::euclidean(2), MetricSpace::euclidean(3),
      MetricSpace::product(MetricSpace::euclidean(2), MetricSpace::real_line())};
  std::mt19937_64 rng(20260101);
  for (const auto& s : spaces) {
    for (int i = 0; i < 10000; ++i) {
      const Point x = random_point(rng, s.dim());
      const Point y = random_point(rng, s.dim());
      const Point z = random_point(rng, s.dim());
      const double xy = s.distance(x, y);
      ASSERT_GE(xy, 0.0);
      ASSERT_EQ(s.distance(x, x), 0.0);
      ASSERT_EQ(xy, s.distance(y, x)) << s.name();
      ASSERT_LE(s.distance(x, z), xy + s.distance(y, z) + 1e-12) << s.name();
    }
  }
}

TEST(MetricAxioms, ProductDistanceIsExactSum) {
  const auto e2 = MetricSpace::euclidean(2);
  const auto r = MetricSpace::real_line();
  const auto prod = MetricSpace::product(e2, r);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Point a = random_point(rng, 2), b = random_point(rng, 2);
    const Point c = random_point(rng, 1), d = random_point(rng, 1);
    ASSERT_EQ(prod.distance(concat(a, c), concat(b, d)), e2.distance(a, b) + r.distance(c, d));
  }
}

TEST(PointText, RoundTripPreservesDistance) {
  const auto s = MetricSpace::euclidean(3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const Point p{u(rng), u(rng) * 1e-9, u(rng) * 1e9};
    const Point q = parse_point(to_text(p));
    ASSERT_EQ(p, q);
    ASSERT_LE(s.distance(p, q), 1e-12);
  }
}

TEST(PointText, CElementRoundTrip) {
  const CElement c(std::vector<CPart>{Point{1.5, -2.0}, Atom{1}, Point{0.1}});
  EXPECT_EQ(parse_celement(to_text(c)), c);
  EXPECT_EQ(parse_celement(to_text(CElement(Atom{0}))), CElement(Atom{0}));
}

TEST(SetDistance, ExactValueReturnedUnchanged) {
  const Estimate d = set_distance(example1_pair(), 10, 1);
  EXPECT_EQ(d.value, 1.0);
  EXPECT_TRUE(d.exact);
}

TEST(SetDistance, OverlappingExactIsZero) {
  const SetPair p{MetricSpace::real_line(), make_interval(Interval::closed(0, 1)),
                  make_interval(Interval::closed(0, 1)), Estimate{0.0, true}};
  const Estimate d = set_distance(p, 10, 1);
  EXPECT_EQ(d.value, 0.0);
  EXPECT_TRUE(d.exact);
}

TEST(SetDistance, EstimatedGapIsCloseUpperBound) {
  const SetPair p{MetricSpace::real_line(), make_interval(Interval::closed(0, 1)),
                  make_interval(Interval::closed(3, 4)), std::nullopt};
  // Dense-grid reference over both intervals.
  double oracle = kInf;
  for (int i = 0; i <= 1000; ++i) {
    for (int j = 0; j <= 1000; j += 100) {
      oracle = std::min(oracle, std::abs((3.0 + j / 1000.0) - i / 1000.0));
    }
  }
  ASSERT_EQ(oracle, 2.0);
  const Estimate d = set_distance(p, 10000, 1);
  EXPECT_FALSE(d.exact);
  EXPECT_GE(d.value, oracle);
  EXPECT_LE(d.value, oracle + 1e-3);
}

TEST(SetDistance, EstimateNeverUndershootsExactOnBuiltIns) {
  for (const auto& name : pair_instance_names()) {
    const PairInstance inst = pair_instance(name);
    ASSERT_TRUE(inst.pair.dist.has_value());
    SetPair est = inst.pair;
    est.dist.reset();
    const Estimate d = set_distance(est, 2000, 7);
    EXPECT_GE(d.value, inst.pair.dist->value - 1e-9) << name;
  }
}

TEST(SetDistance, EmptySamplerIsEstimationFailure) {
  const Region empty("empty", [](const Point&) { return false; },
                     [](std::uint64_t, std::size_t) { return std::vector<Point>{}; }, true);
  const SetPair p{MetricSpace::real_line(), empty, empty, std::nullopt};
  try {
    set_distance(p, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEstimationFailure);
  }
}

TEST(ProductSpace, ExampleTimesItselfHasDistanceTwo) {
  const SetPair p = product_space(example1_pair(), example1_pair());
  ASSERT_TRUE(p.dist.has_value());
  EXPECT_EQ(p.dist->value, 2.0);
  EXPECT_TRUE(p.dist->exact);
}

TEST(ProductSpace, SingletonGapsAdd) {
  const auto r = MetricSpace::real_line();
  const SetPair p1{r, make_singleton(Point{0.0}), make_singleton(Point{5.0}), Estimate{5, true}};
  const SetPair p2{r, make_singleton(Point{0.0}), make_singleton(Point{7.0}), Estimate{7, true}};
  const SetPair p = product_space(p1, p2);
  EXPECT_EQ(p.dist->value, 12.0);
  EXPECT_EQ(p.space.distance(Point{0.0, 0.0}, Point{5.0, 7.0}), 12.0);
  EXPECT_TRUE(p.a.contains(Point{0.0, 0.0}));
  EXPECT_FALSE(p.a.contains(Point{0.0, 1.0}));
}

TEST(ProductSpace, EstimatedFlagPropagates) {
  const auto r = MetricSpace::real_line();
  const SetPair exact{r, make_singleton(Point{0.0}), make_singleton(Point{5.0}),
                      Estimate{5, true}};
  const SetPair est{r, make_singleton(Point{0.0}), make_singleton(Point{7.0}),
                    Estimate{7, false}};
  const SetPair p = product_space(exact, est);
  ASSERT_TRUE(p.dist.has_value());
  EXPECT_FALSE(p.dist->exact);
}

TEST(SampleRegion, MembersAreNonnegative) {
  const Region a = make_interval(Interval{0.0, kInf, true, false}, 0.0, 100.0);
  const auto pts = sample_region(a, 3, 7);
  ASSERT_EQ(pts.size(), 3u);
  for (const auto& p : pts) {
    EXPECT_GE(p.value(), 0.0);
    EXPECT_TRUE(a.contains(p));
  }
}

TEST(SampleRegion, ZeroCountIsEmpty) {
  EXPECT_TRUE(sample_region(make_interval(Interval::closed(0, 1)), 0, 1).empty());
}

TEST(SampleRegion, SameSeedSameDraw) {
  const Region c = make_circle(Point{0.0, 0.0}, 1.0);
  EXPECT_EQ(sample_region(c, 50, 11), sample_region(c, 50, 11));
  EXPECT_NE(sample_region(c, 50, 11), sample_region(c, 50, 12));
  for (const auto& p : sample_region(c, 200, 3)) EXPECT_TRUE(c.contains(p));
}

TEST(SampleRegion, ExhaustedSamplerIsEstimationFailure) {
  const Region short_region("short", [](const Point&) { return true; },
                            [](std::uint64_t, std::size_t) { return std::vector<Point>{}; },
                            true);
  EXPECT_THROW(sample_region(short_region, 4, 1), Error);
}

TEST(Interval, OpenEndpointsExcluded) {
  const Region r = make_interval(Interval::open(0.0, 1.0));
  EXPECT_FALSE(r.contains(Point{0.0}));
  EXPECT_FALSE(r.contains(Point{1.0}));
  EXPECT_TRUE(r.contains(Point{0.5}));
  for (const auto& p : sample_region(r, 1000, 2)) EXPECT_TRUE(r.contains(p));
}

}  // namespace
}  // namespace cefix
