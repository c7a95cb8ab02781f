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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cefix/checkers.hpp"
#include "cefix/error.hpp"
#include "cefix/instances.hpp"

namespace cefix {
namespace {

Quadruple e1q(double x, double y) {
  return {Point{x}, Point{y}, CElement(Point{x}), CElement(Point{y})};
}

PairedTrace e1_trace(std::size_t steps = 200) {
  return run_paired(example1_system(), e1q(3.0, -2.0), steps, 1e-9).trace;
}

// Direct transcription of the tail-sup definition.
double brute_tail_sup(const PairwiseFn& f, std::size_t k, std::size_t n) {
  double best = -INFINITY;
  for (std::size_t i = k; i <= n; ++i) {
    for (std::size_t j = k; j <= n; ++j) best = std::max(best, f(i, j));
  }
  return best;
}

TEST(TailSup, HarmonicAttainedAtOrigin) {
  const PairwiseFn f = [](std::size_t n, std::size_t m) { return 1.0 / static_cast<double>(n + m); };
  EXPECT_EQ(tail_sup(f, 1, 100), 0.5);
}

TEST(TailSup, ConstantEverywhere) {
  const PairwiseFn f = [](std::size_t, std::size_t) { return 2.75; };
  for (std::size_t k = 1; k <= 30; ++k) EXPECT_EQ(tail_sup(f, k, 30), 2.75);
  const TailSupTable t(f, 30);
  EXPECT_EQ(t.at(30), 2.75);
  EXPECT_EQ(t.grid_min(), 2.75);
}

TEST(TailSup, ExampleCrossDistanceTendsToGap) {
  const auto tr = e1_trace();
  const auto& s = MetricSpace::real_line();
  const PairwiseFn f = [&](std::size_t n, std::size_t m) {
    return s.distance(tr.a.points[n], tr.b.points[m]);
  };
  const std::size_t n = tr.steps();
  EXPECT_NEAR(tail_sup(f, n - 5, n), 1.0, 1e-6);
}

TEST(TailSup, EmptyWindowIsInvalid) {
  const PairwiseFn f = [](std::size_t, std::size_t) { return 0.0; };
  EXPECT_THROW(tail_sup(f, 0, 5), Error);
  EXPECT_THROW(tail_sup(f, 6, 5), Error);
}

TEST(TailSup, TableMatchesDefinitionAndIsMonotone) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    std::vector<double> vals((n + 1) * (n + 1));
    for (auto& v : vals) v = u(rng);
    const PairwiseFn f = [&](std::size_t i, std::size_t j) { return vals[i * (n + 1) + j]; };
    const TailSupTable t(f, n);
    double grid_min = INFINITY;
    for (std::size_t k = 1; k <= n; ++k) {
      ASSERT_EQ(t.at(k), brute_tail_sup(f, k, n));
      ASSERT_EQ(tail_sup(f, k, n), t.at(k));
      if (k > 1) ASSERT_LE(t.at(k), t.at(k - 1));
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) grid_min = std::min(grid_min, f(i, j));
    }
    ASSERT_EQ(t.grid_min(), grid_min);
  }
}

std::vector<double> seq(std::size_t n, const std::function<double(double)>& g) {
  std::vector<double> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(g(static_cast<double>(i)));
  return out;
}

const std::vector<double> kEps{1e-1, 1e-2, 1e-3};

TEST(SplitLimit, BothConvergeToFloors) {
  const auto x = seq(5000, [](double n) { return 1.0 / n; });
  const auto y = seq(5000, [](double n) { return 2.0 + 1.0 / n; });
  const auto r = split_limit_validate({x, y}, {0.0, 2.0}, kEps);
  EXPECT_TRUE(r.holds);
  ASSERT_EQ(r.steps.size(), 3u);
  for (const auto& s : r.steps) EXPECT_TRUE(s.from.has_value());
}

TEST(SplitLimit, VacuousWhenCriterionNeverMet) {
  const auto x = seq(500, [](double n) { return 1.0 + 1.0 / n; });
  const auto r = split_limit_validate({x, x}, {0.0, 0.0}, {1e-2});
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.steps[0].from.has_value());
}

TEST(SplitLimit, FloorAboveTermIsInvalid) {
  const auto x = seq(50, [](double n) { return 1.0 + 1.0 / n; });
  const auto y = seq(50, [](double n) { return -1.0 + 1.0 / n; });
  EXPECT_THROW(split_limit_validate({x, y}, {0.0, 0.0}, kEps), Error);
}

TEST(SplitLimit, ExampleFactorValuesTendToInfima) {
  const auto tr = e1_trace(500);
  const auto r = split_limit_validate({tr.a.f_values, tr.b.f_values}, {0.0, 0.0}, kEps);
  EXPECT_TRUE(r.holds);
  for (const auto& s : r.steps) EXPECT_TRUE(s.from.has_value());
}

TEST(SplitLimit, ThreeSequences) {
  const auto a = seq(2000, [](double n) { return 1.0 / n; });
  const auto b = seq(2000, [](double n) { return 1.0 / (n * n); });
  const auto c = seq(2000, [](double n) { return 5.0 + std::exp(-n); });
  EXPECT_TRUE(split_limit_validate({a, b, c}, {0.0, 0.0, 5.0}, kEps).holds);
}

TEST(SplitLimit, RandomConvergentFixtures) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double fx = u(rng) * 10 - 5, fy = u(rng) * 10 - 5;
    const double rx = 0.3 + 0.6 * u(rng), ry = 0.3 + 0.6 * u(rng);
    const double cx = u(rng) * 3, cy = u(rng) * 3;
    const auto x = seq(400, [&](double n) { return fx + cx * std::pow(rx, n); });
    const auto y = seq(400, [&](double n) { return fy + cy * std::pow(ry, n); });
    const auto r = split_limit_validate({x, y}, {fx, fy}, kEps);
    ASSERT_TRUE(r.holds) << trial;
    for (const auto& s : r.steps) ASSERT_TRUE(s.parts_ok);
  }
}

TEST(SplitTailSup, SumTendsToFloorsSoDoParts) {
  const PairwiseFn f = [](std::size_t n, std::size_t m) { return 1.0 / static_cast<double>(n * m); };
  const PairwiseFn g = [](std::size_t n, std::size_t m) {
    return 3.0 + 1.0 / static_cast<double>(n + m);
  };
  const auto r = split_tail_sup_validate(f, g, 400, kEps);
  EXPECT_TRUE(r.holds);
}

TEST(L1Bound, ExampleTrace) {
  const auto c = check_l1_bound(MetricSpace::real_line(), e1_trace(), 0.625, 1.0);
  EXPECT_TRUE(c.holds);
  EXPECT_FALSE(c.first_violation.has_value());
}

TEST(L1Bound, ConstantMaps) {
  const auto r = MetricSpace::real_line();
  const auto sys = self_map_system("const", r, make_interval(Interval::closed(-5, 5)),
                                   [](const Point&) { return Point{1.0}; }, 0.5);
  const Quadruple q{Point{1.0}, Point{1.0}, CElement(Atom{0}), CElement(Atom{0})};
  const auto run = run_paired(sys, q, 50, 1e-9);
  EXPECT_TRUE(check_l1_bound(r, run.trace, 0.5, 0.0).holds);
}

// Reference evaluation of the bound used by the negative control.
bool reference_l1(const PairedTrace& tr, double lambda, double s) {
  auto rho = [](const Point& a, const Point& b) { return std::abs(a.value() - b.value()); };
  const double q = rho(tr.b.points[1], tr.b.points[2]) + lambda * tr.b.f_values[1] -
                   tr.b.f_values[2];
  const double bound = rho(tr.a.points[1], tr.b.points[1]) + tr.a.f_values[1] +
                       q / (1.0 - lambda) + s;
  for (std::size_t n = 1; n < tr.a.points.size(); ++n) {
    if (rho(tr.a.points[n], tr.b.points[1]) + tr.a.f_values[n] > bound + 1e-10) return false;
  }
  return true;
}

TEST(L1Bound, LoweredLambdaAgreesWithReference) {
  for (const double x0 : {3.0, 13.0, 40.0, 97.3}) {
    const auto tr = run_paired(example1_system(), e1q(x0, -2.0), 200, 1e-9).trace;
    for (const double lambda : {0.4, 0.625}) {
      const auto c = check_l1_bound(MetricSpace::real_line(), tr, lambda, 1.0);
      EXPECT_EQ(c.holds, reference_l1(tr, lambda, 1.0)) << x0 << " " << lambda;
    }
  }
}

TEST(L1Bound, TooShortOrBadLambdaIsInvalid) {
  const auto tr = run_paired(example1_system(), e1q(3.0, -2.0), 1, 1e-9).trace;
  EXPECT_THROW(check_l1_bound(MetricSpace::real_line(), tr, 0.625, 1.0), Error);
  EXPECT_THROW(check_l1_bound(MetricSpace::real_line(), e1_trace(), 1.0, 1.0), Error);
}

TEST(L2Bound, ExampleTraceFullGrid) {
  const auto tr = e1_trace();
  const auto c = check_l2_bound(MetricSpace::real_line(), tr, 0.625, 1.0);
  EXPECT_FALSE(c.first_violation.has_value());
  // M is the largest entry of the first row and column.
  double m = 0.0;
  for (std::size_t k = 1; k <= tr.steps(); ++k) {
    m = std::max({m, u_value(MetricSpace::real_line(), tr, k, 1),
                  u_value(MetricSpace::real_line(), tr, 1, k)});
  }
  EXPECT_EQ(c.m, m);
  EXPECT_EQ(c.horizon, tr.steps());
}

TEST(L2Bound, OneStepTrace) {
  const auto tr = run_paired(example1_system(), e1q(3.0, -2.0), 1, 1e-9).trace;
  const auto c = check_l2_bound(MetricSpace::real_line(), tr, 0.625, 1.0);
  EXPECT_FALSE(c.first_violation.has_value());
  EXPECT_EQ(c.horizon, 1u);
}

TEST(L2Bound, CyclicReductionAtKCubed) {
  const auto sys = cyclic3_reduce(affine_cyclic_example());
  ASSERT_EQ(sys.lambda, 0.125);
  const Point y{0.2, 1.0, 0.9, 2.0};
  const Quadruple q{Point{0.0, 0.0, 0.0, 0.0}, y, CElement(Atom{1}), CElement(y)};
  const auto tr = run_paired(sys, q, 500, 1e-10).trace;
  EXPECT_FALSE(check_l2_bound(sys.pair.space, tr, sys.lambda, s_value(sys)).first_violation);
}

TEST(L2Bound, TooSmallLambdaIsCaught) {
  // With lambda = 0 the bound collapses to S from n = 2 on, while the example's
  // b-side still carries a positive factor value there.
  const auto c = check_l2_bound(MetricSpace::real_line(), e1_trace(), 0.0, 1.0);
  EXPECT_TRUE(c.first_violation.has_value());
}

TEST(L2Bound, BuiltInCertifiedSystems) {
  struct Case {
    ExternalFactorSystem sys;
    Quadruple q;
  };
  const Point y{0.2, 1.0, 0.9, 2.0};
  std::vector<Case> cases{
      {example1_system(), e1q(55.0, -31.0)},
      {affine_banach_system(0.5, 2.0), {Point{8.0}, Point{0.0}, CElement(Atom{0}), CElement(Atom{0})}},
      {product_system(example1_system(), example1_system()),
       {Point{3.0, 5.0}, Point{-2.0, -3.0}, CElement(std::vector<CPart>{Point{3.0}, Point{5.0}}),
        CElement(std::vector<CPart>{Point{-2.0}, Point{-3.0}})}},
      {cyclic3_reduce(affine_cyclic_example()),
       {Point{1.0, 0.0, 1.0, 0.0}, y, CElement(Atom{1}), CElement(y)}},
  };
  for (const auto& c : cases) {
    const auto tr = run_paired(c.sys, c.q, 300, 1e-10).trace;
    EXPECT_FALSE(check_l2_bound(c.sys.pair.space, tr, c.sys.lambda, s_value(c.sys))
                     .first_violation.has_value())
        << c.sys.name;
  }
}

TEST(CdFalsify, HalfLinesHaveNoCounterexample) {
  const auto inst = pair_instance("e1-pair");
  const auto rep = cd_falsify(inst.pair, inst.cd(1e-9), 1000, 1e-9, 1);
  EXPECT_FALSE(rep.counterexample.has_value());
  EXPECT_EQ(rep.tried, 1000u);
  EXPECT_GT(rep.admissible, 0u);
}

TEST(CdFalsify, OpenIntervalsGiveCounterexample) {
  const auto inst = pair_instance("open-interval-pair");
  const auto rep = cd_falsify(inst.pair, inst.cd(1e-9), 1000, 1e-9, 1);
  ASSERT_TRUE(rep.counterexample.has_value());
  const auto& xs = rep.counterexample->sequences.x;
  EXPECT_NEAR(xs.back().value(), 1.0, 1e-8);
  EXPECT_FALSE(inst.pair.a.contains(Point{1.0}));
  EXPECT_EQ(rep.dist, 1.0);
}

TEST(CdFalsify, UnreachableDistanceIsVacuous) {
  const auto inst = pair_instance("e1-pair");
  const PairGenerator far = [](std::size_t, std::mt19937_64&) {
    SequencePair p;
    for (int i = 0; i < 30; ++i) {
      p.x.push_back(Point{10.0 + i % 2});
      p.y.push_back(Point{-10.0});
    }
    return p;
  };
  const auto rep = cd_falsify(inst.pair, far, 50, 1e-9, 1);
  EXPECT_FALSE(rep.counterexample.has_value());
  EXPECT_EQ(rep.admissible, 0u);
}

TEST(CdFalsify, OutOfRegionPointsAreInvalid) {
  const auto inst = pair_instance("e1-pair");
  const PairGenerator bad = [](std::size_t, std::mt19937_64&) {
    return SequencePair{{Point{-5.0}}, {Point{-5.0}}};
  };
  EXPECT_THROW(cd_falsify(inst.pair, bad, 5, 1e-9, 1), Error);
}

TEST(CdFalsify, SeedReproducible) {
  const auto inst = pair_instance("e1-pair");
  const auto a = cd_falsify(inst.pair, inst.cd(1e-9), 200, 1e-9, 42);
  const auto b = cd_falsify(inst.pair, inst.cd(1e-9), 200, 1e-9, 42);
  EXPECT_EQ(a.admissible, b.admissible);
  EXPECT_EQ(a.seed, 42u);
}

TEST(UcFalsify, IntervalsHaveNoCounterexample) {
  for (const char* name : {"e1-pair", "open-interval-pair", "overlap-pair"}) {
    const auto inst = pair_instance(name);
    const auto rep = uc_falsify(inst.pair, inst.uc(1e-9), 1000, 1e-9, 3);
    EXPECT_FALSE(rep.counterexample.has_value()) << name;
    EXPECT_GT(rep.admissible, 0u) << name;
  }
}

TEST(UcFalsify, CircleAroundOriginHasCounterexample) {
  const auto inst = pair_instance("circle-origin");
  const auto rep = uc_falsify(inst.pair, inst.uc(1e-9), 1000, 1e-9, 1);
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_EQ(rep.dist, 1.0);
  // Antipodal points on the unit circle are 2 apart.
  EXPECT_NEAR(rep.counterexample->min_tail_gap, 2.0, 1e-9);
}

TEST(UcFalsify, OverlapDistanceZero) {
  const auto inst = pair_instance("overlap-pair");
  EXPECT_EQ(inst.pair.dist->value, 0.0);
  EXPECT_FALSE(uc_falsify(inst.pair, inst.uc(1e-9), 300, 1e-9, 9).counterexample);
}

TEST(ConvergenceInRegion, Reasons) {
  const auto r = MetricSpace::real_line();
  const Region open = make_interval(Interval::open(0.0, 1.0));
  std::vector<Point> settled(20, Point{0.5});
  EXPECT_EQ(convergence_in_region(r, open, settled, 1e-9), "");
  std::vector<Point> flip;
  for (int i = 0; i < 20; ++i) flip.push_back(Point{i % 2 ? 0.25 : 0.75});
  EXPECT_NE(convergence_in_region(r, open, flip, 1e-9), "");
  std::vector<Point> edge;
  for (int i = 0; i < 60; ++i) edge.push_back(Point{1.0 - std::ldexp(1.0, -i)});
  EXPECT_NE(convergence_in_region(r, open, edge, 1e-9), "");
}

}  // namespace
}  // namespace cefix
