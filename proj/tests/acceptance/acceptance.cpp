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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cefix/cefix.hpp"
#include "oracles.hpp"

namespace {

using namespace cefix;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

Quadruple e1q(double x, double y) {
  return {Point{x}, Point{y}, CElement(Point{x}), CElement(Point{y})};
}

Outcome certification() {
  Outcome o;
  const auto ok = verify_contraction(example1_system(0.625), 10000, 1);
  o.require(ok.verdict == Verdict::kCertifiedOnSamples, "certified at 5/8");
  o.require(ok.min_residual >= -kResidualTolerance, "min residual >= -1e-10");
  const auto bad = verify_contraction(example1_system(0.5), 10000, 1);
  o.require(bad.verdict == Verdict::kRefuted, "refuted at 1/2");
  o.require(bad.witness.has_value(), "witness present");
  if (bad.witness) {
    o.require(oracle::e1_residual(bad.witness->x.value(), bad.witness->y.value(), 0.5) <
                  -kResidualTolerance,
              "witness violates the inequality by reference evaluation");
  }
  o.note << " min_residual(5/8)=" << ok.min_residual << " min_residual(1/2)=" << bad.min_residual;
  return o;
}

Outcome convergence() {
  Outcome o;
  const auto run = run_paired(example1_system(), e1q(3.0, -2.0), 1000, 1e-9);
  const auto& a = run.trace.a.points;
  o.require(run.report.limit && run.report.limit->value() == 0.0, "alpha == 0 exactly");
  o.require(a.size() > 4 && a[1].value() == 6.0 && a[2].value() == 0.5 && a[3].value() == 1.0 &&
                a[4].value() == 0.0,
            "chain 3 -> 6 -> 0.5 -> 1 -> 0");
  o.require(run.report.proximity_residual <= 1e-6, "proximity residual <= 1e-6");
  o.require(run.report.fa_residual <= 1e-6 && run.report.fb_residual <= 1e-6,
            "factor tails <= 1e-6");
  o.note << " steps=" << run.report.steps << " proximity=" << run.report.proximity_residual
         << " fb=" << run.report.fb_residual;
  return o;
}

Outcome diagonal_bound() {
  Outcome o;
  const auto run = run_paired(example1_system(), e1q(3.0, -2.0), 1000, 1e-9);
  const auto& tr = run.trace;
  const auto cert = check_l2_diagonal(MetricSpace::real_line(), tr, 0.625, 1.0);
  o.require(!cert.first_violation.has_value(), "no diagonal violation");
  // Independent recomputation of M and the bound.
  auto u = [&](std::size_t m, std::size_t n) {
    return std::abs(tr.a.points[m].value() - tr.b.points[n].value()) + tr.a.f_values[m] +
           tr.b.f_values[n];
  };
  double m = 0.0;
  for (std::size_t k = 1; k <= tr.steps(); ++k) m = std::max({m, u(k, 1), u(1, k)});
  std::size_t violations = 0;
  for (std::size_t n = 1; n <= tr.steps(); ++n) {
    const double p = std::pow(0.625, static_cast<double>(n - 1));
    if (u(n, n) > p * m + (1.0 - p) * 1.0 + 1e-10) ++violations;
  }
  o.require(violations == 0, "reference count of violations is zero");
  o.require(std::abs(cert.m - m) <= 1e-12, "M agrees with reference");
  o.note << " M=" << m << " horizon=" << cert.horizon;
  return o;
}

Outcome uniqueness() {
  Outcome o;
  const auto sys = example1_system();
  const Quadruple q2{Point{97.3}, Point{-2.0}, CElement(Point{97.3}), CElement(Point{-2.0})};
  const auto cmp = limit_uniqueness_check(sys, e1q(3.0, -2.0), q2, 1000, 1e-9);
  o.require(cmp.decision == Decision::kHolds && cmp.gap <= 1e-8, "limits agree within 1e-8");

  std::vector<std::pair<Point, InfimumSequence>> candidates;
  for (int i = 0; i <= 200; ++i) {
    const double b = 0.5 * i;
    if (oracle::alpha(b) != 0) continue;
    candidates.emplace_back(Point{b}, make_infimum_sequence(
                                          sys, Point{b}, Point{-2.0}, CElement(Point{-2.0}),
                                          [b](std::size_t) { return CElement(Point{b}); }, 20));
  }
  const auto violations = uniqueness_scan(sys, *cmp.first, candidates, 1e-9);
  o.require(violations.empty(), "uniqueness scan is empty");
  o.note << " gap=" << cmp.gap << " candidates=" << candidates.size();
  return o;
}

Outcome cyclic() {
  Outcome o;
  const auto ct = affine_cyclic_example();
  // The shipped constant must pass the brute-force grid before anything else.
  o.require(oracle::segment_bz_min(ct.k, 100) >= -1e-10, "shipped k passes the grid oracle");
  const auto r = cyclic3_solve(ct, {Point{0.0, 0.0}, Point{1.0, 1.0}, Point{0.25, 2.0}}, 2000,
                               1e-10);
  o.require(r.decided, "affine triple decided");
  const double s = oracle::segment_fixed_coordinate();
  for (int i = 0; i < 3; ++i) {
    o.require(r.gap_residuals[i] <= 1e-8, "gap residual <= 1e-8");
    o.require(r.cycle_residuals[i] <= 1e-8, "cycle residual <= 1e-8");
    o.require(r.z[i] && ct.space.distance(*r.z[i], Point{s, static_cast<double>(i)}) <= 1e-8,
              "z matches closed form");
  }
  const auto sg = cyclic3_solve(singleton_cyclic_example(), {Point{10.0}, Point{20.0}, Point{30.0}},
                                500, 1e-9);
  o.require(sg.decided, "singleton decided");
  for (int i = 0; i < 3; ++i) {
    o.require(sg.gap_residuals[i] == 0.0 && sg.cycle_residuals[i] == 0.0,
              "singleton residuals exactly 0");
  }
  o.note << " k=" << ct.k << " max_gap="
         << *std::max_element(r.gap_residuals.begin(), r.gap_residuals.end());
  return o;
}

Outcome product() {
  Outcome o;
  const auto sys = product_system(example1_system(), example1_system());
  o.require(sys.lambda == 0.625, "lambda 5/8");
  o.require(verify_contraction(sys, 10000, 1).verdict == Verdict::kCertifiedOnSamples,
            "product certified");
  const Quadruple q{Point{3.0, 5.0}, Point{-2.0, -3.0},
                    CElement(std::vector<CPart>{Point{3.0}, Point{5.0}}),
                    CElement(std::vector<CPart>{Point{-2.0}, Point{-3.0}})};
  const auto run = run_paired(sys, q, 1000, 1e-9);
  o.require(run.report.limit.has_value(), "limit detected");
  if (run.report.limit) {
    const double d = sys.pair.space.distance(*run.report.limit, Point{0.0, 0.0});
    o.require(d <= 1e-8, "limit (0,0) within 1e-8");
    o.note << " distance_to_origin=" << d;
  }
  return o;
}

Outcome falsification() {
  Outcome o;
  const auto intervals = pair_instance("e1-pair");
  const auto uc = uc_falsify(intervals.pair, intervals.uc(1e-9), 1000, 1e-9, 1);
  o.require(!uc.counterexample.has_value(), "no UC counterexample on intervals");
  o.require(uc.tried == 1000, "full budget tried");
  const auto open = pair_instance("open-interval-pair");
  const auto cd = cd_falsify(open.pair, open.cd(1e-9), 1000, 1e-9, 1);
  o.require(cd.counterexample.has_value(), "CD counterexample on the incomplete pair");
  const auto circle = pair_instance("circle-origin");
  const auto uc2 = uc_falsify(circle.pair, circle.uc(1e-9), 1000, 1e-9, 1);
  o.require(uc2.counterexample.has_value(), "UC counterexample on circle/origin");
  o.note << " uc_admissible=" << uc.admissible << " cd_index="
         << (cd.counterexample ? static_cast<long>(cd.counterexample->index) : -1L);
  return o;
}

Outcome validators() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  std::size_t failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const double fx = 10 * u(rng) - 5, fy = 10 * u(rng) - 5;
    const double rx = 0.2 + 0.7 * u(rng), ry = 0.2 + 0.7 * u(rng);
    const double cx = 3 * u(rng), cy = 3 * u(rng);
    std::vector<double> x, y;
    for (int n = 1; n <= 300; ++n) {
      x.push_back(fx + cx * std::pow(rx, n));
      y.push_back(fy + cy * std::pow(ry, n));
    }
    if (!split_limit_validate({x, y}, {fx, fy}, eps).holds) ++failures;

    const std::size_t horizon = 40;
    const PairwiseFn f = [&](std::size_t n, std::size_t m) {
      return fx + cx * std::pow(rx, static_cast<double>(std::min(n, m)));
    };
    const TailSupTable table(f, horizon);
    for (std::size_t k = 2; k <= horizon; ++k) {
      if (table.at(k) > table.at(k - 1)) ++failures;  // monotone in k
    }
    // Floor convergence: the tail sup approaches the floor geometrically.
    if (std::abs(table.at(horizon) - fx) > cx * std::pow(rx, static_cast<double>(horizon)) + 1e-12) {
      ++failures;
    }
    if (!split_tail_sup_validate(
             f, [&](std::size_t n, std::size_t m) {
               return fy + cy * std::pow(ry, static_cast<double>(std::max(n, m)));
             },
             horizon, {1e-1})
             .holds) {
      ++failures;
    }
  }
  o.require(failures == 0, "all fixtures pass");
  o.note << " fixtures=1000 failures=" << failures;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"example certification at 5/8, refutation at 1/2", certification},
      {"example convergence to 0 with proximity and factor tails", convergence},
      {"diagonal decay bound on the example trace", diagonal_bound},
      {"limit uniqueness and empty uniqueness scan", uniqueness},
      {"cyclic reduction best proximity points", cyclic},
      {"product composition certified and convergent", product},
      {"UC/CD property falsification", falsification},
      {"split-limit and tail-sup validators on random fixtures", validators},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    std::printf("%s #%zu %s (%.0f ms)%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, ms,
                o.note.str().c_str());
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
