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

// Paired iteration x_{n+1} = T(x_n, u_n), u_{n+1} = H(x_n, u_n) on both sides
// of a system, limit detection, and the trace-level checks built on it:
// common limits, weakly fixed points and their uniqueness.

#ifndef CEFIX_ITERATE_HPP_
#define CEFIX_ITERATE_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cefix/cef.hpp"
#include "cefix/metric.hpp"
#include "cefix/point.hpp"

namespace cefix {

/// Successive-distance window used to confirm a limit.
inline constexpr std::size_t kConfirmationWindow = 10;

/// States (x_n, u_n) for n = 0..steps and f(u_n) alongside.
struct IterationTrace {
  std::vector<Point> points;
  std::vector<CElement> factors;
  std::vector<double> f_values;

  std::size_t steps() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

/// Runs exactly `steps` transitions from (x0, u0). Throws kDomainViolation
/// naming the step when an iterate leaves `domain`, and kNumericFailure on
/// non-finite values.
IterationTrace iterate(const PointMap& t, const FactorMap& h, const ExternalFactor& f,
                       const Region& domain, const Point& x0, const CElement& u0,
                       std::size_t steps);

/// Lock-step a-side and b-side traces with rho(x_n, y_n).
struct PairedTrace {
  IterationTrace a;
  IterationTrace b;
  std::vector<double> rho_xy;

  std::size_t steps() const noexcept { return a.steps(); }
};

enum class StopReason { kToleranceMet, kMaxSteps, kDivergenceGuard };

std::string_view to_string(StopReason r);

struct ConvergenceReport {
  std::optional<Point> limit;
  /// rho(alpha, y_n) over the final window (alpha = last x when no limit).
  std::vector<double> tail_rho;
  /// max |rho(alpha, y_n) - dist(A,B)| over the final window; NaN without a
  /// limit or a known distance.
  double proximity_residual = 0.0;
  /// max f(u_n) - inf f over the final window; NaN when the infimum is unknown.
  double fa_residual = 0.0;
  double fb_residual = 0.0;
  std::size_t steps = 0;
  StopReason stop = StopReason::kMaxSteps;
  double tol = 0.0;
};

struct PairedRun {
  PairedTrace trace;
  ConvergenceReport report;
};

/// Iterates both sides from q0 in lock step. Stops with kToleranceMet once,
/// for kConfirmationWindow consecutive steps, both rho(x_{n+1}, x_n) and the
/// change of U(n,n) = rho(x_n,y_n) + f_A(u_n) + f_B(v_n) are below `tol`;
/// with kDivergenceGuard when U exceeds 1e15; else at `max_steps`.
PairedRun run_paired(const ExternalFactorSystem& system, const Quadruple& q0,
                     std::size_t max_steps, double tol);

/// The last point when the last kConfirmationWindow successive distances are
/// all below `tol`.
std::optional<Point> detect_limit(const MetricSpace& space, const IterationTrace& trace,
                                  double tol);

enum class Decision { kHolds, kFails, kUndecided };

std::string_view to_string(Decision d);

struct LimitComparison {
  Decision decision = Decision::kUndecided;
  std::optional<Point> first;
  std::optional<Point> second;
  double gap = 0.0;
};

/// Runs from q1 = (x0, y0, u0, v0) and q2 = (z0, y0, t0, v0); holds iff both
/// limits are detected and lie within 10 * tol of each other.
LimitComparison limit_uniqueness_check(const ExternalFactorSystem& system, const Quadruple& q1,
                                       const Quadruple& q2, std::size_t max_steps, double tol);

/// c_n with f_A(c_n) -> inf f_A and (anchor, y, c_n, v) in P.
struct InfimumSequence {
  Point anchor;
  Point witness_y;
  CElement witness_v;
  std::vector<CElement> elements;
  std::vector<double> f_values;
};

/// Builds `length` elements from `generator`. Throws kInvalidInput when a
/// quadruple leaves P and kNotAnInfimumSequence when f_A of the final element
/// is not within `tol` of inf f_A.
InfimumSequence make_infimum_sequence(const ExternalFactorSystem& system, const Point& anchor,
                                      const Point& witness_y, const CElement& witness_v,
                                      const std::function<CElement(std::size_t)>& generator,
                                      std::size_t length, double tol = 1e-9);

/// rho(T_A(point, c_n), point) for each element of `seq`, which must be
/// anchored at `point`.
std::vector<double> weak_fixed_residuals(const ExternalFactorSystem& system, const Point& point,
                                         const InfimumSequence& seq);

struct UniquenessViolation {
  Point beta;
  double tail_residual = 0.0;
  double distance_to_alpha = 0.0;
};

/// Candidates beta (with their infimum sequences) that look weakly fixed:
/// tail residual below `tol` while rho(beta, alpha) > 10 * tol. Candidates
/// within 10 * tol of alpha are skipped.
std::vector<UniquenessViolation> uniqueness_scan(
    const ExternalFactorSystem& system, const Point& alpha,
    const std::vector<std::pair<Point, InfimumSequence>>& candidates, double tol);

/// max |rho(alpha, y_n) - dist(A,B)| over the report's tail; nullopt
/// (undecided) when the run found no limit.
std::optional<double> proximity_residual(const ConvergenceReport& report, const SetPair& pair);

/// Columns: n, x_n, u_n, y_n, v_n, rho_xy, f_a_u, f_b_v.
void write_trace_csv(std::ostream& out, const PairedTrace& trace);

}  // namespace cefix

#endif  // CEFIX_ITERATE_HPP_
