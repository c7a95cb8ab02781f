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

#include "cefix/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "cefix/error.hpp"

namespace cefix {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDivergenceBound = 1e15;

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::kInvalidInput, "tol must be a positive finite number");
  }
}

void require_in_p(const ExternalFactorSystem& system, const Quadruple& q) {
  if (!system.pair.a.contains(q.x) || !system.pair.b.contains(q.y) || !system.p.contains(q)) {
    throw Error(ErrorKind::kInvalidInput,
                "quadruple (" + to_text(q.x) + ", " + to_text(q.y) + ", " + to_text(q.u) +
                    ", " + to_text(q.v) + ") is not in P of " + system.name);
  }
}

// Appends one transition to `trace`, checking finiteness and the domain.
void advance(IterationTrace& trace, const PointMap& t, const FactorMap& h,
             const ExternalFactor& f, const Region& domain, std::size_t step) {
  const Point& x = trace.points.back();
  const CElement& u = trace.factors.back();
  Point next_x = t(x, u);
  CElement next_u = h(x, u);
  if (!next_x.is_finite() || !next_u.is_finite()) {
    throw Error(ErrorKind::kNumericFailure, "non-finite iterate at step " + std::to_string(step));
  }
  if (!domain.contains(next_x)) {
    throw Error(ErrorKind::kDomainViolation,
                "step " + std::to_string(step) + ": " + to_text(next_x) + " left " +
                    domain.name());
  }
  const double fv = f(next_u);
  if (!std::isfinite(fv)) {
    throw Error(ErrorKind::kNumericFailure,
                "non-finite f value at step " + std::to_string(step));
  }
  trace.points.push_back(std::move(next_x));
  trace.factors.push_back(std::move(next_u));
  trace.f_values.push_back(fv);
}

IterationTrace start_trace(const ExternalFactor& f, const Point& x0, const CElement& u0) {
  const double fv = f(u0);
  if (!x0.is_finite() || !u0.is_finite() || !std::isfinite(fv)) {
    throw Error(ErrorKind::kNumericFailure, "non-finite initial state");
  }
  IterationTrace trace;
  trace.points.push_back(x0);
  trace.factors.push_back(u0);
  trace.f_values.push_back(fv);
  return trace;
}

double gap_to_infimum(const ExternalFactor& f, const std::vector<double>& values,
                      std::size_t from) {
  if (!f.infimum) return kNaN;
  double worst = 0.0;
  for (std::size_t i = from; i < values.size(); ++i) {
    worst = std::max(worst, values[i] - f.infimum->value);
  }
  return worst;
}

}  // namespace

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::kToleranceMet: return "tolerance-met";
    case StopReason::kMaxSteps: return "max-steps";
    case StopReason::kDivergenceGuard: return "divergence-guard";
  }
  return "unknown";
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kHolds: return "holds";
    case Decision::kFails: return "fails";
    case Decision::kUndecided: return "undecided";
  }
  return "unknown";
}

IterationTrace iterate(const PointMap& t, const FactorMap& h, const ExternalFactor& f,
                       const Region& domain, const Point& x0, const CElement& u0,
                       std::size_t steps) {
  if (!domain.contains(x0)) {
    throw Error(ErrorKind::kDomainViolation,
                "step 0: " + to_text(x0) + " is not in " + domain.name());
  }
  IterationTrace trace = start_trace(f, x0, u0);
  trace.points.reserve(steps + 1);
  for (std::size_t n = 1; n <= steps; ++n) advance(trace, t, h, f, domain, n);
  return trace;
}

PairedRun run_paired(const ExternalFactorSystem& system, const Quadruple& q0,
                     std::size_t max_steps, double tol) {
  require_tol(tol);
  require_in_p(system, q0);
  const auto& rho = system.pair.space;

  PairedRun run;
  PairedTrace& tr = run.trace;
  tr.a = start_trace(system.a.f, q0.x, q0.u);
  tr.b = start_trace(system.b.f, q0.y, q0.v);
  tr.rho_xy.push_back(rho.distance(q0.x, q0.y));

  auto u_diag = [&](std::size_t n) { return tr.rho_xy[n] + tr.a.f_values[n] + tr.b.f_values[n]; };

  ConvergenceReport& rep = run.report;
  rep.tol = tol;
  rep.stop = StopReason::kMaxSteps;
  std::size_t calm = 0;
  for (std::size_t n = 1; n <= max_steps; ++n) {
    advance(tr.a, system.a.t, system.a.h, system.a.f, system.pair.a, n);
    advance(tr.b, system.b.t, system.b.h, system.b.f, system.pair.b, n);
    const double r = rho.distance(tr.a.points[n], tr.b.points[n]);
    if (!std::isfinite(r)) {
      throw Error(ErrorKind::kNumericFailure, "non-finite rho at step " + std::to_string(n));
    }
    tr.rho_xy.push_back(r);

    const double u = u_diag(n);
    if (u > kDivergenceBound) {
      rep.stop = StopReason::kDivergenceGuard;
      break;
    }
    const bool still = rho.distance(tr.a.points[n], tr.a.points[n - 1]) < tol &&
                       std::abs(u - u_diag(n - 1)) < tol;
    calm = still ? calm + 1 : 0;
    if (calm >= kConfirmationWindow) {
      rep.stop = StopReason::kToleranceMet;
      break;
    }
  }

  const std::size_t len = tr.a.points.size();
  rep.steps = len - 1;
  const std::size_t from = len > kConfirmationWindow ? len - kConfirmationWindow : 0;
  const Point& alpha = tr.a.points.back();
  if (rep.stop == StopReason::kToleranceMet) rep.limit = alpha;
  for (std::size_t i = from; i < len; ++i) {
    rep.tail_rho.push_back(rho.distance(alpha, tr.b.points[i]));
  }
  rep.proximity_residual = kNaN;
  if (rep.limit && system.pair.dist) {
    double worst = 0.0;
    for (double d : rep.tail_rho) worst = std::max(worst, std::abs(d - system.pair.dist->value));
    rep.proximity_residual = worst;
  }
  rep.fa_residual = gap_to_infimum(system.a.f, tr.a.f_values, from);
  rep.fb_residual = gap_to_infimum(system.b.f, tr.b.f_values, from);
  return run;
}

std::optional<Point> detect_limit(const MetricSpace& space, const IterationTrace& trace,
                                  double tol) {
  require_tol(tol);
  const auto& pts = trace.points;
  if (pts.size() < 2) return std::nullopt;
  // Traces shorter than the window are judged on every step they have.
  const std::size_t window = std::min(kConfirmationWindow, pts.size() - 1);
  for (std::size_t i = pts.size() - window; i < pts.size(); ++i) {
    if (!(space.distance(pts[i], pts[i - 1]) < tol)) return std::nullopt;
  }
  return pts.back();
}

LimitComparison limit_uniqueness_check(const ExternalFactorSystem& system, const Quadruple& q1,
                                       const Quadruple& q2, std::size_t max_steps, double tol) {
  require_tol(tol);
  if (!(q1.y == q2.y) || !(q1.v == q2.v)) {
    throw Error(ErrorKind::kInvalidInput, "both starts must share (y0, v0)");
  }
  LimitComparison out;
  const auto r1 = run_paired(system, q1, max_steps, tol);
  const auto r2 = run_paired(system, q2, max_steps, tol);
  out.first = r1.report.limit;
  out.second = r2.report.limit;
  if (!out.first || !out.second) return out;
  out.gap = system.pair.space.distance(*out.first, *out.second);
  out.decision = out.gap <= 10.0 * tol ? Decision::kHolds : Decision::kFails;
  return out;
}

InfimumSequence make_infimum_sequence(const ExternalFactorSystem& system, const Point& anchor,
                                      const Point& witness_y, const CElement& witness_v,
                                      const std::function<CElement(std::size_t)>& generator,
                                      std::size_t length, double tol) {
  require_tol(tol);
  if (length == 0) {
    throw Error(ErrorKind::kInvalidInput, "an infimum sequence needs length >= 1");
  }
  if (!system.a.f.infimum) {
    throw Error(ErrorKind::kNotCertified, "inf f_A unknown for " + system.name);
  }
  InfimumSequence seq{anchor, witness_y, witness_v, {}, {}};
  seq.elements.reserve(length);
  for (std::size_t n = 1; n <= length; ++n) {
    CElement c = generator(n);
    require_in_p(system, Quadruple{anchor, witness_y, c, witness_v});
    seq.f_values.push_back(system.a.f(c));
    seq.elements.push_back(std::move(c));
  }
  const double last = seq.f_values.back();
  if (!(std::abs(last - system.a.f.infimum->value) <= tol)) {
    throw Error(ErrorKind::kNotAnInfimumSequence,
                "f_A(c_" + std::to_string(length) + ") = " + format_real(last) +
                    " is not within " + format_real(tol) + " of inf f_A = " +
                    format_real(system.a.f.infimum->value));
  }
  return seq;
}

std::vector<double> weak_fixed_residuals(const ExternalFactorSystem& system, const Point& point,
                                         const InfimumSequence& seq) {
  if (!(seq.anchor == point)) {
    throw Error(ErrorKind::kInvalidInput,
                "infimum sequence is anchored at " + to_text(seq.anchor) + ", not " +
                    to_text(point));
  }
  std::vector<double> out;
  out.reserve(seq.elements.size());
  for (const auto& c : seq.elements) {
    require_in_p(system, Quadruple{point, seq.witness_y, c, seq.witness_v});
    out.push_back(system.pair.space.distance(system.a.t(point, c), point));
  }
  return out;
}

std::vector<UniquenessViolation> uniqueness_scan(
    const ExternalFactorSystem& system, const Point& alpha,
    const std::vector<std::pair<Point, InfimumSequence>>& candidates, double tol) {
  require_tol(tol);
  std::vector<UniquenessViolation> out;
  for (const auto& [beta, seq] : candidates) {
    const double d = system.pair.space.distance(beta, alpha);
    if (d <= 10.0 * tol) continue;
    const auto res = weak_fixed_residuals(system, beta, seq);
    if (res.empty()) continue;
    const std::size_t from = res.size() > kConfirmationWindow ? res.size() - kConfirmationWindow : 0;
    const double tail = *std::max_element(res.begin() + static_cast<std::ptrdiff_t>(from), res.end());
    if (tail < tol) out.push_back({beta, tail, d});
  }
  return out;
}

std::optional<double> proximity_residual(const ConvergenceReport& report, const SetPair& pair) {
  if (!report.limit) return std::nullopt;
  if (!pair.dist) throw Error(ErrorKind::kNotCertified, "dist(A,B) unknown");
  double worst = 0.0;
  for (double d : report.tail_rho) worst = std::max(worst, std::abs(d - pair.dist->value));
  return worst;
}

void write_trace_csv(std::ostream& out, const PairedTrace& trace) {
  out << "n,x_n,u_n,y_n,v_n,rho_xy,f_a_u,f_b_v\n";
  for (std::size_t n = 0; n < trace.a.points.size(); ++n) {
    out << n << ',' << to_text(trace.a.points[n]) << ',' << to_text(trace.a.factors[n]) << ','
        << to_text(trace.b.points[n]) << ',' << to_text(trace.b.factors[n]) << ','
        << format_real(trace.rho_xy[n]) << ',' << format_real(trace.a.f_values[n]) << ','
        << format_real(trace.b.f_values[n]) << '\n';
  }
}

}  // namespace cefix
