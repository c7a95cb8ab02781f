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

#include "cefix/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cefix/error.hpp"

namespace cefix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFloorSlack = 1e-12;
constexpr double kBoundSlack = 1e-10;
constexpr std::size_t kDistanceSamples = 1000;

double slack_for(double v) { return kFloorSlack * std::max(1.0, std::abs(v)); }

void require_positive_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::kInvalidInput, "tol must be a positive finite number");
  }
}

// The window [len - w, len) of the final w indices.
std::size_t window_start(std::size_t len) {
  return len > kConfirmationWindow ? len - kConfirmationWindow : 0;
}

double pair_distance(const SetPair& pair, std::uint64_t seed) {
  return set_distance(pair, kDistanceSamples, seed).value;
}

void require_members(const Region& region, const std::vector<Point>& pts, const char* label,
                     std::size_t index) {
  for (std::size_t n = 0; n < pts.size(); ++n) {
    if (!region.contains(pts[n])) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string("candidate ") + std::to_string(index) + ": " + label + "_" +
                      std::to_string(n) + " = " + to_text(pts[n]) + " is not in " +
                      region.name());
    }
  }
}

}  // namespace

double tail_sup(const PairwiseFn& f, std::size_t k, std::size_t horizon) {
  if (k == 0 || k > horizon) {
    throw Error(ErrorKind::kInvalidInput, "empty index window [" + std::to_string(k) + ", " +
                                              std::to_string(horizon) + "]");
  }
  double best = -kInf;
  for (std::size_t n = k; n <= horizon; ++n) {
    for (std::size_t m = k; m <= horizon; ++m) best = std::max(best, f(n, m));
  }
  return best;
}

TailSupTable::TailSupTable(const PairwiseFn& f, std::size_t horizon) : min_(kInf) {
  if (horizon == 0) throw Error(ErrorKind::kInvalidInput, "tail-sup table needs N >= 1");
  values_.assign(horizon, -kInf);
  // Peel L-shaped shells from the far corner: shell k is row k and column k
  // restricted to [k, N].
  double running = -kInf;
  for (std::size_t k = horizon; k >= 1; --k) {
    for (std::size_t j = k; j <= horizon; ++j) {
      const double a = f(k, j);
      const double b = j == k ? a : f(j, k);
      running = std::max({running, a, b});
      min_ = std::min({min_, a, b});
    }
    values_[k - 1] = running;
  }
}

double TailSupTable::at(std::size_t k) const {
  if (k == 0 || k > values_.size()) {
    throw Error(ErrorKind::kInvalidInput, "k outside [1, N]");
  }
  return values_[k - 1];
}

SplitLimitResult split_limit_validate(const std::vector<std::vector<double>>& seqs,
                                      const std::vector<double>& floors,
                                      const std::vector<double>& eps_schedule) {
  if (seqs.size() < 2 || seqs.size() > 3 || floors.size() != seqs.size()) {
    throw Error(ErrorKind::kInvalidInput, "split_limit_validate takes 2 or 3 sequences with floors");
  }
  const std::size_t len = seqs.front().size();
  for (const auto& s : seqs) {
    if (s.size() != len) throw Error(ErrorKind::kInvalidInput, "sequences differ in length");
  }
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    for (std::size_t n = 0; n < len; ++n) {
      if (floors[j] - seqs[j][n] > kFloorSlack) {
        throw Error(ErrorKind::kInvalidInput,
                    "floor " + format_real(floors[j]) + " exceeds term " + std::to_string(n) +
                        " = " + format_real(seqs[j][n]) + " of sequence " + std::to_string(j));
      }
    }
  }

  double floor_sum = 0.0;
  for (double f : floors) floor_sum += f;
  // Suffix maxima of the summed excess and of each part's excess.
  std::vector<double> sum_excess(len + 1, -kInf);
  std::vector<std::vector<double>> part_excess(seqs.size(), std::vector<double>(len + 1, -kInf));
  for (std::size_t n = len; n-- > 0;) {
    double total = 0.0;
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      total += seqs[j][n];
      part_excess[j][n] = std::max(part_excess[j][n + 1], seqs[j][n] - floors[j]);
    }
    sum_excess[n] = std::max(sum_excess[n + 1], total - floor_sum);
  }

  SplitLimitResult result;
  for (double eps : eps_schedule) {
    if (!(eps > 0.0)) throw Error(ErrorKind::kInvalidInput, "eps must be positive");
    SplitStep step{eps, std::nullopt, true};
    for (std::size_t n = 0; n < len; ++n) {
      if (sum_excess[n] <= eps) {
        step.from = n;
        break;
      }
    }
    if (step.from) {
      for (std::size_t j = 0; j < seqs.size(); ++j) {
        if (part_excess[j][*step.from] > eps + slack_for(floors[j])) step.parts_ok = false;
      }
    }
    result.holds = result.holds && step.parts_ok;
    result.steps.push_back(step);
  }
  return result;
}

SplitLimitResult split_tail_sup_validate(const PairwiseFn& f, const PairwiseFn& g,
                                         std::size_t horizon,
                                         const std::vector<double>& eps_schedule) {
  const TailSupTable tf(f, horizon);
  const TailSupTable tg(g, horizon);
  const TailSupTable tfg([&](std::size_t n, std::size_t m) { return f(n, m) + g(n, m); },
                         horizon);
  const double floor = tf.grid_min() + tg.grid_min();

  SplitLimitResult result;
  for (double eps : eps_schedule) {
    if (!(eps > 0.0)) throw Error(ErrorKind::kInvalidInput, "eps must be positive");
    SplitStep step{eps, std::nullopt, true};
    for (std::size_t k = 1; k <= horizon; ++k) {
      if (tfg.at(k) <= floor + eps) {
        step.from = k;
        break;
      }
    }
    if (step.from) {
      const std::size_t k = *step.from;
      step.parts_ok = tf.at(k) <= tf.grid_min() + eps + slack_for(tf.grid_min()) &&
                      tg.at(k) <= tg.grid_min() + eps + slack_for(tg.grid_min());
    }
    result.holds = result.holds && step.parts_ok;
    result.steps.push_back(step);
  }
  return result;
}

L1Check check_l1_bound(const MetricSpace& space, const PairedTrace& trace, double lambda,
                       double s) {
  if (trace.steps() < 2) {
    throw Error(ErrorKind::kInvalidInput, "the l1 bound needs a trace of at least 2 steps");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "lambda must lie in [0, 1)");
  }
  const auto& a = trace.a;
  const auto& b = trace.b;
  L1Check out;
  out.q = space.distance(b.points[1], b.points[2]) + lambda * b.f_values[1] - b.f_values[2];
  out.bound = space.distance(a.points[1], b.points[1]) + a.f_values[1] + out.q / (1.0 - lambda) + s;
  out.worst_excess = -kInf;
  for (std::size_t n = 1; n < a.points.size(); ++n) {
    const double lhs = space.distance(a.points[n], b.points[1]) + a.f_values[n];
    const double excess = lhs - out.bound;
    out.worst_excess = std::max(out.worst_excess, excess);
    if (excess > kBoundSlack && !out.first_violation) {
      out.holds = false;
      out.first_violation = n;
    }
  }
  return out;
}

double u_value(const MetricSpace& space, const PairedTrace& trace, std::size_t m, std::size_t n) {
  return space.distance(trace.a.points[m], trace.b.points[n]) + trace.a.f_values[m] +
         trace.b.f_values[n];
}

namespace {

BoundCertificate start_certificate(const MetricSpace& space, const PairedTrace& trace,
                                   double lambda, double s) {
  if (trace.steps() < 1) {
    throw Error(ErrorKind::kInvalidInput, "the l2 bound needs a trace of at least 1 step");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "lambda must lie in [0, 1)");
  }
  BoundCertificate cert;
  cert.lambda = lambda;
  cert.s = s;
  cert.horizon = trace.steps();
  cert.m = -kInf;
  for (std::size_t k = 1; k <= cert.horizon; ++k) {
    cert.m = std::max({cert.m, u_value(space, trace, k, 1), u_value(space, trace, 1, k)});
  }
  cert.worst_excess = -kInf;
  return cert;
}

void record(BoundCertificate& cert, double u, std::size_t m, std::size_t n) {
  const double p = std::pow(cert.lambda, static_cast<double>(std::min(m, n) - 1));
  const double excess = u - (p * cert.m + (1.0 - p) * cert.s);
  cert.worst_excess = std::max(cert.worst_excess, excess);
  if (excess > kBoundSlack && !cert.first_violation) cert.first_violation = {m, n};
}

}  // namespace

BoundCertificate check_l2_bound(const MetricSpace& space, const PairedTrace& trace,
                                double lambda, double s) {
  BoundCertificate cert = start_certificate(space, trace, lambda, s);
  for (std::size_t m = 1; m <= cert.horizon; ++m) {
    for (std::size_t n = 1; n <= cert.horizon; ++n) record(cert, u_value(space, trace, m, n), m, n);
  }
  return cert;
}

BoundCertificate check_l2_diagonal(const MetricSpace& space, const PairedTrace& trace,
                                   double lambda, double s) {
  BoundCertificate cert = start_certificate(space, trace, lambda, s);
  for (std::size_t n = 1; n <= cert.horizon; ++n) record(cert, u_value(space, trace, n, n), n, n);
  return cert;
}

std::string convergence_in_region(const MetricSpace& space, const Region& region,
                                  const std::vector<Point>& xs, double tol) {
  IterationTrace t;
  t.points = xs;
  const auto limit = detect_limit(space, t, tol);
  if (!limit) return "no Cauchy window";
  if (!region.contains(*limit)) return "limit " + to_text(*limit) + " outside " + region.name();
  const double edge = region.excluded_boundary_distance(*limit);
  if (!(edge > tol)) {
    return "limit " + to_text(*limit) + " within " + format_real(edge) +
           " of a boundary point excluded from " + region.name();
  }
  return {};
}

CdReport cd_falsify(const SetPair& pair, const PairGenerator& gen, std::size_t budget,
                    double tol, std::uint64_t seed) {
  require_positive_tol(tol);
  CdReport report;
  report.tol = tol;
  report.seed = seed;
  report.dist = pair_distance(pair, seed);
  for (std::size_t i = 0; i < budget; ++i) {
    std::mt19937_64 rng(mix_seed(seed, i));
    SequencePair cand = gen(i, rng);
    ++report.tried;
    if (cand.x.empty() || cand.x.size() != cand.y.size()) {
      throw Error(ErrorKind::kInvalidInput,
                  "candidate " + std::to_string(i) + " has mismatched or empty sequences");
    }
    require_members(pair.a, cand.x, "x", i);
    require_members(pair.b, cand.y, "y", i);
    const std::size_t len = cand.x.size();
    report.horizon = std::max(report.horizon, len);

    // Finite-horizon tail sup over the final window; indices are 1-based.
    const std::size_t k = window_start(len) + 1;
    const double sup = tail_sup(
        [&](std::size_t n, std::size_t m) { return pair.space.distance(cand.x[n - 1], cand.y[m - 1]); },
        k, len);
    if (!(std::abs(sup - report.dist) <= tol)) continue;
    ++report.admissible;

    std::string reason = convergence_in_region(pair.space, pair.a, cand.x, tol);
    if (!reason.empty()) {
      report.counterexample = CdCounterexample{i, std::move(cand), std::move(reason)};
      break;
    }
  }
  return report;
}

UcReport uc_falsify(const SetPair& pair, const TripleGenerator& gen, std::size_t budget,
                    double tol, std::uint64_t seed) {
  require_positive_tol(tol);
  UcReport report;
  report.tol = tol;
  report.seed = seed;
  report.dist = pair_distance(pair, seed);
  for (std::size_t i = 0; i < budget; ++i) {
    std::mt19937_64 rng(mix_seed(seed, i));
    SequenceTriple cand = gen(i, rng);
    ++report.tried;
    const std::size_t len = cand.x.size();
    if (len == 0 || cand.z.size() != len || cand.y.size() != len) {
      throw Error(ErrorKind::kInvalidInput,
                  "candidate " + std::to_string(i) + " has mismatched or empty sequences");
    }
    require_members(pair.a, cand.x, "x", i);
    require_members(pair.a, cand.z, "z", i);
    require_members(pair.b, cand.y, "y", i);
    report.horizon = std::max(report.horizon, len);

    bool admissible = true;
    double min_gap = kInf;
    for (std::size_t n = window_start(len); n < len; ++n) {
      const double dx = pair.space.distance(cand.x[n], cand.y[n]);
      const double dz = pair.space.distance(cand.z[n], cand.y[n]);
      if (!(std::abs(dx - report.dist) <= tol) || !(std::abs(dz - report.dist) <= tol)) {
        admissible = false;
        break;
      }
      min_gap = std::min(min_gap, pair.space.distance(cand.x[n], cand.z[n]));
    }
    if (!admissible) continue;
    ++report.admissible;
    if (min_gap > 10.0 * tol) {
      report.counterexample = UcCounterexample{i, std::move(cand), min_gap};
      break;
    }
  }
  return report;
}

}  // namespace cefix
