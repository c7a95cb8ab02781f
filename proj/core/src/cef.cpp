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

#include "cefix/cef.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cefix/error.hpp"

namespace cefix {

namespace {

bool in_p(const ExternalFactorSystem& system, const Quadruple& q) {
  return system.pair.a.contains(q.x) && system.pair.b.contains(q.y) && system.p.contains(q);
}

void require_in_p(const ExternalFactorSystem& system, const Quadruple& q) {
  if (!in_p(system, q)) {
    throw Error(ErrorKind::kInvalidInput,
                "quadruple (" + to_text(q.x) + ", " + to_text(q.y) + ", " + to_text(q.u) +
                    ", " + to_text(q.v) + ") is not in P of " + system.name);
  }
}

bool finite_infimum(const ExternalFactor& f) {
  return f.infimum && std::isfinite(f.infimum->value);
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::kCertifiedOnSamples ? "certified-on-samples" : "refuted";
}

double s_value(const ExternalFactorSystem& system) {
  if (!system.pair.dist) {
    throw Error(ErrorKind::kNotCertified, "dist(A,B) unknown for " + system.name);
  }
  if (!system.a.f.infimum || !system.b.f.infimum) {
    throw Error(ErrorKind::kNotCertified,
                std::string("missing infimum of ") + (system.a.f.infimum ? "f_B" : "f_A") +
                    " for " + system.name);
  }
  return system.pair.dist->value + system.a.f.infimum->value + system.b.f.infimum->value;
}

Estimate estimate_infimum(const ExternalFactor& factor, const CUniverse& c,
                          std::size_t samples, std::uint64_t seed) {
  if (factor.infimum && factor.infimum->exact) return *factor.infimum;
  if (!c.sample) {
    throw Error(ErrorKind::kEstimationFailure, "no sampler for C = " + c.description);
  }
  const auto elements = c.sample(seed, samples);
  if (elements.empty()) {
    throw Error(ErrorKind::kEstimationFailure, "empty sample of C = " + c.description);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : elements) best = std::min(best, factor(e));
  return {best, false};
}

ExternalFactorSystem with_estimates(ExternalFactorSystem system, std::size_t samples,
                                    std::uint64_t seed) {
  if (!system.pair.dist || !system.pair.dist->exact) {
    system.pair = with_estimated_distance(std::move(system.pair), samples, mix_seed(seed, 21));
  }
  if (!system.a.f.infimum || !system.a.f.infimum->exact) {
    system.a.f.infimum = estimate_infimum(system.a.f, system.c, samples, mix_seed(seed, 22));
  }
  if (!system.b.f.infimum || !system.b.f.infimum->exact) {
    system.b.f.infimum = estimate_infimum(system.b.f, system.c, samples, mix_seed(seed, 23));
  }
  return system;
}

ContractionTerms contraction_terms(const ExternalFactorSystem& system, const Quadruple& q) {
  const auto& rho = system.pair.space;
  const Point tx = system.a.t(q.x, q.u);
  const Point ty = system.b.t(q.y, q.v);
  const CElement hx = system.a.h(q.x, q.u);
  const CElement hy = system.b.h(q.y, q.v);
  ContractionTerms terms{
      rho.distance(tx, ty) + system.a.f(hx) + system.b.f(hy),
      rho.distance(q.x, q.y) + system.a.f(q.u) + system.b.f(q.v),
      s_value(system),
  };
  if (!std::isfinite(terms.image) || !std::isfinite(terms.base)) {
    throw Error(ErrorKind::kNumericFailure,
                "non-finite contraction terms at x=" + to_text(q.x) + ", y=" + to_text(q.y));
  }
  return terms;
}

double contraction_residual(const ExternalFactorSystem& system, const Quadruple& q) {
  require_in_p(system, q);
  const auto t = contraction_terms(system, q);
  return system.lambda * t.base + (1.0 - system.lambda) * t.s - t.image;
}

PInvarianceResult check_p_invariance(const ExternalFactorSystem& system, const Quadruple& q,
                                     std::size_t depth) {
  require_in_p(system, q);

  std::vector<Point> xs{q.x};
  std::vector<CElement> us{q.u};
  std::vector<Point> ys{q.y};
  std::vector<CElement> vs{q.v};
  for (std::size_t n = 0; n < depth; ++n) {
    xs.push_back(system.a.t(xs[n], us[n]));
    us.push_back(system.a.h(xs[n], us[n]));
    ys.push_back(system.b.t(ys[n], vs[n]));
    vs.push_back(system.b.h(ys[n], vs[n]));
  }

  PInvarianceResult result;
  auto probe = [&](std::size_t n, std::size_t m) {
    Quadruple cross{xs[n], ys[m], us[n], vs[m]};
    if (in_p(system, cross)) return true;
    result.holds = false;
    result.first_failure = {n, m};
    result.failing = std::move(cross);
    return false;
  };
  for (std::size_t level = 1; level <= depth; ++level) {
    if (!probe(level, level)) return result;
    for (std::size_t j = 1; j < level; ++j) {
      if (!probe(level, j) || !probe(j, level)) return result;
    }
  }
  return result;
}

CertificationReport verify_contraction(const ExternalFactorSystem& system,
                                       const VerifyOptions& options) {
  if (options.samples == 0) {
    throw Error(ErrorKind::kInvalidInput, "verify_contraction needs samples >= 1");
  }
  const bool needs_estimates = !system.pair.dist || !system.a.f.infimum || !system.b.f.infimum;
  const ExternalFactorSystem sys =
      needs_estimates ? with_estimates(system, options.estimation_samples, options.seed)
                      : system;

  CertificationReport report;
  report.samples = options.samples;
  report.seed = options.seed;
  report.lambda = sys.lambda;
  report.invariance_depth = options.invariance_depth;
  report.infima_finite = finite_infimum(sys.a.f) && finite_infimum(sys.b.f);
  report.infima_exact = report.infima_finite && sys.a.f.infimum->exact &&
                        sys.b.f.infimum->exact && sys.pair.dist && sys.pair.dist->exact;

  const auto quads = sys.p.sample(options.seed, options.samples);
  if (quads.empty()) {
    throw Error(ErrorKind::kEstimationFailure, "P sampler returned no quadruples");
  }

  report.min_residual = -std::numeric_limits<double>::infinity();
  if (report.infima_finite) {
    report.s = s_value(sys);
    report.min_residual = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < quads.size(); ++i) {
      const double r = contraction_residual(sys, quads[i]);
      if (r < report.min_residual) {
        report.min_residual = r;
        argmin = i;
      }
    }
    if (report.min_residual < -kResidualTolerance) report.witness = quads[argmin];
  }

  report.p_invariant = true;
  const std::size_t starts = std::min(options.invariance_starts, quads.size());
  for (std::size_t i = 0; i < starts; ++i) {
    auto inv = check_p_invariance(sys, quads[i], options.invariance_depth);
    if (!inv.holds) {
      report.p_invariant = false;
      report.p_invariance_start = quads[i];
      report.p_invariance_failure = std::move(inv);
      break;
    }
  }

  const bool residual_ok = report.min_residual >= -kResidualTolerance;
  report.verdict = residual_ok && report.infima_finite && report.p_invariant
                       ? Verdict::kCertifiedOnSamples
                       : Verdict::kRefuted;
  return report;
}

CertificationReport verify_contraction(const ExternalFactorSystem& system, std::size_t samples,
                                       std::uint64_t seed) {
  VerifyOptions options;
  options.samples = samples;
  options.seed = seed;
  return verify_contraction(system, options);
}

double estimate_min_lambda(const ExternalFactorSystem& system, std::size_t samples,
                           std::uint64_t seed) {
  const auto quads = system.p.sample(seed, samples);
  double best = 0.0;
  bool any = false;
  for (const auto& q : quads) {
    const auto t = contraction_terms(system, q);
    const double denom = t.base - t.s;
    if (denom <= 1e-12) continue;
    any = true;
    best = std::max(best, (t.image - t.s) / denom);
  }
  if (!any) {
    throw Error(ErrorKind::kEstimationFailure,
                "every sampled quadruple of " + system.name + " is degenerate (base <= S)");
  }
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace cefix
