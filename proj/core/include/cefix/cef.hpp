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

// Contraction map sets with an external factor.
//
// A system pairs two self-maps T_A : A x C -> A and T_B : B x C -> B with
// update maps H_A, H_B into an auxiliary set C, penalty functions f_A, f_B on
// C, a relation P in A x B x C^2 and a constant lambda in [0, 1). It is a
// contraction when, for every (x, y, u, v) in P,
//
//   rho(T_A(x,u), T_B(y,v)) + f_A(H_A(x,u)) + f_B(H_B(y,v))
//       <= lambda * (rho(x,y) + f_A(u) + f_B(v)) + (1 - lambda) * S
//
// with S = dist(A,B) + inf f_A + inf f_B, P is invariant under the iterated
// sequences, and both infima are finite. Certification here is sample-based:
// verdicts are "certified-on-samples" or "refuted", never "proved".

#ifndef CEFIX_CEF_HPP_
#define CEFIX_CEF_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cefix/metric.hpp"
#include "cefix/point.hpp"

namespace cefix {

/// Residuals below -kResidualTolerance refute the contraction inequality.
inline constexpr double kResidualTolerance = 1e-10;

using PointMap = std::function<Point(const Point&, const CElement&)>;
using FactorMap = std::function<CElement(const Point&, const CElement&)>;

struct ExternalFactor {
  std::function<double(const CElement&)> f;
  /// inf over C of f; unset until supplied or estimated.
  std::optional<Estimate> infimum;

  double operator()(const CElement& c) const { return f(c); }
};

/// The auxiliary set C, described for reports and sampled for infimum
/// estimation.
struct CUniverse {
  std::string description;
  std::function<std::vector<CElement>(std::uint64_t seed, std::size_t n)> sample;
  /// Number of parts in each element (1 for built-ins, summed by products).
  std::size_t arity = 1;
};

struct Quadruple {
  Point x;
  Point y;
  CElement u;
  CElement v;

  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

struct RelationP {
  std::function<bool(const Quadruple&)> contains;
  std::function<std::vector<Quadruple>(std::uint64_t seed, std::size_t n)> sample;
};

/// One side's maps: x' = t(x, c), c' = h(x, c), scored by f.
struct SideMaps {
  PointMap t;
  FactorMap h;
  ExternalFactor f;
};

struct ExternalFactorSystem {
  std::string name;
  SetPair pair;
  CUniverse c;
  SideMaps a;
  SideMaps b;
  RelationP p;
  double lambda = 0.0;
};

/// dist(A,B) + inf f_A + inf f_B. Throws kNotCertified when any of the three
/// is unknown.
double s_value(const ExternalFactorSystem& system);

/// Estimates inf f over `samples` elements of C. Exact infima are returned
/// unchanged.
Estimate estimate_infimum(const ExternalFactor& factor, const CUniverse& c,
                          std::size_t samples, std::uint64_t seed);

/// The system with every unknown infimum and distance filled by estimates.
ExternalFactorSystem with_estimates(ExternalFactorSystem system, std::size_t samples,
                                    std::uint64_t seed);

/// Both sides of the contraction inequality at one quadruple.
struct ContractionTerms {
  double image;  ///< rho(T_A x, T_B y) + f_A(H_A) + f_B(H_B)
  double base;   ///< rho(x, y) + f_A(u) + f_B(v)
  double s;      ///< S
};

ContractionTerms contraction_terms(const ExternalFactorSystem& system, const Quadruple& q);

/// RHS - LHS of the contraction inequality at q; nonnegative iff it holds.
/// Throws kInvalidInput when q is not in P.
double contraction_residual(const ExternalFactorSystem& system, const Quadruple& q);

struct PInvarianceResult {
  bool holds = true;
  /// (n, m) of the first cross-pairing (x_n, y_m, u_n, v_m) outside P.
  std::optional<std::pair<std::size_t, std::size_t>> first_failure;
  std::optional<Quadruple> failing;
};

/// Iterates both sides `depth` steps from q and checks (x_n, y_m, u_n, v_m)
/// in P for all 1 <= n, m <= depth, each level's diagonal first.
PInvarianceResult check_p_invariance(const ExternalFactorSystem& system, const Quadruple& q,
                                     std::size_t depth);

enum class Verdict { kCertifiedOnSamples, kRefuted };

std::string_view to_string(Verdict v);

struct VerifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t invariance_depth = 8;
  std::size_t invariance_starts = 16;
  /// Used only when an infimum or dist(A,B) must be estimated.
  std::size_t estimation_samples = 2000;
};

struct CertificationReport {
  Verdict verdict = Verdict::kRefuted;
  double min_residual = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double s = 0.0;
  /// Quadruple with the least residual when that residual refutes.
  std::optional<Quadruple> witness;
  bool infima_finite = false;
  bool infima_exact = false;
  bool p_invariant = false;
  std::size_t invariance_depth = 0;
  std::optional<Quadruple> p_invariance_start;
  std::optional<PInvarianceResult> p_invariance_failure;
};

/// Sample-based check of all three contraction conditions.
CertificationReport verify_contraction(const ExternalFactorSystem& system,
                                       const VerifyOptions& options);
CertificationReport verify_contraction(const ExternalFactorSystem& system, std::size_t samples,
                                       std::uint64_t seed);

/// A lower estimate of the least admissible lambda: the sup over sampled
/// quadruples of (image - S) / (base - S), clipped to [0, 1]. Quadruples
/// with base - S <= 1e-12 are skipped; if all are, throws
/// kEstimationFailure.
double estimate_min_lambda(const ExternalFactorSystem& system, std::size_t samples,
                           std::uint64_t seed);

}  // namespace cefix

#endif  // CEFIX_CEF_HPP_
