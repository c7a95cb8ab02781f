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

// Built-in systems and set pairs.

#ifndef CEFIX_INSTANCES_HPP_
#define CEFIX_INSTANCES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cefix/cef.hpp"
#include "cefix/checkers.hpp"
#include "cefix/metric.hpp"

namespace cefix {

// --- The alternating-parity example on R ----------------------------------

/// floor(log2 x) mod 2 with a nonnegative remainder; 0 at x = 0. Throws
/// kInvalidInput for negative or non-finite x.
int alpha_parity(double x);

/// Tx = 2x alpha(x) + (x - 2^floor(log2 x)) (1 - alpha(x)) / 4, T(0) = 0.
double example1_T(double x);

/// T_B on B = (-inf, -1]: with s = -b - 1, s doubles when alpha(s) = 1 and
/// shrinks by 8 otherwise.
double example1_TB(double b);

/// f_A(c) = 4 c alpha(c) on c >= 0 and 0 on c <= -1.
double example1_fa(double c);
/// f_B(c) = 0 on c >= 0 and 4 s alpha(s), s = -c - 1, on c <= -1.
double example1_fb(double c);

/// A = [0, inf), B = (-inf, -1] with dist 1; samples x in [0, 100] and
/// y in [-100, -1].
SetPair example1_pair();

/// The full system with P = {(a, b, a, b)}; lambda defaults to 5/8.
ExternalFactorSystem example1_system(double lambda = 0.625);

/// The same maps with P relaxed to A x B x C x C.
ExternalFactorSystem example1_relaxed_system(double lambda = 0.625);

// --- Single-map systems -----------------------------------------------------

using SelfMap = std::function<Point(const Point&)>;

/// A = B = region, C = {atom 0}, f = 0, T_A = T_B = map, H = atom 0,
/// P = A x B x C^2, dist 0. No checks; negative controls use it directly.
ExternalFactorSystem self_map_system(const std::string& name, const MetricSpace& space,
                                     const Region& region, const SelfMap& map, double lambda);

/// sup over sampled pairs of rho(Tx, Ty) / rho(x, y).
double estimate_lipschitz(const SelfMap& map, const MetricSpace& space, const Region& region,
                          std::size_t samples, std::uint64_t seed);

/// The classical Banach condition as a degenerate system with lambda =
/// lipschitz. Throws kRefuted when the sampled Lipschitz estimate exceeds the
/// declared constant by more than 1e-9, kDomainViolation when the map leaves
/// the region on a sample, and kInvalidInput when lipschitz is outside [0, 1).
ExternalFactorSystem banach_system(const std::string& name, const SelfMap& map,
                                   const MetricSpace& space, const Region& region,
                                   double lipschitz, std::size_t samples = 2000,
                                   std::uint64_t seed = 1);

/// x -> slope * x + offset on R.
ExternalFactorSystem affine_banach_system(double slope, double offset);

// --- Products ---------------------------------------------------------------

/// Component-wise maps on the product pair with the sum metric, f values
/// added, lambda = max, and P the component-wise conjunction.
ExternalFactorSystem product_system(const ExternalFactorSystem& first,
                                    const ExternalFactorSystem& second);

// --- 3-cyclic summing contractions ------------------------------------------

struct CyclicTriple {
  std::string name;
  MetricSpace space;
  std::array<Region, 3> regions;
  /// T on the union, with T(A_i) in A_{i+1}.
  SelfMap map;
  double k = 0.0;
  /// d12, d23, d31.
  std::array<double, 3> gaps{};
};

/// k W0 + (1 - k) D - W1 for x_i in A_i, where W0 = sum of pairwise
/// distances, W1 the same for the images, and D = d12 + d23 + d31.
double bz_residual(const CyclicTriple& ct, const Point& x1, const Point& x2, const Point& x3);

struct BzCertificate {
  double min_residual = 0.0;
  bool cyclic = true;
  std::size_t samples = 0;
};

/// Samples triples and images; `cyclic` is false when T(A_i) leaves A_{i+1}.
BzCertificate certify_bz(const CyclicTriple& ct, std::size_t samples, std::uint64_t seed);

/// (A2, A3, A1) with the gaps rotated to match.
CyclicTriple rotate(const CyclicTriple& ct);

/// A = A1 x A1, B = A2 x A3, C = (A2 x A3) u {atom 1},
/// P = {((a, a), (b, c), 1, (b, c))}, T_A = T^3 on both coordinates,
/// H_A = 1, T_B = H_B = T^3 on both coordinates, f_A = 0,
/// f_B(b, c) = rho(b, c), f_B(1) = d23, lambda = k^3. Throws kRefuted when
/// the sampled (bz) residual falls below -1e-10 or T is not cyclic.
ExternalFactorSystem cyclic3_reduce(const CyclicTriple& ct, std::size_t samples = 2000,
                                    std::uint64_t seed = 1);

/// Segments [0,1] x {0}, [0,1] x {1}, [0,1] x {2} in Euclidean R^2 with
/// T(s, h_i) = (1/2 + (s - 1/2) / 2, h_{i+1}); k = 1/2, gaps 1, 1, 2.
CyclicTriple affine_cyclic_example();

/// {10}, {20}, {30} in R, T cycling through them; k = 1/2.
CyclicTriple singleton_cyclic_example();

struct BestProximityResult {
  std::array<std::optional<Point>, 3> z;
  std::array<double, 3> gap_residuals{};
  std::array<double, 3> cycle_residuals{};
  bool decided = false;
  std::array<std::size_t, 3> steps{};
};

/// z_i from the diagonal limit of the i-th role-rotated reduction, started
/// at (starts[i], starts[i]) against (starts[i+1], starts[i+2]). The three
/// runs execute concurrently. `decided` is false when any run misses its
/// Cauchy window.
BestProximityResult cyclic3_solve(const CyclicTriple& ct, const std::array<Point, 3>& starts,
                                  std::size_t max_steps, double tol);

// --- Named set pairs for the property falsifiers ------------------------------

struct PairInstance {
  std::string name;
  std::string description;
  SetPair pair;
  /// Generators depend on the falsifier's tol: admissible candidates approach
  /// their targets to well within it.
  std::function<PairGenerator(double tol)> cd;
  std::function<TripleGenerator(double tol)> uc;
};

/// e1-pair, open-interval-pair, circle-origin, overlap-pair.
std::vector<std::string> pair_instance_names();
/// Throws kInvalidInput for unknown names.
PairInstance pair_instance(const std::string& name);

/// A pair of real intervals with its exact gap and interval generators.
PairInstance interval_pair_instance(const std::string& name, const Interval& a,
                                    const Interval& b);

}  // namespace cefix

#endif  // CEFIX_INSTANCES_HPP_
