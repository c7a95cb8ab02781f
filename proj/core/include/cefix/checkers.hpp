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

// Finite-data validators for split limits, tail sups and decay bounds, plus
// budgeted falsifiers for the UC and CD properties of a set pair.
//
// Indexing follows the iterated sequences: index 0 is the initial guess and
// bounds are stated for indices n, m >= 1.

#ifndef CEFIX_CHECKERS_HPP_
#define CEFIX_CHECKERS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cefix/iterate.hpp"
#include "cefix/metric.hpp"

namespace cefix {

using PairwiseFn = std::function<double(std::size_t n, std::size_t m)>;

/// sup over n, m in [k, N] of f(n, m). Throws kInvalidInput when the window
/// is empty (k > N or k == 0).
double tail_sup(const PairwiseFn& f, std::size_t k, std::size_t horizon);

/// tail_sup for every k in [1, N], built in O(N^2).
class TailSupTable {
 public:
  TailSupTable(const PairwiseFn& f, std::size_t horizon);

  std::size_t horizon() const noexcept { return values_.size(); }
  /// The value for 1 <= k <= horizon.
  double at(std::size_t k) const;
  /// inf over the whole grid [1, N]^2.
  double grid_min() const noexcept { return min_; }

 private:
  std::vector<double> values_;
  double min_;
};

/// Outcome of one epsilon of a split-limit check.
struct SplitStep {
  double eps = 0.0;
  /// First index from which the summed criterion holds to the end, if any.
  std::optional<std::size_t> from;
  bool parts_ok = true;
};

struct SplitLimitResult {
  bool holds = true;
  std::vector<SplitStep> steps;
};

/// Sequences whose sum settles within eps of the summed floors must each
/// settle within eps of their own floor. Accepts two or three sequences of
/// equal length. Throws kInvalidInput when a floor exceeds a term by more
/// than 1e-12 or the shapes disagree.
SplitLimitResult split_limit_validate(const std::vector<std::vector<double>>& seqs,
                                      const std::vector<double>& floors,
                                      const std::vector<double>& eps_schedule);

/// The pairwise analogue: if the tail sup of f + g reaches inf f + inf g
/// within eps, the tail sups of f and g reach their infima within eps.
/// Infima are taken over the finite grid [1, N]^2.
SplitLimitResult split_tail_sup_validate(const PairwiseFn& f, const PairwiseFn& g,
                                         std::size_t horizon,
                                         const std::vector<double>& eps_schedule);

struct L1Check {
  bool holds = true;
  double q = 0.0;
  double bound = 0.0;
  std::optional<std::size_t> first_violation;
  /// max over n of lhs - bound.
  double worst_excess = 0.0;
};

/// rho(x_n, y_1) + f_A(u_n) <= rho(x_1, y_1) + f_A(u_1) + Q / (1 - lambda) + S
/// for every n >= 1, with Q = rho(y_1, y_2) + lambda f_B(v_1) - f_B(v_2) and
/// 1e-10 slack. The trace needs at least two steps.
L1Check check_l1_bound(const MetricSpace& space, const PairedTrace& trace, double lambda,
                       double s);

struct BoundCertificate {
  double m = 0.0;
  double lambda = 0.0;
  double s = 0.0;
  /// (m, n) of the first U(m, n) above its bound, scanning m then n.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
  std::size_t horizon = 0;
  double worst_excess = 0.0;
};

/// U(m, n) = rho(x_m, y_n) + f_A(u_m) + f_B(v_n).
double u_value(const MetricSpace& space, const PairedTrace& trace, std::size_t m, std::size_t n);

/// Checks U(m, n) <= lambda^(min(m,n)-1) M + (1 - lambda^(min(m,n)-1)) S over
/// [1, N]^2 with 1e-10 slack, M = max(sup_k U(k, 1), sup_k U(1, k)).
BoundCertificate check_l2_bound(const MetricSpace& space, const PairedTrace& trace,
                                double lambda, double s);

/// Same over the diagonal U(n, n) only; O(N).
BoundCertificate check_l2_diagonal(const MetricSpace& space, const PairedTrace& trace,
                                   double lambda, double s);

/// Candidate sequences for the falsifiers.
struct SequencePair {
  std::vector<Point> x;
  std::vector<Point> y;
};

struct SequenceTriple {
  std::vector<Point> x;
  std::vector<Point> z;
  std::vector<Point> y;
};

using PairGenerator = std::function<SequencePair(std::size_t index, std::mt19937_64& rng)>;
using TripleGenerator = std::function<SequenceTriple(std::size_t index, std::mt19937_64& rng)>;

struct CdCounterexample {
  std::size_t index = 0;
  SequencePair sequences;
  std::string reason;
};

struct CdReport {
  std::optional<CdCounterexample> counterexample;
  std::size_t tried = 0;
  std::size_t admissible = 0;
  std::size_t horizon = 0;
  double dist = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

/// "Converges in A": Cauchy window met, last point in A, and farther than
/// tol from every boundary point A excludes. Empty string when it converges,
/// otherwise the reason it does not.
std::string convergence_in_region(const MetricSpace& space, const Region& region,
                                  const std::vector<Point>& xs, double tol);

/// Searches `budget` generated pairs for one whose tail sup of
/// rho(x_n, y_m) over the final window is within tol of dist(A,B) but whose
/// {x_n} does not converge in A.
CdReport cd_falsify(const SetPair& pair, const PairGenerator& gen, std::size_t budget,
                    double tol, std::uint64_t seed);

struct UcCounterexample {
  std::size_t index = 0;
  SequenceTriple sequences;
  double min_tail_gap = 0.0;
};

struct UcReport {
  std::optional<UcCounterexample> counterexample;
  std::size_t tried = 0;
  std::size_t admissible = 0;
  std::size_t horizon = 0;
  double dist = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

/// Searches `budget` generated triples for one with rho(x_n, y_n) and
/// rho(z_n, y_n) within tol of dist(A,B) over the final window while
/// rho(x_n, z_n) stays above 10 tol there.
UcReport uc_falsify(const SetPair& pair, const TripleGenerator& gen, std::size_t budget,
                    double tol, std::uint64_t seed);

}  // namespace cefix

#endif  // CEFIX_CHECKERS_HPP_
