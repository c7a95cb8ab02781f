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

// Metric spaces, regions and set pairs.
//
// Everything here is immutable after construction and all distance,
// membership and sampling functions are pure, so values may be shared
// read-only across threads.

#ifndef CEFIX_METRIC_HPP_
#define CEFIX_METRIC_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cefix/point.hpp"

namespace cefix {

/// A real value that is either supplied analytically or estimated from
/// samples.
struct Estimate {
  double value = 0.0;
  bool exact = false;
};

class MetricSpace {
 public:
  using DistanceFn = std::function<double(const Point&, const Point&)>;

  /// `dim` == 0 marks an opaque universe whose points are not dimension
  /// checked.
  MetricSpace(std::string name, std::size_t dim, DistanceFn distance);

  /// R with |x - y|.
  static MetricSpace real_line();
  /// R^n with the sum (l1) metric.
  static MetricSpace sum_metric(std::size_t dim);
  static MetricSpace euclidean(std::size_t dim);
  /// X1 x X2 with d = rho1 + rho2; points are concatenated coordinates.
  static MetricSpace product(const MetricSpace& first, const MetricSpace& second);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_opaque() const noexcept { return dim_ == 0; }

  /// rho(x, y); throws kInvalidInput on a dimension mismatch.
  double distance(const Point& x, const Point& y) const;

 private:
  std::string name_;
  std::size_t dim_;
  DistanceFn distance_;
};

inline double distance(const MetricSpace& space, const Point& x, const Point& y) {
  return space.distance(x, y);
}

class Region {
 public:
  using Membership = std::function<bool(const Point&)>;
  using Sampler = std::function<std::vector<Point>(std::uint64_t seed, std::size_t n)>;
  using BoundaryDistance = std::function<double(const Point&)>;

  Region(std::string name, Membership contains, Sampler sampler, bool complete,
         BoundaryDistance excluded_boundary = {});

  const std::string& name() const noexcept { return name_; }
  bool contains(const Point& p) const { return contains_(p); }

  /// Author-asserted completeness of the region under the space metric.
  bool complete() const noexcept { return complete_; }

  /// Raw sampler output; use sample_region() for the checked version.
  std::vector<Point> draw(std::uint64_t seed, std::size_t n) const {
    return sampler_(seed, n);
  }

  /// Distance from `p` to the nearest boundary point that the region
  /// excludes (e.g. the open end of an interval). +inf for closed regions.
  double excluded_boundary_distance(const Point& p) const;

 private:
  std::string name_;
  Membership contains_;
  Sampler sampler_;
  bool complete_;
  BoundaryDistance excluded_boundary_;
};

/// A real interval; infinite bounds are allowed and always open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }

  bool contains(double x) const;
  bool is_closed() const;
};

/// Distance between two real intervals.
double interval_gap(const Interval& a, const Interval& b);

/// An interval of R. Samples are drawn from the interval truncated to
/// `sample_lo`..`sample_hi`, which must overlap it.
Region make_interval(const Interval& iv, double sample_lo, double sample_hi);
/// Same, with the sampling window defaulting to 100 units past any finite end.
Region make_interval(const Interval& iv);
Region make_singleton(const Point& p);
/// The circle {p : |p - center|_2 = radius} in R^2.
Region make_circle(const Point& center, double radius);
/// R1 x R2; points concatenate the first factor's `head_dim` coordinates
/// with the second's.
Region make_product(const Region& first, const Region& second, std::size_t head_dim);

/// `n` points of `region`, deterministic in `seed`. Throws
/// kEstimationFailure when the sampler runs dry and kInvalidInput when it
/// returns a non-member.
std::vector<Point> sample_region(const Region& region, std::size_t n, std::uint64_t seed);

/// Regions A and B of one space with dist(A, B), either author-supplied
/// (exact) or previously estimated. Unset means "estimate on demand".
struct SetPair {
  MetricSpace space;
  Region a;
  Region b;
  std::optional<Estimate> dist;
};

/// dist(A, B): the supplied exact value, or the minimum over
/// samples x samples cross distances (an upper estimate of the infimum).
Estimate set_distance(const SetPair& pair, std::size_t samples, std::uint64_t seed);

/// The pair with its distance estimated by set_distance when not exact.
SetPair with_estimated_distance(SetPair pair, std::size_t samples, std::uint64_t seed);

/// (A1 x A2, B1 x B2) in (X1 x X2, rho1 + rho2). The distance is exact and
/// equal to the sum when both inputs are exact.
SetPair product_space(const SetPair& first, const SetPair& second);

/// Seed mixing for derived sub-streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace cefix

#endif  // CEFIX_METRIC_HPP_
