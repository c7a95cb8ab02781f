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

#include "cefix/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "cefix/error.hpp"

namespace cefix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const Point& p, std::size_t dim, const std::string& space) {
  if (p.dim() != dim) {
    throw Error(ErrorKind::kInvalidInput,
                "point of dimension " + std::to_string(p.dim()) + " used in " +
                    space + " of dimension " + std::to_string(dim));
  }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MetricSpace::MetricSpace(std::string name, std::size_t dim, DistanceFn distance)
    : name_(std::move(name)), dim_(dim), distance_(std::move(distance)) {}

MetricSpace MetricSpace::real_line() {
  return MetricSpace("R", 1, [](const Point& x, const Point& y) {
    return std::abs(x[0] - y[0]);
  });
}

MetricSpace MetricSpace::sum_metric(std::size_t dim) {
  return MetricSpace("R^" + std::to_string(dim) + "/l1", dim,
                     [dim](const Point& x, const Point& y) {
                       double s = 0.0;
                       for (std::size_t i = 0; i < dim; ++i) s += std::abs(x[i] - y[i]);
                       return s;
                     });
}

MetricSpace MetricSpace::euclidean(std::size_t dim) {
  return MetricSpace("R^" + std::to_string(dim) + "/l2", dim,
                     [dim](const Point& x, const Point& y) {
                       if (dim == 2) return std::hypot(x[0] - y[0], x[1] - y[1]);
                       double s = 0.0;
                       for (std::size_t i = 0; i < dim; ++i) {
                         const double d = x[i] - y[i];
                         s += d * d;
                       }
                       return std::sqrt(s);
                     });
}

MetricSpace MetricSpace::product(const MetricSpace& first, const MetricSpace& second) {
  if (first.is_opaque() || second.is_opaque()) {
    throw Error(ErrorKind::kInvalidInput, "product of opaque spaces is not supported");
  }
  const std::size_t head = first.dim();
  return MetricSpace("(" + first.name() + ")x(" + second.name() + ")",
                     first.dim() + second.dim(),
                     [first, second, head](const Point& x, const Point& y) {
                       auto [x1, x2] = split(x, head);
                       auto [y1, y2] = split(y, head);
                       return first.distance(x1, y1) + second.distance(x2, y2);
                     });
}

double MetricSpace::distance(const Point& x, const Point& y) const {
  if (!is_opaque()) {
    check_dim(x, dim_, name_);
    check_dim(y, dim_, name_);
  }
  return distance_(x, y);
}

Region::Region(std::string name, Membership contains, Sampler sampler, bool complete,
               BoundaryDistance excluded_boundary)
    : name_(std::move(name)),
      contains_(std::move(contains)),
      sampler_(std::move(sampler)),
      complete_(complete),
      excluded_boundary_(std::move(excluded_boundary)) {}

double Region::excluded_boundary_distance(const Point& p) const {
  return excluded_boundary_ ? excluded_boundary_(p) : kInf;
}

bool Interval::contains(double x) const {
  if (std::isnan(x)) return false;
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool Interval::is_closed() const {
  return (lo_closed || std::isinf(lo)) && (hi_closed || std::isinf(hi));
}

double interval_gap(const Interval& a, const Interval& b) {
  return std::max({0.0, a.lo - b.hi, b.lo - a.hi});
}

namespace {

std::string describe(const Interval& iv) {
  return std::string(iv.lo_closed && std::isfinite(iv.lo) ? "[" : "(") +
         format_real(iv.lo) + "," + format_real(iv.hi) +
         (iv.hi_closed && std::isfinite(iv.hi) ? "]" : ")");
}

}  // namespace

Region make_interval(const Interval& iv, double sample_lo, double sample_hi) {
  // Infinite ends are never attained.
  Interval normalized = iv;
  if (std::isinf(normalized.lo)) normalized.lo_closed = false;
  if (std::isinf(normalized.hi)) normalized.hi_closed = false;

  const double wlo = std::max(normalized.lo, sample_lo);
  const double whi = std::min(normalized.hi, sample_hi);
  if (!(wlo <= whi) || !std::isfinite(wlo) || !std::isfinite(whi)) {
    throw Error(ErrorKind::kInvalidInput,
                "sampling window does not meet interval " + describe(normalized));
  }

  auto sampler = [normalized, wlo, whi](std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(n);
    // Stratified jitter: one draw per cell of width (whi - wlo) / n.
    for (std::size_t i = 0; i < n; ++i) {
      double x = wlo;
      bool ok = false;
      for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
        x = wlo + (static_cast<double>(i) + unit(rng)) / static_cast<double>(n) * (whi - wlo);
        x = std::clamp(x, wlo, whi);
        ok = normalized.contains(x);
      }
      if (!ok) break;  // exhausted; sample_region reports the shortfall
      out.push_back(Point::scalar(x));
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  };

  auto excluded = [normalized](const Point& p) {
    double d = kInf;
    if (!normalized.lo_closed && std::isfinite(normalized.lo)) {
      d = std::min(d, std::abs(p[0] - normalized.lo));
    }
    if (!normalized.hi_closed && std::isfinite(normalized.hi)) {
      d = std::min(d, std::abs(p[0] - normalized.hi));
    }
    return d;
  };

  return Region(
      describe(normalized),
      [normalized](const Point& p) { return p.dim() == 1 && normalized.contains(p[0]); },
      std::move(sampler), normalized.is_closed(), std::move(excluded));
}

Region make_interval(const Interval& iv) {
  constexpr double kWindow = 100.0;
  double lo = iv.lo;
  double hi = iv.hi;
  if (std::isinf(lo) && std::isinf(hi)) {
    lo = -kWindow;
    hi = kWindow;
  } else if (std::isinf(lo)) {
    lo = hi - kWindow;
  } else if (std::isinf(hi)) {
    hi = lo + kWindow;
  }
  return make_interval(iv, lo, hi);
}

Region make_singleton(const Point& p) {
  return Region(
      "{" + to_text(p) + "}", [p](const Point& q) { return q == p; },
      [p](std::uint64_t, std::size_t n) { return std::vector<Point>(n, p); }, true);
}

Region make_circle(const Point& center, double radius) {
  if (center.dim() != 2 || !(radius > 0)) {
    throw Error(ErrorKind::kInvalidInput, "circle needs a 2-d center and radius > 0");
  }
  auto contains = [center, radius](const Point& p) {
    if (p.dim() != 2) return false;
    const double r = std::hypot(p[0] - center[0], p[1] - center[1]);
    return std::abs(r - radius) <= 1e-12 * std::max(1.0, radius);
  };
  auto sampler = [center, radius](std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = angle(rng);
      out.push_back(Point{center[0] + radius * std::cos(t), center[1] + radius * std::sin(t)});
    }
    return out;
  };
  return Region("circle(" + to_text(center) + ";r=" + format_real(radius) + ")",
                std::move(contains), std::move(sampler), true);
}

Region make_product(const Region& first, const Region& second, std::size_t head_dim) {
  auto contains = [first, second, head_dim](const Point& p) {
    if (p.dim() < head_dim) return false;
    auto [a, b] = split(p, head_dim);
    return first.contains(a) && second.contains(b);
  };
  auto sampler = [first, second](std::uint64_t seed, std::size_t n) {
    auto xs = first.draw(mix_seed(seed, 1), n);
    auto ys = second.draw(mix_seed(seed, 2), n);
    std::vector<Point> out;
    const std::size_t m = std::min(xs.size(), ys.size());
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(concat(xs[i], ys[i]));
    return out;
  };
  auto excluded = [first, second, head_dim](const Point& p) {
    auto [a, b] = split(p, head_dim);
    return std::min(first.excluded_boundary_distance(a),
                    second.excluded_boundary_distance(b));
  };
  return Region(first.name() + "x" + second.name(), std::move(contains),
                std::move(sampler), first.complete() && second.complete(),
                std::move(excluded));
}

std::vector<Point> sample_region(const Region& region, std::size_t n, std::uint64_t seed) {
  if (n == 0) return {};
  auto points = region.draw(seed, n);
  if (points.size() < n) {
    throw Error(ErrorKind::kEstimationFailure,
                "sampler for " + region.name() + " produced " +
                    std::to_string(points.size()) + " of " + std::to_string(n) + " points");
  }
  points.resize(n);
  for (const auto& p : points) {
    if (!region.contains(p)) {
      throw Error(ErrorKind::kInvalidInput,
                  "sampler for " + region.name() + " returned non-member " + to_text(p));
    }
  }
  return points;
}

Estimate set_distance(const SetPair& pair, std::size_t samples, std::uint64_t seed) {
  if (pair.dist && pair.dist->exact) return *pair.dist;
  if (samples == 0) {
    throw Error(ErrorKind::kInvalidInput, "distance estimation needs samples >= 1");
  }
  auto as = pair.a.draw(mix_seed(seed, 11), samples);
  auto bs = pair.b.draw(mix_seed(seed, 12), samples);
  if (as.empty() || bs.empty()) {
    throw Error(ErrorKind::kEstimationFailure,
                "empty sample for " + (as.empty() ? pair.a.name() : pair.b.name()));
  }
  double best = kInf;
  for (const auto& a : as) {
    for (const auto& b : bs) best = std::min(best, pair.space.distance(a, b));
  }
  return {best, false};
}

SetPair with_estimated_distance(SetPair pair, std::size_t samples, std::uint64_t seed) {
  pair.dist = set_distance(pair, samples, seed);
  return pair;
}

SetPair product_space(const SetPair& first, const SetPair& second) {
  const std::size_t head = first.space.dim();
  std::optional<Estimate> dist;
  if (first.dist && second.dist) {
    dist = Estimate{first.dist->value + second.dist->value,
                    first.dist->exact && second.dist->exact};
  }
  return SetPair{MetricSpace::product(first.space, second.space),
                 make_product(first.a, second.a, head),
                 make_product(first.b, second.b, head), dist};
}

}  // namespace cefix
