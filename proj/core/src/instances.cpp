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

#include "cefix/instances.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

#include "cefix/error.hpp"
#include "cefix/iterate.hpp"

namespace cefix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sampling windows for the unbounded sides of the example.
constexpr double kExampleWindow = 100.0;

}  // namespace

int alpha_parity(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::kInvalidInput, "alpha needs a finite x >= 0, got " + format_real(x));
  }
  if (x == 0.0) return 0;
  // ilogb is floor(log2 x) exactly; std::log2 can round up just below a power of 2.
  const int e = std::ilogb(x);
  return ((e % 2) + 2) % 2;
}

double example1_T(double x) {
  const int a = alpha_parity(x);
  if (x == 0.0) return 0.0;
  if (a == 1) return 2.0 * x;
  return (x - std::ldexp(1.0, std::ilogb(x))) / 4.0;
}

double example1_TB(double b) {
  if (!(b <= -1.0) || !std::isfinite(b)) {
    throw Error(ErrorKind::kInvalidInput, "T_B needs b <= -1, got " + format_real(b));
  }
  const double s = -b - 1.0;
  const double next = alpha_parity(s) == 1 ? 2.0 * s : s / 8.0;
  return -1.0 - next;
}

double example1_fa(double c) {
  if (c >= 0.0) return 4.0 * c * alpha_parity(c);
  if (c <= -1.0) return 0.0;
  throw Error(ErrorKind::kInvalidInput, format_real(c) + " is not in C = A u B");
}

double example1_fb(double c) {
  if (c >= 0.0) return 0.0;
  if (c <= -1.0) {
    const double s = -c - 1.0;
    return 4.0 * s * alpha_parity(s);
  }
  throw Error(ErrorKind::kInvalidInput, format_real(c) + " is not in C = A u B");
}

SetPair example1_pair() {
  return SetPair{MetricSpace::real_line(),
                 make_interval(Interval{0.0, kInf, true, false}, 0.0, kExampleWindow),
                 make_interval(Interval{-kInf, -1.0, false, true}, -kExampleWindow, -1.0),
                 Estimate{1.0, true}};
}

namespace {

double scalar_of(const CElement& c) { return c.point().value(); }

ExternalFactorSystem example1_base(double lambda, bool relaxed) {
  ExternalFactorSystem sys{
      relaxed ? "e1-relaxed" : "e1",
      example1_pair(),
      {},
      {},
      {},
      {},
      lambda,
  };
  const Region a = sys.pair.a;
  const Region b = sys.pair.b;
  sys.c.description = "[0,inf) u (-inf,-1]";
  sys.c.sample = [a, b](std::uint64_t seed, std::size_t n) {
    auto as = a.draw(mix_seed(seed, 1), n - n / 2);
    auto bs = b.draw(mix_seed(seed, 2), n / 2);
    std::vector<CElement> out;
    out.reserve(n);
    for (auto& p : as) out.emplace_back(std::move(p));
    for (auto& p : bs) out.emplace_back(std::move(p));
    return out;
  };

  sys.a.t = [](const Point& x, const CElement&) { return Point::scalar(example1_T(x.value())); };
  sys.a.h = [](const Point& x, const CElement&) {
    return CElement(Point::scalar(example1_T(x.value())));
  };
  sys.a.f = {[](const CElement& c) { return example1_fa(scalar_of(c)); }, Estimate{0.0, true}};
  sys.b.t = [](const Point& y, const CElement&) { return Point::scalar(example1_TB(y.value())); };
  sys.b.h = [](const Point& y, const CElement&) {
    return CElement(Point::scalar(example1_TB(y.value())));
  };
  sys.b.f = {[](const CElement& c) { return example1_fb(scalar_of(c)); }, Estimate{0.0, true}};

  auto in_c = [](const CElement& c) {
    if (!c.is_point() || c.point().dim() != 1) return false;
    const double v = c.point().value();
    return v >= 0.0 || v <= -1.0;
  };
  if (relaxed) {
    sys.p.contains = [a, b, in_c](const Quadruple& q) {
      return a.contains(q.x) && b.contains(q.y) && in_c(q.u) && in_c(q.v);
    };
    auto c_sample = sys.c.sample;
    sys.p.sample = [a, b, c_sample](std::uint64_t seed, std::size_t n) {
      auto xs = a.draw(mix_seed(seed, 1), n);
      auto ys = b.draw(mix_seed(seed, 2), n);
      auto us = c_sample(mix_seed(seed, 3), n);
      auto vs = c_sample(mix_seed(seed, 4), n);
      std::vector<Quadruple> out;
      const std::size_t m = std::min({xs.size(), ys.size(), us.size(), vs.size()});
      for (std::size_t i = 0; i < m; ++i) out.push_back({xs[i], ys[i], us[i], vs[i]});
      return out;
    };
  } else {
    sys.p.contains = [a, b](const Quadruple& q) {
      return a.contains(q.x) && b.contains(q.y) && q.u == CElement(q.x) && q.v == CElement(q.y);
    };
    sys.p.sample = [a, b](std::uint64_t seed, std::size_t n) {
      auto xs = a.draw(mix_seed(seed, 1), n);
      auto ys = b.draw(mix_seed(seed, 2), n);
      std::vector<Quadruple> out;
      const std::size_t m = std::min(xs.size(), ys.size());
      out.reserve(m);
      for (std::size_t i = 0; i < m; ++i) out.push_back({xs[i], ys[i], xs[i], ys[i]});
      return out;
    };
  }
  return sys;
}

}  // namespace

ExternalFactorSystem example1_system(double lambda) { return example1_base(lambda, false); }

ExternalFactorSystem example1_relaxed_system(double lambda) {
  return example1_base(lambda, true);
}

ExternalFactorSystem self_map_system(const std::string& name, const MetricSpace& space,
                                     const Region& region, const SelfMap& map, double lambda) {
  const CElement atom(Atom{0});
  ExternalFactorSystem sys{name, SetPair{space, region, region, Estimate{0.0, true}},
                           {}, {}, {}, {}, lambda};
  sys.c.description = "{@0}";
  sys.c.sample = [atom](std::uint64_t, std::size_t n) { return std::vector<CElement>(n, atom); };
  const ExternalFactor zero{[](const CElement&) { return 0.0; }, Estimate{0.0, true}};
  sys.a = SideMaps{[map](const Point& x, const CElement&) { return map(x); },
                   [atom](const Point&, const CElement&) { return atom; }, zero};
  sys.b = sys.a;
  sys.p.contains = [region, atom](const Quadruple& q) {
    return region.contains(q.x) && region.contains(q.y) && q.u == atom && q.v == atom;
  };
  sys.p.sample = [region, atom](std::uint64_t seed, std::size_t n) {
    auto xs = region.draw(mix_seed(seed, 1), n);
    auto ys = region.draw(mix_seed(seed, 2), n);
    std::vector<Quadruple> out;
    const std::size_t m = std::min(xs.size(), ys.size());
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back({xs[i], ys[i], atom, atom});
    return out;
  };
  return sys;
}

double estimate_lipschitz(const SelfMap& map, const MetricSpace& space, const Region& region,
                          std::size_t samples, std::uint64_t seed) {
  const auto xs = sample_region(region, samples, mix_seed(seed, 31));
  const auto ys = sample_region(region, samples, mix_seed(seed, 32));
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = space.distance(xs[i], ys[i]);
    if (d <= 1e-12) continue;
    any = true;
    best = std::max(best, space.distance(map(xs[i]), map(ys[i])) / d);
  }
  if (!any) throw Error(ErrorKind::kEstimationFailure, "no distinct sample pairs");
  return best;
}

ExternalFactorSystem banach_system(const std::string& name, const SelfMap& map,
                                   const MetricSpace& space, const Region& region,
                                   double lipschitz, std::size_t samples, std::uint64_t seed) {
  if (!(lipschitz >= 0.0 && lipschitz < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "lipschitz constant must lie in [0, 1)");
  }
  for (const auto& p : sample_region(region, samples, mix_seed(seed, 33))) {
    const Point image = map(p);
    if (!region.contains(image)) {
      throw Error(ErrorKind::kDomainViolation,
                  "map sends " + to_text(p) + " to " + to_text(image) + " outside " +
                      region.name());
    }
  }
  const double est = estimate_lipschitz(map, space, region, samples, seed);
  if (est > lipschitz + 1e-9) {
    throw Error(ErrorKind::kRefuted, "sampled Lipschitz estimate " + format_real(est) +
                                         " exceeds declared " + format_real(lipschitz));
  }
  return self_map_system(name, space, region, map, lipschitz);
}

ExternalFactorSystem affine_banach_system(double slope, double offset) {
  const Region line = make_interval(Interval{-kInf, kInf, false, false}, -100.0, 100.0);
  return banach_system(
      "affine(" + format_real(slope) + "," + format_real(offset) + ")",
      [slope, offset](const Point& x) { return Point::scalar(slope * x.value() + offset); },
      MetricSpace::real_line(), line, std::abs(slope));
}

ExternalFactorSystem product_system(const ExternalFactorSystem& first,
                                    const ExternalFactorSystem& second) {
  const std::size_t dim = first.pair.space.dim();
  const std::size_t arity = first.c.arity;

  auto lift_point = [dim, arity](const PointMap& f1, const PointMap& f2) -> PointMap {
    return [dim, arity, f1, f2](const Point& x, const CElement& u) {
      auto [x1, x2] = split(x, dim);
      auto [u1, u2] = split(u, arity);
      return concat(f1(x1, u1), f2(x2, u2));
    };
  };
  auto lift_factor = [dim, arity](const FactorMap& h1, const FactorMap& h2) -> FactorMap {
    return [dim, arity, h1, h2](const Point& x, const CElement& u) {
      auto [x1, x2] = split(x, dim);
      auto [u1, u2] = split(u, arity);
      return concat(h1(x1, u1), h2(x2, u2));
    };
  };
  auto lift_f = [arity](const ExternalFactor& f1, const ExternalFactor& f2) {
    ExternalFactor f{[arity, f1, f2](const CElement& c) {
                       auto [c1, c2] = split(c, arity);
                       return f1(c1) + f2(c2);
                     },
                     std::nullopt};
    if (f1.infimum && f2.infimum) {
      f.infimum = Estimate{f1.infimum->value + f2.infimum->value,
                           f1.infimum->exact && f2.infimum->exact};
    }
    return f;
  };

  ExternalFactorSystem sys{first.name + "x" + second.name,
                           product_space(first.pair, second.pair),
                           {},
                           {},
                           {},
                           {},
                           std::max(first.lambda, second.lambda)};
  const auto c1 = first.c.sample;
  const auto c2 = second.c.sample;
  sys.c.description = "(" + first.c.description + ")x(" + second.c.description + ")";
  sys.c.arity = first.c.arity + second.c.arity;
  if (c1 && c2) {
    sys.c.sample = [c1, c2](std::uint64_t seed, std::size_t n) {
      auto a = c1(mix_seed(seed, 1), n);
      auto b = c2(mix_seed(seed, 2), n);
      std::vector<CElement> out;
      const std::size_t m = std::min(a.size(), b.size());
      out.reserve(m);
      for (std::size_t i = 0; i < m; ++i) out.push_back(concat(a[i], b[i]));
      return out;
    };
  }
  sys.a = SideMaps{lift_point(first.a.t, second.a.t), lift_factor(first.a.h, second.a.h),
                   lift_f(first.a.f, second.a.f)};
  sys.b = SideMaps{lift_point(first.b.t, second.b.t), lift_factor(first.b.h, second.b.h),
                   lift_f(first.b.f, second.b.f)};

  auto split_quad = [dim, arity](const Quadruple& q) {
    auto [x1, x2] = split(q.x, dim);
    auto [y1, y2] = split(q.y, dim);
    auto [u1, u2] = split(q.u, arity);
    auto [v1, v2] = split(q.v, arity);
    return std::pair<Quadruple, Quadruple>{{x1, y1, u1, v1}, {x2, y2, u2, v2}};
  };
  const auto p1 = first.p;
  const auto p2 = second.p;
  sys.p.contains = [split_quad, p1, p2](const Quadruple& q) {
    if (q.x.dim() < 1 || q.u.arity() < 1) return false;
    auto [q1, q2] = split_quad(q);
    return p1.contains(q1) && p2.contains(q2);
  };
  sys.p.sample = [p1, p2](std::uint64_t seed, std::size_t n) {
    auto a = p1.sample(mix_seed(seed, 1), n);
    auto b = p2.sample(mix_seed(seed, 2), n);
    std::vector<Quadruple> out;
    const std::size_t m = std::min(a.size(), b.size());
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      out.push_back({concat(a[i].x, b[i].x), concat(a[i].y, b[i].y), concat(a[i].u, b[i].u),
                     concat(a[i].v, b[i].v)});
    }
    return out;
  };
  return sys;
}

// --- 3-cyclic --------------------------------------------------------------------

double bz_residual(const CyclicTriple& ct, const Point& x1, const Point& x2, const Point& x3) {
  const auto& rho = ct.space;
  const Point t1 = ct.map(x1);
  const Point t2 = ct.map(x2);
  const Point t3 = ct.map(x3);
  const double w0 = rho.distance(x1, x2) + rho.distance(x2, x3) + rho.distance(x3, x1);
  const double w1 = rho.distance(t1, t2) + rho.distance(t2, t3) + rho.distance(t3, t1);
  const double d = ct.gaps[0] + ct.gaps[1] + ct.gaps[2];
  return ct.k * w0 + (1.0 - ct.k) * d - w1;
}

BzCertificate certify_bz(const CyclicTriple& ct, std::size_t samples, std::uint64_t seed) {
  std::array<std::vector<Point>, 3> pts;
  for (std::size_t i = 0; i < 3; ++i) {
    pts[i] = sample_region(ct.regions[i], samples, mix_seed(seed, 40 + i));
  }
  BzCertificate cert;
  cert.samples = samples;
  cert.min_residual = kInf;
  for (std::size_t j = 0; j < samples; ++j) {
    cert.min_residual = std::min(cert.min_residual, bz_residual(ct, pts[0][j], pts[1][j], pts[2][j]));
    for (std::size_t i = 0; i < 3; ++i) {
      if (!ct.regions[(i + 1) % 3].contains(ct.map(pts[i][j]))) cert.cyclic = false;
    }
  }
  return cert;
}

CyclicTriple rotate(const CyclicTriple& ct) {
  return CyclicTriple{ct.name, ct.space, {ct.regions[1], ct.regions[2], ct.regions[0]},
                      ct.map,  ct.k,     {ct.gaps[1], ct.gaps[2], ct.gaps[0]}};
}

ExternalFactorSystem cyclic3_reduce(const CyclicTriple& ct, std::size_t samples,
                                    std::uint64_t seed) {
  if (!(ct.k > 0.0 && ct.k < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "k must lie in (0, 1)");
  }
  const auto cert = certify_bz(ct, samples, seed);
  if (!cert.cyclic) {
    throw Error(ErrorKind::kRefuted, ct.name + ": T does not map A_i into A_{i+1} on samples");
  }
  if (cert.min_residual < -kResidualTolerance) {
    throw Error(ErrorKind::kRefuted,
                ct.name + ": (bz) residual " + format_real(cert.min_residual) + " on samples");
  }

  const std::size_t dim = ct.space.dim();
  const MetricSpace rho = ct.space;
  const Region a1 = ct.regions[0];
  const Region a2 = ct.regions[1];
  const Region a3 = ct.regions[2];
  const double d12 = ct.gaps[0];
  const double d23 = ct.gaps[1];
  const double d31 = ct.gaps[2];
  const CElement one(Atom{1});
  const SelfMap t = ct.map;
  auto t3 = [t](const Point& p) { return t(t(t(p))); };
  auto t3_pair = [t3, dim](const Point& p) {
    auto [a, b] = split(p, dim);
    return concat(t3(a), t3(b));
  };

  SetPair pair{MetricSpace::product(rho, rho), make_product(a1, a1, dim),
               make_product(a2, a3, dim), Estimate{d12 + d31, true}};
  ExternalFactorSystem sys{ct.name + "/reduced", std::move(pair), {}, {}, {}, {},
                           ct.k * ct.k * ct.k};

  const Region bc = sys.pair.b;
  sys.c.description = "(A2 x A3) u {@1}";
  sys.c.sample = [bc, one](std::uint64_t seed, std::size_t n) {
    auto pts = bc.draw(seed, n - n / 4);
    std::vector<CElement> out(n / 4, one);
    for (auto& p : pts) out.emplace_back(std::move(p));
    return out;
  };
  sys.a.t = [t3_pair](const Point& x, const CElement&) { return t3_pair(x); };
  sys.a.h = [one](const Point&, const CElement&) { return one; };
  sys.a.f = {[](const CElement&) { return 0.0; }, Estimate{0.0, true}};
  sys.b.t = [t3_pair](const Point& y, const CElement&) { return t3_pair(y); };
  sys.b.h = [t3_pair](const Point& y, const CElement&) { return CElement(t3_pair(y)); };
  sys.b.f = {[rho, dim, d23](const CElement& c) {
               if (c.is_atom(1)) return d23;
               auto [b, cc] = split(c.point(), dim);
               return rho.distance(b, cc);
             },
             Estimate{d23, true}};

  sys.p.contains = [a1, bc, dim, one](const Quadruple& q) {
    if (q.x.dim() != 2 * dim) return false;
    auto [g1, g2] = split(q.x, dim);
    return g1 == g2 && a1.contains(g1) && bc.contains(q.y) && q.u == one &&
           q.v == CElement(q.y);
  };
  sys.p.sample = [a1, bc, one](std::uint64_t seed, std::size_t n) {
    auto as = a1.draw(mix_seed(seed, 1), n);
    auto ys = bc.draw(mix_seed(seed, 2), n);
    std::vector<Quadruple> out;
    const std::size_t m = std::min(as.size(), ys.size());
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back({concat(as[i], as[i]), ys[i], one, ys[i]});
    return out;
  };
  return sys;
}

CyclicTriple affine_cyclic_example() {
  const MetricSpace plane = MetricSpace::euclidean(2);
  auto segment = [](double h) {
    return make_product(make_interval(Interval::closed(0.0, 1.0)), make_singleton(Point{h}), 1);
  };
  SelfMap t = [](const Point& p) {
    const double h = p[1];
    const double next = h == 0.0 ? 1.0 : (h == 1.0 ? 2.0 : 0.0);
    return Point{0.5 + (p[0] - 0.5) / 2.0, next};
  };
  return CyclicTriple{"cyclic3-affine", plane, {segment(0.0), segment(1.0), segment(2.0)},
                      std::move(t), 0.5, {1.0, 1.0, 2.0}};
}

CyclicTriple singleton_cyclic_example() {
  SelfMap t = [](const Point& p) {
    const double v = p.value();
    return Point::scalar(v == 30.0 ? 10.0 : v + 10.0);
  };
  return CyclicTriple{"cyclic3-singleton",
                      MetricSpace::real_line(),
                      {make_singleton(Point{10.0}), make_singleton(Point{20.0}),
                       make_singleton(Point{30.0})},
                      std::move(t),
                      0.5,
                      {10.0, 10.0, 20.0}};
}

BestProximityResult cyclic3_solve(const CyclicTriple& ct, const std::array<Point, 3>& starts,
                                  std::size_t max_steps, double tol) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!ct.regions[i].contains(starts[i])) {
      throw Error(ErrorKind::kInvalidInput,
                  "start " + to_text(starts[i]) + " is not in A_" + std::to_string(i + 1));
    }
  }
  const std::size_t dim = ct.space.dim();
  std::array<CyclicTriple, 3> roles{ct, rotate(ct), rotate(rotate(ct))};

  auto solve_role = [&](std::size_t r) {
    const auto sys = cyclic3_reduce(roles[r]);
    const Point& a = starts[r];
    const Point y = concat(starts[(r + 1) % 3], starts[(r + 2) % 3]);
    const Quadruple q0{concat(a, a), y, CElement(Atom{1}), CElement(y)};
    return run_paired(sys, q0, max_steps, tol).report;
  };
  std::array<std::future<ConvergenceReport>, 3> jobs;
  for (std::size_t r = 0; r < 3; ++r) jobs[r] = std::async(std::launch::async, solve_role, r);

  BestProximityResult out;
  out.decided = true;
  for (std::size_t r = 0; r < 3; ++r) {
    const auto report = jobs[r].get();
    out.steps[r] = report.steps;
    if (!report.limit) {
      out.decided = false;
      continue;
    }
    out.z[r] = split(*report.limit, dim).first;
  }
  if (!out.decided) return out;
  for (std::size_t i = 0; i < 3; ++i) {
    const Point& zi = *out.z[i];
    const Point& zn = *out.z[(i + 1) % 3];
    out.gap_residuals[i] = std::abs(ct.space.distance(zi, zn) - ct.gaps[i]);
    out.cycle_residuals[i] = ct.space.distance(ct.map(zi), zn);
  }
  return out;
}

// --- Named pairs ---------------------------------------------------------------------

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// target + (start - target) r^n for n < len; a point that rounds out of the
// region repeats its predecessor.
std::vector<Point> approach(const Region& region, double start, double target, double r,
                            std::size_t len) {
  std::vector<Point> out;
  out.reserve(len);
  double offset = start - target;
  for (std::size_t n = 0; n < len; ++n, offset *= r) {
    Point p = Point::scalar(target + offset);
    if (!region.contains(p)) {
      if (out.empty()) throw Error(ErrorKind::kInvalidInput, "approach start outside region");
      p = out.back();
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Steps until offsets d0 r^n fall to eps, plus a confirmation window.
std::size_t steps_to(double d0, double r, double eps) {
  if (d0 <= eps) return kConfirmationWindow + 1;
  return static_cast<std::size_t>(std::ceil(std::log(eps / d0) / std::log(r))) +
         kConfirmationWindow + 1;
}

struct Facing {
  double a_star;
  double b_star;
  double a_dir;  // +1 when A lies above a_star
  double b_dir;
};

// A finite point of `iv` at distance `d` inward from `edge`, clamped to the
// middle of the interval when it is too short.
double inward(const Interval& iv, double edge, double dir, double d) {
  double p = edge + dir * d;
  if (!iv.contains(p)) {
    const double lo = std::isfinite(iv.lo) ? iv.lo : iv.hi - 2.0 * d;
    const double hi = std::isfinite(iv.hi) ? iv.hi : iv.lo + 2.0 * d;
    p = 0.5 * (lo + hi);
  }
  return p;
}

Facing facing(const Interval& a, const Interval& b, std::mt19937_64& rng) {
  if (a.hi <= b.lo) return {a.hi, b.lo, -1.0, 1.0};
  if (b.hi <= a.lo) return {a.lo, b.hi, 1.0, -1.0};
  // Overlap: a common point of the intersection, approached from either side.
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  const double wl = std::isfinite(lo) ? lo : hi - 10.0;
  const double wh = std::isfinite(hi) ? hi : lo + 10.0;
  double p = uniform(rng, wl, wh);
  if (!a.contains(p) || !b.contains(p)) p = 0.5 * (wl + wh);
  const double dir = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  return {p, p, dir, dir};
}

// A start for an approach to `target` from direction `dir`, kept in `iv`.
double start_near(const Interval& iv, double target, double dir, std::mt19937_64& rng) {
  return inward(iv, target, dir, uniform(rng, 0.1, 10.0));
}

}  // namespace

PairInstance interval_pair_instance(const std::string& name, const Interval& a,
                                    const Interval& b) {
  SetPair pair{MetricSpace::real_line(), make_interval(a), make_interval(b),
               Estimate{interval_gap(a, b), true}};
  std::string description = pair.a.name() + " vs " + pair.b.name();
  PairInstance inst{name, std::move(description), std::move(pair), {}, {}};
  const Region ra = inst.pair.a;
  const Region rb = inst.pair.b;

  inst.cd = [a, b, ra, rb](double tol) -> PairGenerator {
    const double eps = tol / 100.0;
    return [a, b, ra, rb, eps](std::size_t index, std::mt19937_64& rng) {
      const Facing f = facing(a, b, rng);
      const double rx = uniform(rng, 0.5, 0.8);
      const double ry = uniform(rng, 0.5, 0.8);
      const double x0 = start_near(a, f.a_star, f.a_dir, rng);
      const double y0 = start_near(b, f.b_star, f.b_dir, rng);
      const std::size_t len = std::max(steps_to(std::abs(x0 - f.a_star), rx, eps),
                                       steps_to(std::abs(y0 - f.b_star), ry, eps));
      SequencePair s;
      s.y = approach(rb, y0, f.b_star, ry, len);
      switch (index % 4) {
        case 2: {  // decoy: x settles strictly inside A, away from the gap
          const double target = inward(a, f.a_star, f.a_dir, uniform(rng, 0.5, 2.0));
          s.x = approach(ra, x0, target, rx, len);
          break;
        }
        case 3: {  // decoy: x alternates between two interior points
          const double p = inward(a, f.a_star, f.a_dir, 0.5);
          const double q = inward(a, f.a_star, f.a_dir, 1.0);
          for (std::size_t n = 0; n < len; ++n) s.x.push_back(Point::scalar(n % 2 ? p : q));
          break;
        }
        default:
          s.x = approach(ra, x0, f.a_star, rx, len);
      }
      return s;
    };
  };

  inst.uc = [a, b, ra, rb](double tol) -> TripleGenerator {
    const double eps = tol / 100.0;
    return [a, b, ra, rb, eps](std::size_t index, std::mt19937_64& rng) {
      const Facing f = facing(a, b, rng);
      const double rx = uniform(rng, 0.5, 0.8);
      const double rz = uniform(rng, 0.5, 0.8);
      const double ry = uniform(rng, 0.5, 0.8);
      const double x0 = start_near(a, f.a_star, f.a_dir, rng);
      const double z0 = start_near(a, f.a_star, f.a_dir, rng);
      const double y0 = start_near(b, f.b_star, f.b_dir, rng);
      const std::size_t len = std::max({steps_to(std::abs(x0 - f.a_star), rx, eps),
                                        steps_to(std::abs(z0 - f.a_star), rz, eps),
                                        steps_to(std::abs(y0 - f.b_star), ry, eps)});
      SequenceTriple s;
      s.x = approach(ra, x0, f.a_star, rx, len);
      s.y = approach(rb, y0, f.b_star, ry, len);
      if (index % 4 == 3) {  // decoy: z settles inside A
        s.z = approach(ra, z0, inward(a, f.a_star, f.a_dir, uniform(rng, 0.5, 2.0)), rz, len);
      } else {
        s.z = approach(ra, z0, f.a_star, rz, len);
      }
      return s;
    };
  };
  return inst;
}

std::vector<std::string> pair_instance_names() {
  return {"e1-pair", "open-interval-pair", "circle-origin", "overlap-pair"};
}

PairInstance pair_instance(const std::string& name) {
  if (name == "e1-pair") {
    auto inst = interval_pair_instance(name, Interval{0.0, kInf, true, false},
                                       Interval{-kInf, -1.0, false, true});
    inst.pair = example1_pair();
    return inst;
  }
  if (name == "open-interval-pair") {
    return interval_pair_instance(name, Interval::open(0.0, 1.0), Interval::open(2.0, 3.0));
  }
  if (name == "overlap-pair") {
    return interval_pair_instance(name, Interval::closed(0.0, 2.0), Interval::closed(1.0, 3.0));
  }
  if (name == "circle-origin") {
    PairInstance inst{name,
                      "unit circle vs its center in Euclidean R^2",
                      SetPair{MetricSpace::euclidean(2), make_circle(Point{0.0, 0.0}, 1.0),
                              make_singleton(Point{0.0, 0.0}), Estimate{1.0, true}},
                      {},
                      {}};
    constexpr std::size_t kLen = 40;
    inst.cd = [](double) -> PairGenerator {
      return [](std::size_t index, std::mt19937_64& rng) {
        const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const double step = index % 2 ? uniform(rng, 0.5, 2.5) : 0.0;
        SequencePair s;
        for (std::size_t n = 0; n < kLen; ++n) {
          const double t = theta + step * static_cast<double>(n);
          s.x.push_back(Point{std::cos(t), std::sin(t)});
          s.y.push_back(Point{0.0, 0.0});
        }
        return s;
      };
    };
    inst.uc = [](double) -> TripleGenerator {
      return [](std::size_t, std::mt19937_64& rng) {
        const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const Point x{std::cos(theta), std::sin(theta)};
        const Point z{-x[0], -x[1]};
        SequenceTriple s;
        s.x.assign(kLen, x);
        s.z.assign(kLen, z);
        s.y.assign(kLen, Point{0.0, 0.0});
        return s;
      };
    };
    return inst;
  }
  throw Error(ErrorKind::kInvalidInput, "unknown pair instance '" + name + "'");
}

}  // namespace cefix
