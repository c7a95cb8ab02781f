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

#include "registry.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "cefix/error.hpp"

namespace cefix::cli {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); }

SystemEntry e1_entry(double lambda) {
  SystemEntry e{.name = "e1",
                .description = "alternating-parity maps on A=[0,inf), B=(-inf,-1], lambda 5/8",
                .system = example1_system(lambda)};
  e.start = [](const StartOverrides& o) {
    const Point x = o.x0.value_or(Point{3.0});
    const Point y = o.y0.value_or(Point{-2.0});
    return Quadruple{x, y, o.u0.value_or(CElement(x)), o.v0.value_or(CElement(y))};
  };
  e.grid_point = [](double t) -> std::optional<Point> {
    if (t >= 0.0) return Point{t};
    return std::nullopt;
  };
  e.factors_at = [](const Point& beta) { return std::vector<CElement>{CElement(beta)}; };
  e.default_grid = "0:100:0.5";
  e.pair_name = "e1-pair";
  return e;
}

SystemEntry single_map_entry(std::string name, std::string description, ExternalFactorSystem sys) {
  SystemEntry e{.name = std::move(name),
                .description = std::move(description),
                .system = std::move(sys)};
  const std::size_t dim = e.system.pair.space.dim();
  // Defaults are 8 and 0; regions that exclude them fall back to seeded samples.
  const Region& a = e.system.pair.a;
  const Region& b = e.system.pair.b;
  const Point zero(std::vector<double>(dim, 0.0));
  Point x_default = dim == 1 ? Point{8.0} : zero;
  Point y_default = zero;
  if (!a.contains(x_default)) x_default = sample_region(a, 1, 1).front();
  if (!b.contains(y_default)) y_default = sample_region(b, 1, 2).front();
  e.start = [x_default, y_default](const StartOverrides& o) {
    const Point x = o.x0.value_or(x_default);
    const Point y = o.y0.value_or(y_default);
    const CElement atom(Atom{0});
    return Quadruple{x, y, o.u0.value_or(atom), o.v0.value_or(atom)};
  };
  const Region region = e.system.pair.a;
  e.grid_point = [region](double t) -> std::optional<Point> {
    Point p{t};
    if (region.contains(p)) return p;
    return std::nullopt;
  };
  e.factors_at = [](const Point&) { return std::vector<CElement>{CElement(Atom{0})}; };
  e.default_grid = "-10:10:0.5";
  return e;
}

SystemEntry product_entry(const SystemEntry& first, const SystemEntry& second) {
  SystemEntry e{
      .name = first.name == second.name ? first.name + "-product"
                                        : first.name + "x" + second.name,
      .description = "product of " + first.name + " and " + second.name + " with the sum metric",
      .system = product_system(first.system, second.system)};
  const std::size_t dim = first.system.pair.space.dim();
  const std::size_t arity = first.system.c.arity;
  auto s1 = first.start;
  auto s2 = second.start;
  e.start = [dim, arity, s1, s2](const StartOverrides& o) {
    StartOverrides o1;
    StartOverrides o2;
    if (o.x0) std::tie(o1.x0, o2.x0) = split(*o.x0, dim);
    if (o.y0) std::tie(o1.y0, o2.y0) = split(*o.y0, dim);
    if (o.u0) std::tie(o1.u0, o2.u0) = split(*o.u0, arity);
    if (o.v0) std::tie(o1.v0, o2.v0) = split(*o.v0, arity);
    const Quadruple q1 = s1(o1);
    const Quadruple q2 = s2(o2);
    return Quadruple{concat(q1.x, q2.x), concat(q1.y, q2.y), concat(q1.u, q2.u),
                     concat(q1.v, q2.v)};
  };
  auto g1 = first.grid_point;
  auto g2 = second.grid_point;
  e.grid_point = [g1, g2](double t) -> std::optional<Point> {
    auto a = g1(t);
    auto b = g2(t);
    if (a && b) return concat(*a, *b);
    return std::nullopt;
  };
  auto f1 = first.factors_at;
  auto f2 = second.factors_at;
  e.factors_at = [dim, f1, f2](const Point& beta) {
    auto [b1, b2] = split(beta, dim);
    std::vector<CElement> out;
    for (const auto& c1 : f1(b1)) {
      for (const auto& c2 : f2(b2)) out.push_back(concat(c1, c2));
    }
    return out;
  };
  e.default_grid = first.name == "e1" && second.name == "e1" ? "0:20:0.5" : first.default_grid;
  return e;
}

SystemEntry cyclic_entry(const std::string& which) {
  const bool affine = which == "affine";
  if (!affine && which != "singleton") bad("unknown cyclic triple '" + which + "'");
  const CyclicTriple ct = affine ? affine_cyclic_example() : singleton_cyclic_example();
  const std::array<Point, 3> starts =
      affine ? std::array<Point, 3>{Point{0.0, 0.0}, Point{1.0, 1.0}, Point{0.25, 2.0}}
             : std::array<Point, 3>{Point{10.0}, Point{20.0}, Point{30.0}};
  SystemEntry e{.name = ct.name,
                .description = affine
                                   ? "three parallel unit segments in R^2, T affine, k 1/2 (reduced)"
                                   : "singletons {10},{20},{30} in R (reduced)",
                .system = cyclic3_reduce(ct),
                .cyclic = ct};
  const std::size_t dim = ct.space.dim();
  e.start = [dim, starts](const StartOverrides& o) {
    Point a = o.x0.value_or(starts[0]);
    if (a.dim() == dim) a = concat(a, a);
    const Point y = o.y0.value_or(concat(starts[1], starts[2]));
    return Quadruple{a, y, o.u0.value_or(CElement(Atom{1})), o.v0.value_or(CElement(y))};
  };
  if (affine) {
    e.grid_point = [](double t) -> std::optional<Point> {
      if (t >= 0.0 && t <= 1.0) return Point{t, 0.0, t, 0.0};
      return std::nullopt;
    };
    e.default_grid = "0:1:0.05";
  } else {
    e.grid_point = [](double t) -> std::optional<Point> {
      if (t == 10.0) return Point{10.0, 10.0};
      return std::nullopt;
    };
    e.default_grid = "10:10:1";
  }
  e.factors_at = [](const Point&) { return std::vector<CElement>{CElement(Atom{1})}; };
  return e;
}

SelfMap named_map(const json& doc) {
  const std::string name = doc.value("name", "");
  if (name == "affine") {
    const double slope = doc.value("slope", 0.5);
    const double offset = doc.value("offset", 0.0);
    return [slope, offset](const Point& x) { return Point::scalar(slope * x.value() + offset); };
  }
  if (name == "square") return [](const Point& x) { return Point::scalar(x.value() * x.value()); };
  if (name == "identity") return [](const Point& x) { return x; };
  bad("unknown map '" + name + "' (known: affine, square, identity)");
}

double real_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  bad(std::string("field '") + key + "' must be a number or \"inf\"/\"-inf\"");
}

Interval interval_from_json(const json& j) {
  if (!j.is_object()) bad("an interval must be an object {lo, hi, lo_closed, hi_closed}");
  Interval iv{real_field(j, "lo", -kInf), real_field(j, "hi", kInf),
              j.value("lo_closed", true), j.value("hi_closed", true)};
  if (!(iv.lo <= iv.hi)) bad("interval with lo > hi");
  return iv;
}

void require_real_line(const json& doc) {
  const std::string space = doc.value("space", "R");
  if (space != "R") bad("only the space \"R\" is supported in instance files, got " + space);
}

void apply_overrides(ExternalFactorSystem& sys, const json& doc) {
  if (doc.contains("lambda")) sys.lambda = doc.at("lambda").get<double>();
  if (doc.contains("dist")) sys.pair.dist = Estimate{doc.at("dist").get<double>(), true};
  if (doc.contains("infima")) {
    const auto& inf = doc.at("infima");
    if (inf.contains("f_a")) sys.a.f.infimum = Estimate{inf.at("f_a").get<double>(), true};
    if (inf.contains("f_b")) sys.b.f.infimum = Estimate{inf.at("f_b").get<double>(), true};
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open instance file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad("malformed instance file " + path + ": " + e.what());
  }
}

}  // namespace

std::vector<InstanceInfo> list_instances() {
  std::vector<InstanceInfo> out{
      {"e1", "system", "alternating-parity maps on [0,inf) and (-inf,-1], lambda 5/8"},
      {"banach", "system", "x -> (x + 4) / 2 on R as a degenerate system, lambda 1/2"},
      {"banach-half", "system", "x -> x / 2 on R as a degenerate system, lambda 1/2"},
      {"e1-product", "system", "e1 x e1 with the sum metric, lambda 5/8"},
      {"cyclic3-singleton", "system", "reduction of the singleton 3-cyclic triple"},
      {"cyclic3-affine", "system", "reduction of the segment 3-cyclic triple, lambda 1/8"},
  };
  for (const auto& name : pair_instance_names()) {
    out.push_back({name, "pair", pair_instance(name).description});
  }
  return out;
}

bool is_instance_file(const std::string& ref) {
  return ref.size() > 5 && ref.ends_with(".json");
}

SystemEntry system_from_json(const json& doc) {
  if (!doc.is_object()) bad("an instance must be a JSON object");
  const std::string kind = doc.value("kind", "");
  SystemEntry e = [&]() {
    if (kind == "e1") return e1_entry(doc.value("lambda", 0.625));
    if (kind == "banach" || kind == "self-map") {
      require_real_line(doc);
      const Interval iv = doc.contains("region") ? interval_from_json(doc.at("region"))
                                                  : Interval{-kInf, kInf, false, false};
      const Region region = make_interval(iv);
      const SelfMap map = named_map(doc.value("map", json::object()));
      const std::string name = doc.value("name", kind);
      const double lambda = doc.value("lambda", 0.5);
      auto sys = kind == "banach"
                     ? banach_system(name, map, MetricSpace::real_line(), region, lambda,
                                     doc.value("samples", std::size_t{2000}),
                                     doc.value("seed", std::uint64_t{1}))
                     : self_map_system(name, MetricSpace::real_line(), region, map, lambda);
      return single_map_entry(name, kind + " instance from file", std::move(sys));
    }
    if (kind == "product") {
      const auto& factors = doc.at("factors");
      if (!factors.is_array() || factors.size() != 2) bad("a product needs exactly two factors");
      auto load = [](const json& f) {
        return f.is_string() ? load_system(f.get<std::string>()) : system_from_json(f);
      };
      return product_entry(load(factors[0]), load(factors[1]));
    }
    if (kind == "cyclic3") return cyclic_entry(doc.value("triple", "affine"));
    bad("unknown system kind '" + kind + "' (known: e1, banach, self-map, product, cyclic3)");
  }();
  if (doc.contains("name")) e.name = doc.at("name").get<std::string>();
  apply_overrides(e.system, doc);
  if (e.system.lambda < 0.0 || !std::isfinite(e.system.lambda)) bad("lambda must be >= 0");
  return e;
}

PairInstance pair_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("kind", "") != "pair") bad("expected an instance of kind pair");
  require_real_line(doc);
  if (!doc.contains("regions")) bad("a pair needs regions {a, b}");
  const auto& regions = doc.at("regions");
  auto inst = interval_pair_instance(doc.value("name", "pair"),
                                     interval_from_json(regions.at("a")),
                                     interval_from_json(regions.at("b")));
  if (doc.contains("dist")) inst.pair.dist = Estimate{doc.at("dist").get<double>(), true};
  return inst;
}

SystemEntry load_system(const std::string& ref) {
  if (is_instance_file(ref)) return system_from_json(read_json_file(ref));
  if (ref == "e1") return e1_entry(0.625);
  if (ref == "banach") {
    return single_map_entry("banach", "x -> (x + 4) / 2 on R", affine_banach_system(0.5, 2.0));
  }
  if (ref == "banach-half") {
    return single_map_entry("banach-half", "x -> x / 2 on R", affine_banach_system(0.5, 0.0));
  }
  if (ref == "e1-product") return product_entry(e1_entry(0.625), e1_entry(0.625));
  if (ref == "cyclic3-affine") return cyclic_entry("affine");
  if (ref == "cyclic3-singleton") return cyclic_entry("singleton");
  bad("unknown instance '" + ref + "'; see 'cefix list'");
}

PairInstance load_pair(const std::string& ref) {
  if (is_instance_file(ref)) {
    const json doc = read_json_file(ref);
    if (doc.value("kind", "") == "pair") return pair_from_json(doc);
    auto e = system_from_json(doc);
    if (e.pair_name.empty()) bad("instance " + ref + " has no property-scan pair");
    return pair_instance(e.pair_name);
  }
  for (const auto& name : pair_instance_names()) {
    if (name == ref) return pair_instance(ref);
  }
  const auto e = load_system(ref);
  if (e.pair_name.empty()) bad("instance '" + ref + "' has no property-scan pair");
  return pair_instance(e.pair_name);
}

}  // namespace cefix::cli
