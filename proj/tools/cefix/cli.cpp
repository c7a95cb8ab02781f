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

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cefix/checkers.hpp"
#include "cefix/error.hpp"
#include "cefix/iterate.hpp"
#include "cefix/serialize.hpp"
#include "registry.hpp"

namespace cefix::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kInfimumSequenceLength = 20;
constexpr std::size_t kMaxGridPoints = 1000000;

struct Config {
  std::string command;
  std::string instance;
  std::string x0, y0, u0, v0;
  std::size_t steps = 1000;
  double tol = 1e-9;
  std::size_t samples = 10000;
  std::string seed_text = "1";
  std::uint64_t seed = 1;
  std::size_t depth = 8;
  std::optional<double> lambda;
  std::string kind;
  std::string grid;
  std::size_t budget = 1000;
  std::string out;
  std::string format = "json";
  std::string trace;
};

json echo(const Config& c) {
  json j{{"instance", c.instance}, {"format", c.format}};
  if (c.command == "run" || c.command == "verify") {
    j["steps"] = c.steps;
    j["tol"] = c.tol;
    for (const auto& [k, v] : {std::pair{"x0", c.x0}, {"y0", c.y0}, {"u0", c.u0}, {"v0", c.v0}}) {
      if (!v.empty()) j[k] = v;
    }
  }
  if (c.command == "verify") {
    j["samples"] = c.samples;
    j["depth"] = c.depth;
  }
  if (c.command == "scan") {
    j["kind"] = c.kind;
    j["tol"] = c.tol;
    j["steps"] = c.steps;
    if (c.kind == "uniqueness") j["grid"] = c.grid;
    else j["budget"] = c.budget;
  }
  if (c.lambda) j["lambda"] = *c.lambda;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.trace.empty()) j["trace"] = c.trace;
  return j;
}

std::uint64_t parse_seed(const std::string& text) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && text.front() == '-') {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && p == last) return static_cast<std::uint64_t>(v);
  } else {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && p == last) return v;
  }
  throw Error(ErrorKind::kInvalidInput, "--seed must be a 64-bit integer, got '" + text + "'");
}

struct Grid {
  double lo, hi, step;
};

double parse_real(std::string_view s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::kInvalidInput, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

Grid parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) {
    throw Error(ErrorKind::kInvalidInput, "--grid must be lo:hi:step, got '" + text + "'");
  }
  const std::string_view s(text);
  Grid g{parse_real(s.substr(0, a), "grid lo"), parse_real(s.substr(a + 1, b - a - 1), "grid hi"),
         parse_real(s.substr(b + 1), "grid step")};
  if (!(g.step > 0.0) || g.hi < g.lo) {
    throw Error(ErrorKind::kInvalidInput, "--grid needs lo <= hi and step > 0");
  }
  if ((g.hi - g.lo) / g.step > static_cast<double>(kMaxGridPoints)) {
    throw Error(ErrorKind::kInvalidInput, "--grid has too many points");
  }
  return g;
}

StartOverrides overrides(const Config& c) {
  StartOverrides o;
  if (!c.x0.empty()) o.x0 = parse_point(c.x0);
  if (!c.y0.empty()) o.y0 = parse_point(c.y0);
  if (!c.u0.empty()) o.u0 = parse_celement(c.u0);
  if (!c.v0.empty()) o.v0 = parse_celement(c.v0);
  return o;
}

SystemEntry system_for(const Config& c) {
  SystemEntry e = load_system(c.instance);
  if (c.lambda) e.system.lambda = *c.lambda;
  return e;
}

void write_text(const Config& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorKind::kInvalidInput, "cannot write " + c.out);
  f << text;
}

void emit(const Config& c, std::ostream& out, json result) {
  json report{{"tool", "cefix"},
              {"version", CEFIX_VERSION},
              {"command", c.command},
              {"seed", c.seed},
              {"config", echo(c)},
              {"result", std::move(result)}};
  write_text(c, out, report.dump(2) + "\n");
}

void write_trace(const std::string& path, const PairedTrace& trace) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kInvalidInput, "cannot write " + path);
  write_trace_csv(f, trace);
}

int cmd_run(const Config& c, std::ostream& out) {
  const SystemEntry e = system_for(c);
  const Quadruple q0 = e.start(overrides(c));
  const PairedRun run = run_paired(e.system, q0, c.steps, c.tol);

  json result = to_json(run.report);
  int code = run.report.limit ? kExitOk : kExitUndecided;
  if (e.cyclic) {
    const std::size_t dim = e.cyclic->space.dim();
    auto [b, cc] = split(q0.y, dim);
    const std::array<Point, 3> starts{split(q0.x, dim).first, b, cc};
    const auto bp = cyclic3_solve(*e.cyclic, starts, c.steps, c.tol);
    result["best_proximity"] = to_json(bp);
    if (!bp.decided) code = kExitUndecided;
  }
  if (!c.trace.empty()) write_trace(c.trace, run.trace);
  if (c.format == "csv") {
    std::ostringstream csv;
    write_trace_csv(csv, run.trace);
    write_text(c, out, csv.str());
  } else {
    emit(c, out, std::move(result));
  }
  return code;
}

int cmd_verify(const Config& c, std::ostream& out) {
  const SystemEntry e = system_for(c);
  VerifyOptions opts;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.invariance_depth = c.depth;
  const CertificationReport cert = verify_contraction(e.system, opts);

  json result = to_json(cert);
  bool bounds_ok = true;
  const double lambda = e.system.lambda;
  if (cert.infima_finite && lambda >= 0.0 && lambda < 1.0) {
    const PairedRun probe = run_paired(e.system, e.start(overrides(c)), c.steps, c.tol);
    const auto& space = e.system.pair.space;
    const auto l2 = check_l2_bound(space, probe.trace, lambda, cert.s);
    json probe_json{{"steps", probe.trace.steps()}, {"l2", to_json(l2)}};
    bounds_ok = !l2.first_violation.has_value();
    if (probe.trace.steps() >= 2) {
      const auto l1 = check_l1_bound(space, probe.trace, lambda, cert.s);
      probe_json["l1"] = to_json(l1);
      bounds_ok = bounds_ok && l1.holds;
    }
    result["probe"] = std::move(probe_json);
  } else {
    bounds_ok = false;
    result["probe"] = nullptr;
  }
  result["bounds_ok"] = bounds_ok;
  emit(c, out, std::move(result));
  return cert.verdict == Verdict::kCertifiedOnSamples && bounds_ok ? kExitOk : kExitRefuted;
}

int scan_uniqueness(const Config& c, std::ostream& out) {
  const SystemEntry e = system_for(c);
  const Quadruple q0 = e.start(overrides(c));
  const PairedRun run = run_paired(e.system, q0, c.steps, c.tol);
  json result{{"run", to_json(run.report)}};
  if (!run.report.limit) {
    result["violations"] = nullptr;
    emit(c, out, std::move(result));
    return kExitUndecided;
  }
  const Point alpha = *run.report.limit;
  const Grid g = parse_grid(c.grid.empty() ? e.default_grid : c.grid);

  std::vector<std::pair<Point, InfimumSequence>> candidates;
  std::size_t outside = 0;
  std::size_t no_sequence = 0;
  const auto count = static_cast<std::size_t>(std::floor((g.hi - g.lo) / g.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = g.lo + static_cast<double>(i) * g.step;
    const auto beta = e.grid_point(t);
    if (!beta || !e.system.pair.a.contains(*beta)) {
      ++outside;
      continue;
    }
    std::optional<InfimumSequence> seq;
    for (const auto& factor : e.factors_at(*beta)) {
      try {
        seq = make_infimum_sequence(
            e.system, *beta, q0.y, q0.v, [&factor](std::size_t) { return factor; },
            kInfimumSequenceLength, c.tol);
        break;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kInvalidInput &&
            err.kind() != ErrorKind::kNotAnInfimumSequence) {
          throw;
        }
      }
    }
    if (!seq) {
      ++no_sequence;
      continue;
    }
    candidates.emplace_back(*beta, std::move(*seq));
  }
  const auto violations = uniqueness_scan(e.system, alpha, candidates, c.tol);
  json v = json::array();
  for (const auto& x : violations) v.push_back(to_json(x));
  result["alpha"] = to_text(alpha);
  result["grid_points"] = count;
  result["candidates"] = candidates.size();
  result["outside_a"] = outside;
  result["without_infimum_sequence"] = no_sequence;
  result["violations"] = v;
  emit(c, out, std::move(result));
  return violations.empty() ? kExitOk : kExitRefuted;
}

int cmd_scan(const Config& c, std::ostream& out) {
  if (c.kind == "uniqueness") return scan_uniqueness(c, out);
  const PairInstance inst = load_pair(c.instance);
  json result{{"pair", inst.name}, {"description", inst.description}};
  bool found = false;
  if (c.kind == "cd") {
    const auto rep = cd_falsify(inst.pair, inst.cd(c.tol), c.budget, c.tol, c.seed);
    found = rep.counterexample.has_value();
    result["report"] = to_json(rep);
  } else {
    const auto rep = uc_falsify(inst.pair, inst.uc(c.tol), c.budget, c.tol, c.seed);
    found = rep.counterexample.has_value();
    result["report"] = to_json(rep);
  }
  emit(c, out, std::move(result));
  return found ? kExitRefuted : kExitOk;
}

int cmd_list(const Config& c, std::ostream& out) {
  const auto all = list_instances();
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& i : all) {
      arr.push_back({{"name", i.name}, {"kind", i.kind}, {"description", i.description}});
    }
    emit(c, out, {{"instances", arr}});
  } else {
    std::ostringstream text;
    for (const auto& i : all) text << i.name << '\t' << i.kind << '\t' << i.description << '\n';
    write_text(c, out, text.str());
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--out", c.out, "Write the report to this path instead of stdout");
  sub->add_option("--seed", c.seed_text, "Seed for every random draw (64-bit integer)");
}

void add_system(CLI::App* sub, Config& c) {
  sub->add_option("--instance", c.instance, "Built-in instance name or JSON instance file")
      ->required();
  sub->add_option("--x0", c.x0, "Initial x, coordinates joined by ';'");
  sub->add_option("--y0", c.y0, "Initial y");
  sub->add_option("--u0", c.u0, "Initial u (defaults per instance)");
  sub->add_option("--v0", c.v0, "Initial v (defaults per instance)");
  sub->add_option("--steps", c.steps, "Maximum iteration steps")->check(CLI::PositiveNumber);
  sub->add_option("--tol", c.tol, "Tolerance (> 0)")->check(CLI::PositiveNumber);
  sub->add_option("--lambda", c.lambda, "Override the contraction constant")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cefix: contraction iteration with an external factor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CEFIX_VERSION);
  Config c;

  auto* run = app.add_subcommand("run", "Run the paired iteration and report the limit");
  add_system(run, c);
  add_common(run, c);
  run->add_option("--format", c.format, "json report or csv trace")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--trace", c.trace, "Also write the trace CSV to this path");

  auto* verify = app.add_subcommand("verify", "Certify the contraction conditions on samples");
  add_system(verify, c);
  add_common(verify, c);
  verify->add_option("--samples", c.samples, "Sampled quadruples")->check(CLI::PositiveNumber);
  verify->add_option("--depth", c.depth, "P-invariance depth")->check(CLI::PositiveNumber);
  verify->add_option("--format", c.format)->check(CLI::IsMember({"json"}));

  auto* scan = app.add_subcommand("scan", "Uniqueness scan or UC/CD falsification");
  add_system(scan, c);
  add_common(scan, c);
  scan->add_option("--kind", c.kind, "uniqueness, cd or uc")
      ->required()
      ->check(CLI::IsMember({"uniqueness", "cd", "uc"}));
  scan->add_option("--grid", c.grid, "lo:hi:step candidate grid for uniqueness scans");
  scan->add_option("--budget", c.budget, "Candidates for cd/uc scans")->check(CLI::PositiveNumber);
  scan->add_option("--format", c.format)->check(CLI::IsMember({"json"}));

  auto* list = app.add_subcommand("list", "List built-in instances");
  std::string list_format = "text";
  list->add_option("--format", list_format, "text or json")->check(CLI::IsMember({"text", "json"}));
  list->add_option("--out", c.out, "Write the listing to this path");

  std::vector<std::string> argv_store{"cefix"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    c.seed = parse_seed(c.seed_text);
    if (run->parsed()) {
      c.command = "run";
      return cmd_run(c, out);
    }
    if (verify->parsed()) {
      c.command = "verify";
      return cmd_verify(c, out);
    }
    if (scan->parsed()) {
      c.command = "scan";
      return cmd_scan(c, out);
    }
    c.command = "list";
    c.format = list_format;
    return cmd_list(c, out);
  } catch (const Error& e) {
    err << "cefix: " << e.what() << '\n';
    return e.kind() == ErrorKind::kRefuted ? kExitRefuted : kExitError;
  } catch (const std::exception& e) {
    err << "cefix: error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace cefix::cli
