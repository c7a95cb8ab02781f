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

#include "cefix/serialize.hpp"

#include <cmath>

namespace cefix {

using nlohmann::json;

namespace {

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json points(const std::vector<Point>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(to_text(p));
  return out;
}

json index_pair(const std::optional<std::pair<std::size_t, std::size_t>>& p) {
  return p ? json::array({p->first, p->second}) : json(nullptr);
}

}  // namespace

json to_json(const Quadruple& q) {
  return {{"x", to_text(q.x)}, {"y", to_text(q.y)}, {"u", to_text(q.u)}, {"v", to_text(q.v)}};
}

json to_json(const CertificationReport& r) {
  json j{{"verdict", std::string(to_string(r.verdict))},
         {"min_residual", real(r.min_residual)},
         {"samples", r.samples},
         {"seed", r.seed},
         {"lambda", r.lambda},
         {"s", real(r.s)},
         {"infima_finite", r.infima_finite},
         {"infima_exact", r.infima_exact},
         {"p_invariant", r.p_invariant},
         {"invariance_depth", r.invariance_depth}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.p_invariance_failure) {
    j["p_invariance_failure"] = {{"start", to_json(*r.p_invariance_start)},
                                 {"at", index_pair(r.p_invariance_failure->first_failure)},
                                 {"quadruple", to_json(*r.p_invariance_failure->failing)}};
  }
  return j;
}

json to_json(const ConvergenceReport& r) {
  json tail = json::array();
  for (double d : r.tail_rho) tail.push_back(real(d));
  return {{"limit", r.limit ? json(to_text(*r.limit)) : json(nullptr)},
          {"proximity_residual", real(r.proximity_residual)},
          {"fa_residual", real(r.fa_residual)},
          {"fb_residual", real(r.fb_residual)},
          {"tail_rho", tail},
          {"steps", r.steps},
          {"stop_reason", std::string(to_string(r.stop))},
          {"tol", r.tol}};
}

json to_json(const LimitComparison& c) {
  return {{"decision", std::string(to_string(c.decision))},
          {"first", c.first ? json(to_text(*c.first)) : json(nullptr)},
          {"second", c.second ? json(to_text(*c.second)) : json(nullptr)},
          {"gap", real(c.gap)}};
}

json to_json(const L1Check& c) {
  return {{"holds", c.holds},
          {"q", real(c.q)},
          {"bound", real(c.bound)},
          {"first_violation", c.first_violation ? json(*c.first_violation) : json(nullptr)},
          {"worst_excess", real(c.worst_excess)}};
}

json to_json(const BoundCertificate& c) {
  return {{"M", real(c.m)},
          {"lambda", c.lambda},
          {"S", real(c.s)},
          {"first_violation", index_pair(c.first_violation)},
          {"horizon", c.horizon},
          {"worst_excess", real(c.worst_excess)}};
}

json to_json(const SplitLimitResult& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"eps", s.eps},
                     {"from", s.from ? json(*s.from) : json(nullptr)},
                     {"parts_ok", s.parts_ok}});
  }
  return {{"holds", r.holds}, {"steps", steps}};
}

json to_json(const CdReport& r) {
  json j{{"found", r.counterexample.has_value()},
         {"tried", r.tried},
         {"admissible", r.admissible},
         {"horizon", r.horizon},
         {"dist", real(r.dist)},
         {"tol", r.tol},
         {"seed", r.seed}};
  if (r.counterexample) {
    j["counterexample"] = {{"index", r.counterexample->index},
                           {"reason", r.counterexample->reason},
                           {"x", points(r.counterexample->sequences.x)},
                           {"y", points(r.counterexample->sequences.y)}};
  }
  return j;
}

json to_json(const UcReport& r) {
  json j{{"found", r.counterexample.has_value()},
         {"tried", r.tried},
         {"admissible", r.admissible},
         {"horizon", r.horizon},
         {"dist", real(r.dist)},
         {"tol", r.tol},
         {"seed", r.seed}};
  if (r.counterexample) {
    j["counterexample"] = {{"index", r.counterexample->index},
                           {"min_tail_gap", real(r.counterexample->min_tail_gap)},
                           {"x", points(r.counterexample->sequences.x)},
                           {"z", points(r.counterexample->sequences.z)},
                           {"y", points(r.counterexample->sequences.y)}};
  }
  return j;
}

json to_json(const UniquenessViolation& v) {
  return {{"beta", to_text(v.beta)},
          {"tail_residual", real(v.tail_residual)},
          {"distance_to_alpha", real(v.distance_to_alpha)}};
}

json to_json(const BestProximityResult& r) {
  json z = json::array();
  json gaps = json::array();
  json cycles = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    z.push_back(r.z[i] ? json(to_text(*r.z[i])) : json(nullptr));
    gaps.push_back(r.decided ? real(r.gap_residuals[i]) : json(nullptr));
    cycles.push_back(r.decided ? real(r.cycle_residuals[i]) : json(nullptr));
  }
  return {{"decided", r.decided},
          {"z", z},
          {"gap_residuals", gaps},
          {"cycle_residuals", cycles},
          {"steps", r.steps}};
}

}  // namespace cefix
