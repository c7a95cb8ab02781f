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

// Named and file-defined instances addressable from the command line.

#ifndef CEFIX_TOOLS_REGISTRY_HPP_
#define CEFIX_TOOLS_REGISTRY_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cefix/cef.hpp"
#include "cefix/instances.hpp"

namespace cefix::cli {

/// Optional overrides of the starting quadruple.
struct StartOverrides {
  std::optional<Point> x0;
  std::optional<Point> y0;
  std::optional<CElement> u0;
  std::optional<CElement> v0;
};

struct SystemEntry {
  std::string name;
  std::string description;
  ExternalFactorSystem system;
  /// Fills the starting quadruple from instance defaults.
  std::function<Quadruple(const StartOverrides&)> start;
  /// The scan candidate for grid value t, if it lies in A.
  std::function<std::optional<Point>(double)> grid_point;
  /// Constant C elements to try as infimum sequences anchored at beta.
  std::function<std::vector<CElement>(const Point& beta)> factors_at;
  std::string default_grid;
  /// Set for reductions of a cyclic triple.
  std::optional<CyclicTriple> cyclic;
  /// Name of the matching set-pair instance for property scans, if any.
  std::string pair_name;
};

struct InstanceInfo {
  std::string name;
  std::string kind;  // "system" or "pair"
  std::string description;
};

std::vector<InstanceInfo> list_instances();

/// True when `ref` names a JSON instance file rather than a built-in.
bool is_instance_file(const std::string& ref);

/// A built-in system or a JSON file of kind e1, banach, self-map, product or
/// cyclic3. Throws kInvalidInput for unknown names or malformed files.
SystemEntry load_system(const std::string& ref);

/// A built-in pair, a system's pair, or a JSON file of kind pair.
PairInstance load_pair(const std::string& ref);

SystemEntry system_from_json(const nlohmann::json& doc);
PairInstance pair_from_json(const nlohmann::json& doc);

}  // namespace cefix::cli

#endif  // CEFIX_TOOLS_REGISTRY_HPP_
