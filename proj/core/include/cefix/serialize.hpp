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

// JSON forms of reports. Points and C elements use their text forms so that
// they round-trip through parse_point / parse_celement; non-finite reals
// serialize as null.

#ifndef CEFIX_SERIALIZE_HPP_
#define CEFIX_SERIALIZE_HPP_

#include <nlohmann/json.hpp>

#include "cefix/cef.hpp"
#include "cefix/checkers.hpp"
#include "cefix/instances.hpp"
#include "cefix/iterate.hpp"

namespace cefix {

nlohmann::json to_json(const Quadruple& q);
nlohmann::json to_json(const CertificationReport& r);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const LimitComparison& c);
nlohmann::json to_json(const L1Check& c);
nlohmann::json to_json(const BoundCertificate& c);
nlohmann::json to_json(const SplitLimitResult& r);
nlohmann::json to_json(const CdReport& r);
nlohmann::json to_json(const UcReport& r);
nlohmann::json to_json(const UniquenessViolation& v);
nlohmann::json to_json(const BestProximityResult& r);

}  // namespace cefix

#endif  // CEFIX_SERIALIZE_HPP_
