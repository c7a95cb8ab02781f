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

#ifndef CEFIX_ERROR_HPP_
#define CEFIX_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cefix {

enum class ErrorKind {
  kInvalidInput,
  kEstimationFailure,
  kNotCertified,
  kDomainViolation,
  kNumericFailure,
  kNotAnInfimumSequence,
  kRefuted,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception. Outcomes that
/// are expected results of a check (a refuted verdict, an undecided limit)
/// are returned as values instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cefix

#endif  // CEFIX_ERROR_HPP_
