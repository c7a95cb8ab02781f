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

// Umbrella header for the whole library.

#ifndef CEFIX_CEFIX_HPP_
#define CEFIX_CEFIX_HPP_

#include "cefix/cef.hpp"
#include "cefix/checkers.hpp"
#include "cefix/error.hpp"
#include "cefix/instances.hpp"
#include "cefix/iterate.hpp"
#include "cefix/metric.hpp"
#include "cefix/point.hpp"
#include "cefix/serialize.hpp"

#endif  // CEFIX_CEFIX_HPP_
