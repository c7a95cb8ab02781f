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

#include "cefix/point.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "cefix/error.hpp"

namespace cefix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid-input";
    case ErrorKind::kEstimationFailure:
      return "estimation-failure";
    case ErrorKind::kNotCertified:
      return "not-certified";
    case ErrorKind::kDomainViolation:
      return "domain-violation";
    case ErrorKind::kNumericFailure:
      return "numeric-failure";
    case ErrorKind::kNotAnInfimumSequence:
      return "not-an-infimum-sequence";
    case ErrorKind::kRefuted:
      return "refuted";
  }
  return "unknown";
}

double Point::value() const {
  if (coords_.size() != 1) {
    throw Error(ErrorKind::kInvalidInput,
                "expected a one-dimensional point, got dimension " +
                    std::to_string(coords_.size()));
  }
  return coords_[0];
}

bool Point::is_finite() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double v) { return std::isfinite(v); });
}

Point concat(const Point& p, const Point& q) {
  std::vector<double> out(p.coords().begin(), p.coords().end());
  out.insert(out.end(), q.coords().begin(), q.coords().end());
  return Point(std::move(out));
}

std::pair<Point, Point> split(const Point& p, std::size_t head_dim) {
  if (head_dim > p.dim()) {
    throw Error(ErrorKind::kInvalidInput, "split beyond point dimension");
  }
  auto c = p.coords();
  return {Point(std::vector<double>(c.begin(), c.begin() + head_dim)),
          Point(std::vector<double>(c.begin() + head_dim, c.end()))};
}

bool CElement::is_point() const noexcept {
  return parts_.size() == 1 && std::holds_alternative<Point>(parts_[0]);
}

bool CElement::is_atom(std::int64_t id) const noexcept {
  return parts_.size() == 1 && std::holds_alternative<Atom>(parts_[0]) &&
         std::get<Atom>(parts_[0]).id == id;
}

const Point& CElement::point() const {
  if (!is_point()) {
    throw Error(ErrorKind::kInvalidInput,
                "external element " + to_text(*this) + " is not a point");
  }
  return std::get<Point>(parts_[0]);
}

bool CElement::is_finite() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](const CPart& part) {
    const auto* p = std::get_if<Point>(&part);
    return p == nullptr || p->is_finite();
  });
}

CElement concat(const CElement& a, const CElement& b) {
  std::vector<CPart> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return CElement(std::move(parts));
}

std::pair<CElement, CElement> split(const CElement& c, std::size_t head_arity) {
  if (head_arity > c.arity()) {
    throw Error(ErrorKind::kInvalidInput, "split beyond element arity");
  }
  const auto& parts = c.parts();
  return {CElement(std::vector<CPart>(parts.begin(), parts.begin() + head_arity)),
          CElement(std::vector<CPart>(parts.begin() + head_arity, parts.end()))};
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_text(const Point& p) {
  std::string out;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i != 0) out += ';';
    out += format_real(p[i]);
  }
  return out;
}

std::string to_text(const CElement& c) {
  std::string out;
  for (std::size_t i = 0; i < c.arity(); ++i) {
    if (i != 0) out += '|';
    const auto& part = c.parts()[i];
    if (const auto* atom = std::get_if<Atom>(&part)) {
      out += '@' + std::to_string(atom->id);
    } else {
      out += to_text(std::get<Point>(part));
    }
  }
  return out;
}

namespace {

double parse_real(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::kInvalidInput,
                "not a real number: '" + std::string(s) + "'");
  }
  return v;
}

template <typename Fn>
void for_each_field(std::string_view text, char sep, Fn&& fn) {
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    fn(text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                         : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
}

}  // namespace

Point parse_point(std::string_view text) {
  std::vector<double> coords;
  // ',' is accepted as well so command lines can write "3,5".
  for_each_field(text, ';', [&](std::string_view field) {
    for_each_field(field, ',',
                   [&](std::string_view f) { coords.push_back(parse_real(f)); });
  });
  return Point(std::move(coords));
}

CElement parse_celement(std::string_view text) {
  std::vector<CPart> parts;
  for_each_field(text, '|', [&](std::string_view field) {
    if (!field.empty() && field.front() == '@') {
      std::int64_t id = 0;
      auto body = field.substr(1);
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), id);
      if (ec != std::errc() || ptr != body.data() + body.size()) {
        throw Error(ErrorKind::kInvalidInput,
                    "bad atom: '" + std::string(field) + "'");
      }
      parts.emplace_back(Atom{id});
    } else {
      parts.emplace_back(parse_point(field));
    }
  });
  return CElement(std::move(parts));
}

}  // namespace cefix
