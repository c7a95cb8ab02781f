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

#ifndef CEFIX_POINT_HPP_
#define CEFIX_POINT_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cefix {

/// A point of a built-in space: a fixed-length vector of real coordinates.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

  static Point scalar(double v) { return Point{v}; }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// The single coordinate of a one-dimensional point.
  double value() const;

  bool is_finite() const noexcept;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// (p, q) as one point of the product space.
Point concat(const Point& p, const Point& q);

/// Inverse of concat: the first `head_dim` coordinates and the rest.
std::pair<Point, Point> split(const Point& p, std::size_t head_dim);

/// A distinguished non-numeric member of an external set, e.g. the value 1
/// adjoined to A2 x A3.
struct Atom {
  std::int64_t id = 0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

using CPart = std::variant<Point, Atom>;

/// An element of the external set C. Built-in sets hold a single part (a real
/// vector or an atom); product systems hold one part per factor.
class CElement {
 public:
  CElement() = default;
  CElement(Point p) { parts_.emplace_back(std::move(p)); }  // NOLINT
  CElement(Atom a) { parts_.emplace_back(a); }              // NOLINT
  explicit CElement(std::vector<CPart> parts) : parts_(std::move(parts)) {}

  std::size_t arity() const noexcept { return parts_.size(); }
  const std::vector<CPart>& parts() const noexcept { return parts_; }

  bool is_point() const noexcept;
  bool is_atom(std::int64_t id) const noexcept;

  /// The point held by a single-part element; throws kInvalidInput otherwise.
  const Point& point() const;

  bool is_finite() const noexcept;

  friend bool operator==(const CElement&, const CElement&) = default;

 private:
  std::vector<CPart> parts_;
};

CElement concat(const CElement& a, const CElement& b);
std::pair<CElement, CElement> split(const CElement& c, std::size_t head_arity);

// Text forms. Coordinates are joined by ';' and printed with 17 significant
// digits; atoms print as "@<id>"; parts of a tuple element are joined by '|'.
std::string format_real(double v);
std::string to_text(const Point& p);
std::string to_text(const CElement& c);
Point parse_point(std::string_view text);
CElement parse_celement(std::string_view text);

}  // namespace cefix

#endif  // CEFIX_POINT_HPP_
