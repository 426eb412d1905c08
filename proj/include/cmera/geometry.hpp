// Copyright 2026 The cmera Authors
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

#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

namespace cmera {

// Natural units throughout (hbar = c = 1).

struct Line {};

struct Circle {
  double lc;
};

/// Two-dimensional torus; higher-dimensional tori are not modelled.
struct Torus {
  double l1;
  double l2;
};

enum class BoundaryCondition { Neumann, Dirichlet };

struct HalfLine {
  BoundaryCondition bc;
};

class Geometry {
 public:
  using Variant = std::variant<Line, Circle, Torus, HalfLine>;

  static Geometry line() { return Geometry(Line{}); }
  static Geometry circle(double lc);
  static Geometry torus(double l1, double l2);
  static Geometry half_line(BoundaryCondition bc) { return Geometry(HalfLine{bc}); }

  const Variant& variant() const { return v_; }

  bool is_line() const { return std::holds_alternative<Line>(v_); }
  bool is_circle() const { return std::holds_alternative<Circle>(v_); }
  bool is_torus() const { return std::holds_alternative<Torus>(v_); }
  bool is_half_line() const { return std::holds_alternative<HalfLine>(v_); }

  /// Circle length; throws DomainError for other geometries.
  double circle_length() const;
  /// Period along `axis` (0 or 1) for Circle (axis 0 only) and Torus.
  double period(int axis) const;

  std::string kind_name() const;

  friend bool operator==(const Geometry& a, const Geometry& b);

 private:
  explicit Geometry(Variant v) : v_(v) {}
  Variant v_;
};

/// k_n = 2 pi n / l along the given axis. Circle or Torus only.
double momentum_of_mode(const Geometry& geom, int n, int axis = 0);

/// Symmetric mode enumeration [-n_max, n_max] for a Circle.
std::vector<int> mode_range(const Geometry& geom, int n_max);

/// Cartesian product of per-axis ranges for a Torus, row-major in (n1, n2).
std::vector<std::array<int, 2>> mode_range_torus(const Geometry& geom, int n_max);

enum class GridSpacing { Uniform, TailSubstituted };

/// Momentum discretization. Line-like domains use (k_max, n_points, spacing);
/// compact domains use n_max.
struct MomentumGrid {
  double k_max = 10.0;
  int n_points = 64;
  GridSpacing spacing = GridSpacing::Uniform;
  int n_max = 16;

  void validate_continuous() const;
  void validate_discrete() const;

  /// Nodes on [-k_max, k_max], symmetric about 0. TailSubstituted clusters
  /// nodes near k = 0 via k = k_max sinh(3t)/sinh(3), t uniform in [-1, 1].
  std::vector<double> line_nodes() const;
};

std::vector<int> mode_range(const Geometry& geom, const MomentumGrid& grid);

}  // namespace cmera
