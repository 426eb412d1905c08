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

#include "cmera/geometry.hpp"

#include <cmath>
#include <numbers>

#include "cmera/error.hpp"

namespace cmera {

namespace {

void require_length(double l, const char* what) {
  if (!(std::isfinite(l) && l > 0.0)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

Geometry Geometry::circle(double lc) {
  require_length(lc, "circle length lc");
  return Geometry(Circle{lc});
}

Geometry Geometry::torus(double l1, double l2) {
  require_length(l1, "torus length l1");
  require_length(l2, "torus length l2");
  return Geometry(Torus{l1, l2});
}

double Geometry::circle_length() const {
  if (const auto* c = std::get_if<Circle>(&v_)) return c->lc;
  throw DomainError("geometry is not a circle: " + kind_name());
}

double Geometry::period(int axis) const {
  if (const auto* c = std::get_if<Circle>(&v_)) {
    if (axis != 0) throw DomainError("a circle has a single axis");
    return c->lc;
  }
  if (const auto* t = std::get_if<Torus>(&v_)) {
    if (axis == 0) return t->l1;
    if (axis == 1) return t->l2;
    throw DomainError("torus axis must be 0 or 1");
  }
  throw DomainError("geometry has no discrete momenta: " + kind_name());
}

std::string Geometry::kind_name() const {
  struct Namer {
    std::string operator()(const Line&) const { return "line"; }
    std::string operator()(const Circle&) const { return "circle"; }
    std::string operator()(const Torus&) const { return "torus"; }
    std::string operator()(const HalfLine&) const { return "halfline"; }
  };
  return std::visit(Namer{}, v_);
}

bool operator==(const Geometry& a, const Geometry& b) {
  if (a.v_.index() != b.v_.index()) return false;
  if (const auto* c = std::get_if<Circle>(&a.v_)) return c->lc == std::get<Circle>(b.v_).lc;
  if (const auto* t = std::get_if<Torus>(&a.v_)) {
    const auto& u = std::get<Torus>(b.v_);
    return t->l1 == u.l1 && t->l2 == u.l2;
  }
  if (const auto* h = std::get_if<HalfLine>(&a.v_)) return h->bc == std::get<HalfLine>(b.v_).bc;
  return true;
}

double momentum_of_mode(const Geometry& geom, int n, int axis) {
  const double l = geom.period(axis);
  // Multiplying the integer last keeps k(-n) == -k(n) bit for bit.
  return (2.0 * std::numbers::pi / l) * static_cast<double>(n);
}

std::vector<int> mode_range(const Geometry& geom, int n_max) {
  if (!geom.is_circle()) throw DomainError("mode_range: geometry must be a circle");
  if (n_max < 0) throw DomainError("mode_range: n_max must be >= 0");
  std::vector<int> modes;
  modes.reserve(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) modes.push_back(n);
  return modes;
}

std::vector<std::array<int, 2>> mode_range_torus(const Geometry& geom, int n_max) {
  if (!geom.is_torus()) throw DomainError("mode_range_torus: geometry must be a torus");
  if (n_max < 0) throw DomainError("mode_range_torus: n_max must be >= 0");
  std::vector<std::array<int, 2>> modes;
  modes.reserve(static_cast<std::size_t>((2 * n_max + 1) * (2 * n_max + 1)));
  for (int n1 = -n_max; n1 <= n_max; ++n1)
    for (int n2 = -n_max; n2 <= n_max; ++n2) modes.push_back({n1, n2});
  return modes;
}

void MomentumGrid::validate_continuous() const {
  if (!(std::isfinite(k_max) && k_max > 0.0)) throw DomainError("k_max must be positive");
  if (n_points < 16 || n_points % 2 != 0) {
    throw DomainError("n_points must be an even integer >= 16");
  }
}

void MomentumGrid::validate_discrete() const {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
}

std::vector<double> MomentumGrid::line_nodes() const {
  validate_continuous();
  std::vector<double> k(static_cast<std::size_t>(n_points));
  const double scale = std::sinh(3.0);
  for (int i = 0; i < n_points; ++i) {
    const double t = (2.0 * i - (n_points - 1)) / static_cast<double>(n_points - 1);
    k[static_cast<std::size_t>(i)] =
        spacing == GridSpacing::Uniform ? k_max * t : k_max * std::sinh(3.0 * t) / scale;
  }
  // Mirror the lower half so the grid is exactly symmetric.
  for (int i = 0; i < n_points / 2; ++i) {
    k[static_cast<std::size_t>(i)] = -k[static_cast<std::size_t>(n_points - 1 - i)];
  }
  return k;
}

std::vector<int> mode_range(const Geometry& geom, const MomentumGrid& grid) {
  grid.validate_discrete();
  return mode_range(geom, grid.n_max);
}

}  // namespace cmera
