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

#include "cmera/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cmera/error.hpp"
#include "cmera/kernels.hpp"

namespace cmera::quad {

// QUADPACK qk21 constants.
const std::array<double, 11> Gk21Rule::kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

const std::array<double, 11> Gk21Rule::kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077841551175440, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

const std::array<double, 5> Gk21Rule::kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

namespace {

constexpr std::size_t kPanelSize = 21;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct PanelWeights {
  std::array<double, kPanelSize> offsets{};  // node positions on [-1, 1]
  std::array<double, kPanelSize> kronrod{};
  std::array<double, kPanelSize> gauss{};
};

const PanelWeights& panel_weights() {
  static const PanelWeights w = [] {
    PanelWeights p;
    p.offsets[0] = 0.0;
    p.kronrod[0] = Gk21Rule::kKronrodWeights[10];
    p.gauss[0] = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      const double g = (i % 2 == 1) ? Gk21Rule::kGaussWeights[i / 2] : 0.0;
      p.offsets[1 + 2 * i] = -Gk21Rule::kNodes[i];
      p.offsets[2 + 2 * i] = Gk21Rule::kNodes[i];
      p.kronrod[1 + 2 * i] = p.kronrod[2 + 2 * i] = Gk21Rule::kKronrodWeights[i];
      p.gauss[1 + 2 * i] = p.gauss[2 + 2 * i] = g;
    }
    return p;
  }();
  return w;
}

struct Interval {
  double a;
  double b;
  Estimate est;
};

Estimate adaptive(const BatchFn& f, double a, double b, const Tolerance& tol, const double* cos_x) {
  std::vector<Interval> work;
  work.push_back({a, b, gk21_panel(f, a, b, cos_x)});
  double value = work.front().est.value;
  double error = work.front().est.error;

  for (int it = 0; it < tol.max_subdivisions && error > tol.target(value); ++it) {
    auto worst = std::max_element(work.begin(), work.end(),
                                  [](const Interval& l, const Interval& r) { return l.est.error < r.est.error; });
    const Interval w = *worst;
    const double mid = 0.5 * (w.a + w.b);
    if (!(mid > w.a && mid < w.b)) break;  // interval no longer divisible
    const Estimate left = gk21_panel(f, w.a, mid, cos_x);
    const Estimate right = gk21_panel(f, mid, w.b, cos_x);
    *worst = {w.a, mid, left};
    work.push_back({mid, w.b, right});

    value = 0.0;
    error = 0.0;
    for (const auto& iv : work) {
      value += iv.est.value;
      error += iv.est.error;
    }
  }
  return {value, error};
}

}  // namespace

BatchFn batched(ScalarFn f) {
  return [f = std::move(f)](std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  };
}

double Tolerance::target(double value) const { return std::max(abs, rel * std::abs(value)); }

Estimate gk21_panel(const BatchFn& f, double a, double b, const double* cos_x) {
  const PanelWeights& pw = panel_weights();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, kPanelSize> nodes{};
  std::array<double, kPanelSize> values{};
  for (std::size_t i = 0; i < kPanelSize; ++i) nodes[i] = center + half * pw.offsets[i];
  f(nodes, values);

  double kronrod = 0.0;
  double gauss = 0.0;
  if (cos_x != nullptr) {
    kronrod = kernels::cosine_dot(nodes, values, pw.kronrod, *cos_x);
    gauss = kernels::cosine_dot(nodes, values, pw.gauss, *cos_x);
  } else {
    for (std::size_t i = 0; i < kPanelSize; ++i) {
      kronrod += pw.kronrod[i] * values[i];
      gauss += pw.gauss[i] * values[i];
    }
  }

  // |f| bounds |f cos| so the same magnitude serves both cases.
  double resabs = 0.0;
  double resasc = 0.0;
  const double mean = kronrod * 0.5;
  for (std::size_t i = 0; i < kPanelSize; ++i) resabs += pw.kronrod[i] * std::abs(values[i]);
  for (std::size_t i = 0; i < kPanelSize; ++i) resasc += pw.kronrod[i] * std::abs(values[i] - mean);
  if (cos_x != nullptr) resasc = resabs;

  kronrod *= half;
  gauss *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {kronrod, err};
}

Estimate integrate(const BatchFn& f, double a, double b, const Tolerance& tol) {
  return adaptive(f, a, b, tol, nullptr);
}

Estimate integrate_cosine(const BatchFn& f, double x, double a, double b, const Tolerance& tol) {
  return adaptive(f, a, b, tol, &x);
}

Estimate integrate_semi_infinite(const BatchFn& f, double a, const Tolerance& tol) {
  BatchFn mapped = [&f, a](std::span<const double> t, std::span<double> out) {
    std::array<double, kPanelSize> k{};
    std::array<double, kPanelSize> fk{};
    for (std::size_t i = 0; i < t.size(); ++i) k[i] = a + t[i] / (1.0 - t[i]);
    f(std::span<const double>(k.data(), t.size()), std::span<double>(fk.data(), t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double d = 1.0 - t[i];
      out[i] = fk[i] / (d * d);
    }
  };
  return adaptive(mapped, 0.0, 1.0, tol, nullptr);
}

Estimate romberg(const ScalarFn& f, double a, double b, double tol, int max_level) {
  std::vector<double> prev;
  std::vector<double> cur;
  double h = b - a;
  double trap = 0.5 * h * (f(a) + f(b));
  prev.push_back(trap);
  double last_diag = trap;

  for (int level = 1; level <= max_level; ++level) {
    const long n_new = 1L << (level - 1);
    h *= 0.5;
    double sum = 0.0;
    for (long i = 0; i < n_new; ++i) sum += f(a + (2 * i + 1) * h);
    trap = 0.5 * trap + h * sum;

    cur.assign(static_cast<std::size_t>(level) + 1, 0.0);
    cur[0] = trap;
    double factor = 1.0;
    for (int j = 1; j <= level; ++j) {
      factor *= 4.0;
      cur[static_cast<std::size_t>(j)] =
          cur[static_cast<std::size_t>(j) - 1] +
          (cur[static_cast<std::size_t>(j) - 1] - prev[static_cast<std::size_t>(j) - 1]) / (factor - 1.0);
    }
    const double diag = cur.back();
    const double diff = std::abs(diag - last_diag);
    if (level >= 4 && diff <= tol) return {diag, diff};
    last_diag = diag;
    prev.swap(cur);
  }
  throw ConvergenceError("romberg: refinement stalled above tolerance " + describe(tol));
}

void WynnEpsilon::push(double partial_sum) {
  sums_.push_back(partial_sum);
  if (sums_.size() > window_) sums_.erase(sums_.begin());

  const std::size_t n = sums_.size();
  std::vector<double> older(n + 1, 0.0);  // column k-2
  std::vector<double> newer(sums_);       // column k-1
  double best = sums_.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    bool ok = true;
    for (std::size_t j = 0; j + k < n; ++j) {
      const double diff = newer[j + 1] - newer[j];
      if (diff == 0.0 || !std::isfinite(diff)) {
        ok = false;
        break;
      }
      next[j] = older[j + 1] + 1.0 / diff;
    }
    if (!ok) break;
    older.swap(newer);
    newer.swap(next);
    if (k % 2 == 0) best = newer.back();
  }
  estimate_ = best;
  history_.push_back(best);
}

double WynnEpsilon::error() const {
  const std::size_t n = history_.size();
  if (n < 3) return std::numeric_limits<double>::infinity();
  const double e0 = history_[n - 1];
  return std::abs(e0 - history_[n - 2]) + std::abs(e0 - history_[n - 3]);
}

Estimate cosine_transform(const BatchFn& f, double x, const OscillatoryConfig& cfg) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("cosine_transform: x must be > 0");
  const double half_period = std::numbers::pi / x;

  Tolerance local = cfg.tol;
  double lo = 0.0;
  double hi = 0.5 * half_period;
  double head = 0.0;
  double head_err = 0.0;
  for (;;) {
    const Estimate e = integrate_cosine(f, x, lo, hi, local);
    head += e.value;
    head_err += e.error;
    lo = hi;
    hi += half_period;
    if (lo >= cfg.k_split) break;
  }

  WynnEpsilon wynn;
  double partial = head;
  double quad_err = head_err;
  wynn.push(partial);
  for (int t = 0; t < cfg.max_tail_terms; ++t) {
    const Estimate e = integrate_cosine(f, x, lo, hi, local);
    partial += e.value;
    quad_err += e.error;
    wynn.push(partial);
    lo = hi;
    hi += half_period;
    if (t + 1 >= cfg.min_tail_terms && wynn.error() <= cfg.tol.target(wynn.estimate())) {
      return {wynn.estimate(), wynn.error() + quad_err};
    }
  }
  throw ConvergenceError("cosine_transform: tail extrapolation did not converge at x = " + describe(x));
}

}  // namespace cmera::quad
