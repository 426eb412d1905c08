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

#include "cmera/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cmera/error.hpp"
#include "cmera/images.hpp"

namespace cmera {

double relative_error(double cmera_val, double qft_val) {
  if (!(std::abs(qft_val) >= kUnderflowFloor)) {
    throw DomainError("relative_error: reference value below the underflow floor");
  }
  return std::abs(cmera_val - qft_val) / std::abs(qft_val);
}

namespace {

// Two-sided 97.5% Student-t quantiles for 1..30 degrees of freedom.
double t_quantile(int dof) {
  static constexpr std::array<double, 30> kT = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                                                2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                                                2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                                                2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof < 1) return std::numeric_limits<double>::infinity();
  if (dof <= 30) return kT[static_cast<std::size_t>(dof - 1)];
  return 1.96;
}

}  // namespace

SlopeFit fit_log_slope(std::span<const double> s, std::span<const double> e, double noise_floor, int min_points) {
  if (s.size() != e.size()) throw DomainError("fit_log_slope: s and E must have the same length");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (e[i] > noise_floor && e[i] > 0.0 && std::isfinite(e[i])) {
      xs.push_back(s[i]);
      ys.push_back(std::log(e[i]));
    }
  }
  const int n = static_cast<int>(xs.size());
  if (n < std::max(2, min_points)) {
    throw ConvergenceError("fit_log_slope: only " + std::to_string(n) + " points above the noise floor (need " +
                           std::to_string(std::max(2, min_points)) + ")");
  }
  double mx = 0.0;
  double my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[static_cast<std::size_t>(i)];
    my += ys[static_cast<std::size_t>(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[static_cast<std::size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_log_slope: need at least two distinct s values");

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = n;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] - (fit.intercept + fit.slope * xs[static_cast<std::size_t>(i)]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.half_width = n > 2 ? t_quantile(n - 2) * std::sqrt(ss / (n - 2) / sxx) : std::numeric_limits<double>::infinity();
  return fit;
}

namespace {

double lambda_of(const ErrorScanConfig& cfg) { return cfg.lambda > 0.0 ? cfg.lambda : cfg.m; }

bool within_factor(double x, double scale, double factor) { return x > scale / factor && x < scale * factor; }

BetaFunction qft_on(const Geometry& g, double m) { return BetaFunction::qft(m, g); }

}  // namespace

ErrorScan run_error_scan(const ErrorScanConfig& cfg) {
  if (cfg.s_values.empty() || cfg.x_values.empty()) throw DomainError("error scan: empty s or x list");
  if (!(cfg.m > 0.0)) throw DomainError("error scan: m must be > 0");
  if (!cfg.geometry.is_line() && !cfg.geometry.is_circle()) {
    throw DomainError("error scan: geometry must be a line or a circle");
  }
  ErrorScan scan;
  scan.channel = cfg.channel;
  scan.geometry = cfg.geometry;
  scan.m = cfg.m;
  scan.lambda = lambda_of(cfg);
  scan.s_values = cfg.s_values;
  scan.x_lo = *std::min_element(cfg.x_values.begin(), cfg.x_values.end());
  scan.x_hi = *std::max_element(cfg.x_values.begin(), cfg.x_values.end());

  const CorrelatorTable ref = build_correlator_table(qft_on(cfg.geometry, cfg.m), cfg.channel, cfg.x_values, cfg.table);
  for (double s : cfg.s_values) {
    const BetaFunction beta = BetaFunction::cmera(scan.lambda, s, cfg.geometry);
    const CorrelatorTable t = build_correlator_table(beta, cfg.channel, cfg.x_values, cfg.table);
    const double x_uv = std::exp(-s) / cfg.m;
    for (std::size_t i = 0; i < cfg.x_values.size(); ++i) {
      ErrorScanPoint p;
      p.s = s;
      p.x = cfg.x_values[i];
      p.cmera = t.value[i];
      p.qft = ref.value[i];
      if (std::abs(p.qft) < kUnderflowFloor) {
        p.excluded = true;
        p.reason = "reference below underflow floor";
        p.error = 0.0;
      } else {
        p.error = relative_error(p.cmera, p.qft);
        if (within_factor(p.x, x_uv, 3.0)) {
          p.excluded = true;
          p.reason = "within a factor 3 of x_UV";
        } else if (cfg.geometry.is_line() && within_factor(p.x, 1.0 / cfg.m, 3.0)) {
          p.excluded = true;
          p.reason = "within a factor 3 of 1/m";
        } else if (!(p.error > cfg.noise_floor)) {
          p.excluded = true;
          p.reason = "below noise floor";
        }
      }
      scan.points.push_back(p);
    }
  }
  return scan;
}

SlopeFit error_slope_fit(const ErrorScan& scan, double x) {
  if (scan.points.empty()) throw DomainError("error_slope_fit: empty scan");
  double best = scan.points.front().x;
  for (const auto& p : scan.points) {
    if (std::abs(p.x - x) < std::abs(best - x)) best = p.x;
  }
  std::vector<double> s;
  std::vector<double> e;
  for (const auto& p : scan.points) {
    if (p.x == best && !p.excluded) {
      s.push_back(p.s);
      e.push_back(p.error);
    }
  }
  return fit_log_slope(s, e);
}

SlopeFit error_slope_fit(const ErrorScan& scan) {
  std::vector<double> s;
  std::vector<double> e;
  for (double sv : scan.s_values) {
    double acc = 0.0;
    int n = 0;
    for (const auto& p : scan.points) {
      if (p.s == sv && !p.excluded) {
        acc += std::log(p.error);
        ++n;
      }
    }
    if (n > 0) {
      s.push_back(sv);
      e.push_back(std::exp(acc / n));
    }
  }
  return fit_log_slope(s, e);
}

TransferReport check_error_transfer(Channel channel, double m, double lambda, double s, double lc, double x_uv,
                                    std::span<const double> x_grid, const TransferConfig& cfg) {
  if (!(m > 0.0) || !(lambda > 0.0) || !(lc > 0.0)) throw DomainError("error transfer: m, lambda, l_c must be > 0");
  TransferReport rep;
  rep.channel = channel;
  rep.m = m;
  rep.lambda = lambda;
  rep.s = s;
  rep.lc = lc;
  rep.x_uv = x_uv;
  rep.slack = cfg.slack;
  rep.holds = true;

  const BetaFunction cm = BetaFunction::cmera(lambda, s);
  const double q = std::exp(-std::min(m, lambda) * lc);

  for (double x : x_grid) {
    if (x < x_uv || x > 0.5 * lc) continue;
    // Collect image terms until the reference tail is negligible.
    std::vector<double> cmera_terms;
    std::vector<double> qft_terms;
    auto add = [&](double d) {
      cmera_terms.push_back(line_correlator_real(cm, channel, d, cfg.line).value);
      qft_terms.push_back(qft_line_closed(channel, m, d));
    };
    add(x);
    for (int n = 1;; ++n) {
      if (n > cfg.images.max_images) throw PolicyError("error transfer: image sum did not converge");
      add(x + n * lc);
      add(n * lc - x);
      double ref = 0.0;
      for (double v : qft_terms) ref += v;
      const double t = std::abs(qft_terms[qft_terms.size() - 1]) + std::abs(qft_terms[qft_terms.size() - 2]);
      if (n >= 2 && t * q / (1.0 - q) <= std::max(cfg.images.abs_tol, cfg.images.rel_tol * std::abs(ref))) break;
    }

    const bool positive = qft_terms.front() > 0.0;
    for (double v : qft_terms) {
      if ((v > 0.0) != positive || v == 0.0) {
        throw PreconditionViolation("error transfer: the reference line correlator changes sign across the images");
      }
    }

    double sum_c = 0.0;
    double sum_q = 0.0;
    for (std::size_t i = 0; i < qft_terms.size(); ++i) {
      sum_c += cmera_terms[i];
      sum_q += qft_terms[i];
    }
    TransferRow row;
    row.x = x;
    row.images = static_cast<int>((qft_terms.size() - 1) / 2);
    row.circle_error = relative_error(sum_c, sum_q);
    double max_sig = 0.0;
    double negligible = 0.0;
    for (std::size_t i = 0; i < qft_terms.size(); ++i) {
      const double dev = std::abs(cmera_terms[i] - qft_terms[i]);
      if (std::abs(qft_terms[i]) >= cfg.significance * std::abs(sum_q)) {
        const double e = dev / std::abs(qft_terms[i]);
        max_sig = std::max(max_sig, e);
      } else {
        negligible += dev;
      }
    }
    row.image_bound = max_sig + negligible / std::abs(sum_q);
    row.holds = row.circle_error <= row.image_bound + cfg.slack;
    rep.line_epsilon = std::max(rep.line_epsilon, row.image_bound);
    rep.max_circle_error = std::max(rep.max_circle_error, row.circle_error);
    rep.holds = rep.holds && row.holds;
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) throw DomainError("error transfer: no grid point inside [x_UV, l_c/2]");
  rep.holds = rep.holds && rep.max_circle_error <= rep.line_epsilon + cfg.slack;
  return rep;
}

OnsetReport uv_onset_scan(Channel channel, double m, double s, const Geometry& geometry, const OnsetConfig& cfg) {
  if (!(m > 0.0)) throw DomainError("uv_onset_scan: m must be > 0");
  if (!(s >= 0.0)) throw DomainError("uv_onset_scan: s must be >= 0");
  if (!geometry.is_line()) throw DomainError("uv_onset_scan: only the line is supported");
  if (cfg.points < 2) throw DomainError("uv_onset_scan: need at least 2 grid points");

  OnsetReport rep;
  rep.x_uv = std::exp(-s) / m;
  const double lo = rep.x_uv * cfg.lo_factor;
  const double hi = cfg.hi_factor / m;
  if (!(hi > lo)) throw DomainError("uv_onset_scan: empty x range");
  rep.x.resize(static_cast<std::size_t>(cfg.points));
  for (int i = 0; i < cfg.points; ++i) {
    rep.x[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (cfg.points - 1));
  }
  rep.error.assign(rep.x.size(), 0.0);

  if (std::isinf(cfg.threshold)) {
    rep.x_onset = rep.x.front();
    rep.ratio = rep.x_onset / rep.x_uv;
    return rep;
  }

  const BetaFunction cm = BetaFunction::cmera(m, s);
  parallel_for(rep.x.size(), 0, [&](std::size_t i) {
    const double x = rep.x[i];
    rep.error[i] = relative_error(line_correlator_real(cm, channel, x, cfg.line).value, qft_line_closed(channel, m, x));
  });

  std::size_t first = rep.x.size();
  for (std::size_t i = rep.x.size(); i-- > 0;) {
    if (rep.error[i] < cfg.threshold) {
      first = i;
    } else {
      break;
    }
  }
  if (first == rep.x.size()) {
    throw ConvergenceError("uv_onset_scan: relative error never stays below " + describe(cfg.threshold));
  }
  rep.x_onset = rep.x[first];
  rep.ratio = rep.x_onset / rep.x_uv;
  return rep;
}

}  // namespace cmera
