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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cmera/error.hpp"
#include "cmera/profiles.hpp"
#include "util.hpp"

namespace cmera::cli {

ImageSumPolicy NumericOptions::policy() const {
  ImageSumPolicy p;
  if (tolerance) p.tolerance = *tolerance;
  return p;
}

LineQuadConfig NumericOptions::line() const {
  LineQuadConfig c;
  if (tolerance) {
    c.rel_tol = 100.0 * *tolerance;
    c.abs_tol = std::min(c.abs_tol, *tolerance);
    c.quad_rel = std::min(c.quad_rel, *tolerance);
  }
  return c;
}

ModeSumConfig NumericOptions::modes() const {
  ModeSumConfig c;
  if (tolerance) c.tolerance = *tolerance;
  return c;
}

ImageSumConfig NumericOptions::images() const {
  ImageSumConfig c;
  if (tolerance) {
    c.rel_tol = *tolerance;
    c.abs_tol = std::min(c.abs_tol, *tolerance);
  }
  return c;
}

TableConfig NumericOptions::table(CircleRoute route) const {
  TableConfig t;
  t.line = line();
  t.modes = modes();
  t.images = images();
  t.route = route;
  t.threads = threads;
  return t;
}

double NumericOptions::richardson(double fallback) const { return tolerance ? 1e4 * *tolerance : fallback; }

double NumericOptions::quadrature(double fallback) const { return tolerance ? 100.0 * *tolerance : fallback; }

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> x(static_cast<std::size_t>(n));
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + i * h;
  x.back() = hi;
  return x;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > 0.0)) throw ConfigError("log grid bounds must be positive");
  std::vector<double> x = linspace(std::log(lo), std::log(hi), n);
  for (auto& v : x) v = std::exp(v);
  x.front() = lo;
  if (n > 1) x.back() = hi;
  return x;
}


// ---------------------------------------------------------------- profile

RunResult cmd_profile(ConfigReader& cfg, const NumericOptions& num) {
  ConfigReader pb = cfg.object("profile");
  const std::string kind = pb.string("profile", "magic");
  if (kind != "magic" && kind != "constant") {
    throw ConfigError("config field '" + pb.field("profile") + "': expected magic or constant");
  }
  const double lambda = pb.positive("lambda", 2.0);
  const std::vector<double> s_list = require_list(pb, "s", {0.0, 1.0, 2.0});
  Picture picture;
  try {
    picture = parse_picture(pb.string("picture", "rescaled"));
  } catch (const ConfigError& e) {
    throw ConfigError("config field '" + pb.field("picture") + "': " + e.what());
  }
  const double constant = kind == "constant" ? pb.number("value", -0.5) : 0.0;
  pb.finish();

  const auto geoms = read_geometries(cfg, "geometries", true, true);
  const int points = cfg.integer("points", 201, 2);
  const double x_max = cfg.positive("x_max", 2.0);
  cfg.finish();

  RunResult res;
  Dataset d{"profile", {"geometry", "lc", "lambda", "s", "picture", "x", "smooth", "closed_form", "image_sum", "abs_dev"}, {}, {}};
  json meta = json::array();
  double max_dev = 0.0;
  double max_end = 0.0;

  for (const Geometry& g : geoms) {
    for (double s : s_list) {
      const EntanglingProfile base = kind == "magic" ? EntanglingProfile::magic(lambda, s, picture)
                                                     : EntanglingProfile::constant(constant, lambda, s);
      json m = {{"geometry", geometry_to_json(g)}, {"s", s}, {"delta_coeff", base.real(1.0).delta_coeff}};
      if (g.is_line()) {
        for (double x : linspace(-x_max, x_max, points)) {
          const double v = base.real(x).smooth;
          const Cell closed = kind == "magic" ? Cell{magic_profile_real(x, lambda, s, picture).smooth} : Cell{};
          d.add({g.kind_name(), Cell{}, lambda, s, picture_name(picture), x, v, closed, Cell{}, Cell{}});
        }
      } else {
        const double lc = g.circle_length();
        const WrappedProfile w = wrap_profile(base, g, num.policy());
        m["images"] = w.images();
        m["tail_bound"] = w.tail_bound();
        const auto xs = linspace(0.0, lc, points);
        for (double x : xs) {
          const double v = w(x).smooth;
          const double image = w.image_sum(x);
          Cell closed{};
          Cell dev{};
          if (w.closed_form_available()) {
            const double c = w.closed_form(x);
            closed = c;
            dev = std::abs(c - image);
            max_dev = std::max(max_dev, std::abs(c - image));
          }
          d.add({g.kind_name(), lc, lambda, s, picture_name(picture), x, v, closed, image, dev});
        }
        max_end = std::max(max_end, std::abs(w(xs.front()).smooth - w(xs.back()).smooth));
      }
      meta.push_back(m);
    }
  }

  const int gc = d.column("geometry"), sc = d.column("s");
  PlotSpec plot{"", "entangling profile (delta term excluded)", "x", "g(s,x) smooth part", false, false, {}};
  for (const Geometry& g : geoms) {
    for (double s : s_list) {
      std::string f = str_filter(gc, g.kind_name()) + " && " + eq_filter(sc, s);
      if (g.is_circle()) f += " && " + eq_filter(d.column("lc"), g.circle_length());
      plot.series.push_back({geom_label(g) + " s=" + num_literal(s), f, d.column("x"), d.column("smooth")});
    }
  }

  d.plots.push_back(std::move(plot));
  res.summary["profiles"] = meta;
  if (std::any_of(geoms.begin(), geoms.end(), [](const Geometry& g) { return g.is_circle(); })) {
    // The image sum is only as good as its truncation tolerance.
    res.check("circle closed form vs image sum (abs)", max_dev, std::max(1e-12, num.policy().tolerance));
    res.check("circle endpoint periodicity (abs)", max_end, 1e-12);
  }
  res.datasets.push_back(std::move(d));
  return res;
}

// ---------------------------------------------------------------- beta

RunResult cmd_beta(ConfigReader& cfg, const NumericOptions& num) {
  const double lambda = cfg.positive("lambda", 1.0);
  const double m = cfg.positive("m", 1.0);
  const std::vector<double> s_list = non_negative_list(cfg, "s", {0.0, 0.5, 1.0, 2.0, 4.0});
  const double k_max = cfg.positive("k_max", 10.0);
  const int points = cfg.integer("points", 101, 2);
  const int n_max = cfg.integer("n_max", 8, 0);
  const auto geoms = read_geometries(cfg, "geometries", true, true);
  ConfigReader oc = cfg.object("ode");
  const bool ode = oc.boolean("enabled", true);
  OdeStepControl ctrl;
  ctrl.ds = oc.positive("ds", ctrl.ds);
  ctrl.richardson_tol = num.richardson(oc.positive("richardson_tol", ctrl.richardson_tol));
  oc.finish();
  cfg.finish();
  if (ode) ctrl.validate();

  RunResult res;
  Dataset d{"beta", {"geometry", "lc", "lambda", "m", "s", "n", "k", "beta", "beta_ode", "beta_qft", "ode_rel_dev"}, {}, {}};
  double worst_ode = 0.0;
  double worst_sample = 0.0;

  for (const Geometry& g : geoms) {
    for (double s : s_list) {
      const EntanglingProfile prof = EntanglingProfile::magic(lambda, s);
      if (g.is_line()) {
        const auto ks = linspace(0.0, k_max, points);
        std::vector<double> ode_vals(ks.size(), 0.0);
        if (ode) {
          parallel_for(ks.size(), num.threads,
                       [&](std::size_t i) { ode_vals[i] = beta_ode_integrate(prof, ks[i], s, ctrl); });
        }
        for (std::size_t i = 0; i < ks.size(); ++i) {
          const double b = beta_magic_closed(ks[i], lambda, s);
          Cell bo{}, dev{};
          if (ode) {
            bo = ode_vals[i];
            const double r = std::abs(ode_vals[i] - b) / b;
            dev = r;
            worst_ode = std::max(worst_ode, r);
          }
          d.add({g.kind_name(), Cell{}, lambda, m, s, Cell{}, ks[i], b, bo, beta_qft(ks[i], m), dev});
        }
      } else {
        const WrappedProfile w = wrap_profile(prof, g, num.policy());
        for (int n = 0; n <= n_max; ++n) {
          const double k = momentum_of_mode(g, n);
          const double b = beta_circle(n, lambda, s, g);
          const double line = beta_magic_closed(k, lambda, s);
          worst_sample = std::max(worst_sample, std::abs(b - line) / line);
          Cell bo{}, dev{};
          if (ode) {
            const double v = beta_circle_ode(w, n, s, ctrl);
            bo = v;
            dev = std::abs(v - b) / b;
            worst_ode = std::max(worst_ode, std::abs(v - b) / b);
          }
          d.add({g.kind_name(), g.circle_length(), lambda, m, s, static_cast<long long>(n), k, b, bo, beta_qft(k, m), dev});
        }
      }
    }
  }

  const int gc = d.column("geometry"), sc = d.column("s"), kc = d.column("k");
  PlotSpec plot{"", "beta(s,k) with the QFT overlay", "k", "beta", false, false, {}};
  for (const Geometry& g : geoms) {
    for (double s : s_list) {
      std::string f = str_filter(gc, g.kind_name()) + " && " + eq_filter(sc, s);
      if (g.is_circle()) f += " && " + eq_filter(d.column("lc"), g.circle_length());
      plot.series.push_back({geom_label(g) + " s=" + num_literal(s), f, kc, d.column("beta")});
    }
  }
  plot.series.push_back({"QFT m=" + num_literal(m), str_filter(gc, "line") + " && " + eq_filter(sc, s_list.front()),
                           kc, d.column("beta_qft")});

  d.plots.push_back(std::move(plot));
  res.summary["ode"] = {{"enabled", ode}, {"ds", ctrl.ds}, {"richardson_tol", ctrl.richardson_tol}};
  if (ode) res.check("ODE vs closed form (rel)", worst_ode, 1e-8);
  if (std::any_of(geoms.begin(), geoms.end(), [](const Geometry& g) { return g.is_circle(); })) {
    res.check("circle samples on the line curve (rel)", worst_sample, 1e-10);
  }
  res.datasets.push_back(std::move(d));
  return res;
}

// ---------------------------------------------------------------- dispatch

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"profile", "beta", "correlator", "images-check", "error-scan"};
  return names;
}

RunResult run_subcommand(const std::string& name, const json& config, std::optional<double> tolerance) {
  ConfigReader root(config, "");
  NumericOptions num;
  num.tolerance = tolerance;
  num.threads = static_cast<unsigned>(root.integer("threads", 0, 0));
  RunResult r;
  if (name == "profile") {
    r = cmd_profile(root, num);
  } else if (name == "beta") {
    r = cmd_beta(root, num);
  } else if (name == "correlator") {
    r = cmd_correlator(root, num);
  } else if (name == "images-check") {
    r = cmd_images_check(root, num);
  } else if (name == "error-scan") {
    r = cmd_error_scan(root, num);
  } else {
    throw ConfigError("unknown subcommand '" + name + "'");
  }
  root.finish();
  return r;
}

}  // namespace cmera::cli
