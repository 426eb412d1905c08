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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cmera/analysis.hpp"
#include "cmera/profiles.hpp"
#include "cmera/special_functions.hpp"
#include "commands.hpp"
#include "util.hpp"

namespace cmera::cli {

// ---------------------------------------------------------------- images-check

RunResult cmd_images_check(ConfigReader& cfg, const NumericOptions& num) {
  const auto names = cfg.strings("functions", {"exponential", "gaussian", "magic"});
  if (names.empty()) throw ConfigError("config field '" + cfg.field("functions") + "': the test-function corpus is empty");
  const auto periods = require_list(cfg, "periods", {0.5, 1.0, 2.0});
  for (double l : periods) {
    if (!(l > 0.0)) throw ConfigError("config field '" + cfg.field("periods") + "': periods must be > 0");
  }
  const int n_max = cfg.integer("n_max", 8, 0);
  const double quad_tol = num.quadrature(cfg.positive("quad_tol", 1e-10));
  const double ref_tol = cfg.positive("closed_form_tolerance", 1e-15);
  const int wrap_points = cfg.integer("wrap_points", 65, 2);
  ConfigReader mr = cfg.object("magic");
  const double lambda = mr.positive("lambda", 2.0);
  const double s = mr.non_negative("s", 0.0);
  Picture picture;
  try {
    picture = parse_picture(mr.string("picture", "rescaled"));
  } catch (const ConfigError& e) {
    throw ConfigError("config field '" + mr.field("picture") + "': " + e.what());
  }
  mr.finish();
  cfg.finish();

  std::vector<TestFunction> corpus;
  for (const auto& n : names) {
    if (n == "exponential") {
      corpus.push_back(TestFunction::exponential());
    } else if (n == "gaussian") {
      corpus.push_back(TestFunction::gaussian());
    } else if (n == "magic") {
      corpus.push_back(EntanglingProfile::magic(lambda, s, picture).smooth_part());
    } else {
      throw ConfigError("config field '" + cfg.field("functions") + "': unknown test function '" + n +
                        "' (expected exponential, gaussian or magic)");
    }
  }

  const ImageSumPolicy policy = num.policy();
  std::vector<SamplingReport> reports(corpus.size() * periods.size());
  parallel_for(reports.size(), num.threads, [&](std::size_t i) {
    reports[i] = verify_sampling_theorem(corpus[i / periods.size()], periods[i % periods.size()], n_max, quad_tol, policy);
  });

  RunResult res;
  Dataset d{"images-check", {"function", "period", "images", "n", "k_n", "f_c_n", "f_kn", "abs_dev"}, {}, {}};
  double worst = 0.0;
  json per = json::array();
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      d.add({r.function_id, r.period, static_cast<long long>(r.images), static_cast<long long>(row.n),
             2.0 * std::numbers::pi * row.n / r.period, row.f_c_n, row.f_kn, row.abs_dev});
    }
    worst = std::max(worst, r.max_abs_dev);
    per.push_back({{"function", r.function_id}, {"period", r.period}, {"images", r.images}, {"max_abs_dev", r.max_abs_dev}});
  }
  PlotSpec plot{"", "sampling identity |f_c(n) - f(k_n)|", "k_n", "abs deviation", false, true, {}};
  const int fc = d.column("function"), pc = d.column("period");
  for (const auto& f : corpus) {
    for (double l : periods) {
      plot.series.push_back({f.id + " l=" + num_literal(l), str_filter(fc, f.id) + " && " + eq_filter(pc, l),
                             d.column("k_n"), d.column("abs_dev")});
    }
  }
  d.plots.push_back(std::move(plot));
  res.datasets.push_back(std::move(d));
  res.check("sampling identity max |f_c(n) - f(k_n)|", worst, 1e-8);

  if (std::find(names.begin(), names.end(), "exponential") != names.end()) {
    ImageSumPolicy tight = policy;
    tight.tolerance = ref_tol;
    Dataset w{"images-check-wrap", {"function", "period", "images", "x", "image_sum", "closed_form", "abs_dev"}, {}, {}};
    double worst_wrap = 0.0;
    for (double l : periods) {
      const PeriodicFunction pf = wrap(TestFunction::exponential(), l, tight);
      for (double x : linspace(0.0, l, wrap_points)) {
        const double a = pf(x);
        const double c = wrapped_exponential_sum(reduce_periodic(x, l), l);
        worst_wrap = std::max(worst_wrap, std::abs(a - c));
        w.add({"exponential", l, static_cast<long long>(pf.images()), x, a, c, std::abs(a - c)});
      }
    }
    PlotSpec wp{"", "wrapped e^{-|x|}: image sum", "x", "f_c(x)", false, false, {}};
    for (double l : periods) {
      wp.series.push_back({"l=" + num_literal(l), eq_filter(w.column("period"), l), w.column("x"), w.column("image_sum")});
    }
    w.plots.push_back(std::move(wp));
    res.datasets.push_back(std::move(w));
    res.check("exponential image sum vs closed form (abs)", worst_wrap, 1e-13);
  }

  res.summary["reports"] = per;
  res.summary["quad_tol"] = quad_tol;
  res.summary["magic"] = {{"lambda", lambda}, {"s", s}, {"picture", picture_name(picture)}};
  return res;
}

// ---------------------------------------------------------------- error-scan

namespace {

struct ScanSpec {
  std::string name;
  ErrorScanConfig cfg;
  double expected_slope = -2.0;
  double slope_tolerance = 0.2;
};

json default_scans() {
  return json::array({json{{"name", "line"}, {"geometry", {{"kind", "line"}}}, {"m", 0.1}, {"x", {30.0}}},
                      json{{"name", "circle"}, {"geometry", {{"kind", "circle"}, {"lc", 1.0}}}, {"m", 1.0}, {"x", {0.5}}}});
}

}  // namespace

RunResult cmd_error_scan(ConfigReader& cfg, const NumericOptions& num) {
  const auto s_values = non_negative_list(cfg, "s", {2.0, 2.5, 3.0, 3.5});
  const double noise_floor = cfg.non_negative("noise_floor", 1e-11);

  std::vector<ScanSpec> specs;
  for (auto& sr : cfg.objects("scans", default_scans())) {
    ScanSpec sp;
    sp.name = sr.string("name", "scan" + std::to_string(specs.size() + 1));
    sp.cfg.geometry = sr.geometry("geometry", Geometry::line());
    if (!sp.cfg.geometry.is_line() && !sp.cfg.geometry.is_circle()) {
      throw ConfigError("config field '" + sr.field("geometry") + "': error scans support line and circle");
    }
    try {
      sp.cfg.channel = parse_channel(sr.string("channel", "phiphi"));
    } catch (const ConfigError& e) {
      throw ConfigError("config field '" + sr.field("channel") + "': " + e.what());
    }
    sp.cfg.m = sr.positive("m", 1.0);
    sp.cfg.lambda = sr.positive("lambda", sp.cfg.m);
    sp.cfg.x_values = require_list(sr, "x", {1.0});
    for (double x : sp.cfg.x_values) {
      if (!(x > 0.0)) throw ConfigError("config field '" + sr.field("x") + "': values must be > 0");
    }
    sp.expected_slope = sr.number("expected_slope", -2.0);
    sp.slope_tolerance = sr.positive("slope_tolerance", 0.2);
    sr.finish();
    sp.cfg.s_values = s_values;
    sp.cfg.noise_floor = noise_floor;
    sp.cfg.table = num.table(CircleRoute::ModeSum);
    specs.push_back(std::move(sp));
  }
  if (specs.empty()) throw ConfigError("config field '" + cfg.field("scans") + "': must not be empty");

  ConfigReader tr = cfg.object("transfer");
  const bool transfer = tr.boolean("enabled", true);
  Channel t_channel = Channel::PhiPhi;
  try {
    t_channel = parse_channel(tr.string("channel", "phiphi"));
  } catch (const ConfigError& e) {
    throw ConfigError("config field '" + tr.field("channel") + "': " + e.what());
  }
  const double t_m = tr.positive("m", 1.0);
  const double t_lambda = tr.positive("lambda", t_m);
  const double t_s = tr.non_negative("s", 4.0);
  const double t_lc = tr.positive("lc", 1.0);
  const int t_points = tr.integer("points", 21, 2);
  TransferConfig tcfg;
  tcfg.slack = tr.non_negative("slack", tcfg.slack);
  tcfg.images = num.images();
  tcfg.line = num.line();
  tr.finish();
  cfg.finish();

  RunResult res;
  Dataset d{"error-scan",
            {"scan", "geometry", "lc", "channel", "m", "lambda", "s", "x", "cmera", "qft", "E", "excluded", "reason"},
            {},
            {}};
  json fits = json::array();
  for (const auto& sp : specs) {
    const ErrorScan scan = run_error_scan(sp.cfg);
    for (const auto& p : scan.points) {
      d.add({sp.name, scan.geometry.kind_name(), lc_cell(scan.geometry), channel_name(scan.channel), scan.m,
             scan.lambda, p.s, p.x, p.cmera, p.qft, p.error, static_cast<long long>(p.excluded ? 1 : 0), p.reason});
    }
    for (double x : sp.cfg.x_values) {
      const SlopeFit fit = error_slope_fit(scan, x);
      fits.push_back({{"scan", sp.name}, {"x", x}, {"slope", fit.slope}, {"intercept", fit.intercept},
                      {"residual", fit.residual}, {"half_width", fit.half_width}, {"points_used", fit.points_used},
                      {"expected_slope", sp.expected_slope}});
      res.check("slope " + sp.name + " x=" + num_literal(x) + ": |slope - (" + num_literal(sp.expected_slope) + ")|",
                std::abs(fit.slope - sp.expected_slope), sp.slope_tolerance);
    }
  }
  PlotSpec plot{"", "relative error vs s", "s", "E", false, true, {}};
  for (const auto& sp : specs) {
    for (double x : sp.cfg.x_values) {
      plot.series.push_back({sp.name + " x=" + num_literal(x),
                             str_filter(d.column("scan"), sp.name) + " && " + eq_filter(d.column("x"), x),
                             d.column("s"), d.column("E")});
    }
  }
  d.plots.push_back(std::move(plot));
  res.datasets.push_back(std::move(d));

  // Exact exponential data: the fit must return the generating slope.
  {
    const std::vector<double> ss = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
    std::vector<double> es;
    for (double s : ss) es.push_back(0.7 * std::exp(-2.0 * s));
    const SlopeFit fit = fit_log_slope(ss, es);
    res.summary["self_test"] = {{"slope", fit.slope}, {"expected", -2.0}};
    res.check("synthetic slope self-test |slope + 2|", std::abs(fit.slope + 2.0), 1e-12);
  }

  res.summary["fits"] = fits;
  if (transfer) {
    const double x_uv = std::exp(-t_s) / t_m;
    const auto grid = linspace(x_uv, 0.5 * t_lc, t_points);
    const TransferReport tr_rep = check_error_transfer(t_channel, t_m, t_lambda, t_s, t_lc, x_uv, grid, tcfg);
    Dataset t{"error-scan-transfer", {"x", "circle_error", "image_bound", "images", "holds"}, {}, {}};
    double excess = -std::numeric_limits<double>::infinity();
    for (const auto& row : tr_rep.rows) {
      t.add({row.x, row.circle_error, row.image_bound, static_cast<long long>(row.images),
             static_cast<long long>(row.holds ? 1 : 0)});
      excess = std::max(excess, row.circle_error - row.image_bound);
    }
    PlotSpec tp{"", "circle error vs line image bound", "x", "E", false, true, {}};
    tp.series.push_back({"E_c(x)", "", t.column("x"), t.column("circle_error")});
    tp.series.push_back({"max_n E(x + n lc)", "", t.column("x"), t.column("image_bound")});
    t.plots.push_back(std::move(tp));
    res.datasets.push_back(std::move(t));
    res.summary["transfer"] = {{"channel", channel_name(t_channel)}, {"m", t_m},        {"lambda", t_lambda},
                               {"s", t_s},                          {"lc", t_lc},       {"x_uv", x_uv},
                               {"line_epsilon", tr_rep.line_epsilon}, {"max_circle_error", tr_rep.max_circle_error},
                               {"holds", tr_rep.holds}};
    res.check("error transfer: max_x (E_c - image bound)", excess, tcfg.slack);
  }
  return res;
}

}  // namespace cmera::cli
