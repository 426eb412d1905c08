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

// cmera <subcommand> --config path.json [--out dir] [--format csv|json] [--tolerance t]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical
// non-convergence (or a failed cross-check), 4 theorem-precondition
// violation.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cmera/error.hpp"
#include "commands.hpp"
#include "output.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitPrecondition = 4;

cmera::cli::json load_config(const std::string& path) {
  if (path.empty()) return cmera::cli::json::object();
  std::ifstream f(path);
  if (!f) throw cmera::ConfigError("cannot open config file '" + path + "'");
  try {
    return cmera::cli::json::parse(f);
  } catch (const cmera::cli::json::parse_error& e) {
    // nlohmann reports "line L, column C" in what().
    throw cmera::ConfigError("config file '" + path + "': " + e.what());
  }
}

int run(const std::string& sub, const std::string& config_path, const std::string& out, const std::string& format,
        std::optional<double> tolerance) {
  using namespace cmera::cli;
  RunContext ctx;
  ctx.subcommand = sub;
  ctx.out_dir = out;
  ctx.format = format == "json" ? Format::Json : Format::Csv;
  ctx.tolerance = tolerance;
  ctx.config = load_config(config_path);

  const RunResult result = run_subcommand(sub, ctx.config, tolerance);
  const auto files = write_outputs(ctx, result);

  for (const auto& c : result.checks) {
    std::printf("%-5s %s: %.3g (limit %.3g)%s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.value, c.limit,
                c.enforced ? "" : " [diagnostic]");
  }
  for (const auto& p : files) std::printf("wrote %s\n", p.string().c_str());
  if (!result.all_enforced_passed()) {
    std::fprintf(stderr, "cmera %s: cross-check failed\n", sub.c_str());
    return kExitConvergence;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian cMERA for the free boson: profiles, beta, correlators, image sums and error scans"};
  app.set_version_flag("--version", std::string("cmera ") + CMERA_VERSION);
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out = "cmera-out";
  std::string format = "csv";
  std::optional<double> tolerance;

  for (const auto& name : cmera::cli::subcommand_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " dataset");
    sub->add_option("--config", config_path, "JSON config (defaults apply when omitted)")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--tolerance", tolerance, "uniform numerical tolerance")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    return run(sub, config_path, out, format, tolerance);
  } catch (const cmera::ConfigError& e) {
    std::fprintf(stderr, "cmera %s: configuration error: %s\n", sub.c_str(), e.what());
    return kExitConfig;
  } catch (const cmera::DomainError& e) {
    std::fprintf(stderr, "cmera %s: invalid parameter: %s\n", sub.c_str(), e.what());
    return kExitConfig;
  } catch (const cmera::PreconditionViolation& e) {
    std::fprintf(stderr, "cmera %s: precondition violated: %s\n", sub.c_str(), e.what());
    return kExitPrecondition;
  } catch (const cmera::ConvergenceError& e) {
    std::fprintf(stderr, "cmera %s: no convergence: %s\n", sub.c_str(), e.what());
    return kExitConvergence;
  } catch (const cmera::Error& e) {
    std::fprintf(stderr, "cmera %s: %s\n", sub.c_str(), e.what());
    return kExitConvergence;
  }
}
