/*
 *    Copyright 2026 The cmpdse Contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cmpdse/commands.hpp"

namespace
{
void add_common(CLI::App* sub, cmpdse::cli::CommonArgs& args)
{
  sub->add_option("--config", args.config_path, "scenario file (section.key = value lines)");
  sub->add_option("--set", args.overrides, "override one key, e.g. --set budget.a_total=256")
      ->allow_extra_args(false);
  sub->add_option("--out", args.out_path, "output file path");
  sub->add_option("--seed", args.seed, "trace generator seed (overrides sharing.seed)");
}
} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"area-constrained multicore cache design exploration"};
  app.require_subcommand(1);

  cmpdse::cli::CommonArgs args;
  std::string sweep_mode = "budget";
  std::string constraint = "both";
  std::string trace_path;
  std::string samples_path;
  std::optional<double> fit_gamma;

  CLI::App* eval = app.add_subcommand("eval", "evaluate one design point");
  add_common(eval, args);
  eval->add_flag("--json", args.json, "emit JSON instead of key = value lines");

  CLI::App* sweep = app.add_subcommand("sweep", "optimize across budgets or plot IPC vs a_l1");
  add_common(sweep, args);
  sweep->add_option("--mode", sweep_mode, "budget | l1")->default_str("budget");
  sweep->add_option("--constraint", constraint, "power | bw | both")->default_str("both");

  CLI::App* optimize = app.add_subcommand("optimize", "best design with and without sharing");
  add_common(optimize, args);
  optimize->add_option("--constraint", constraint, "power | bw | both")->default_str("both");

  CLI::App* gen_trace = app.add_subcommand("gen-trace", "write a synthetic sharing trace");
  add_common(gen_trace, args);

  CLI::App* simulate = app.add_subcommand("simulate", "replay a trace through the cache hierarchy");
  simulate->add_option("trace", trace_path, "trace file")->required();
  add_common(simulate, args);

  CLI::App* miss_curve = app.add_subcommand("miss-curve", "aggregate L1 miss rate vs capacity");
  add_common(miss_curve, args);

  CLI::App* fit = app.add_subcommand("fit", "calibrate miss-rate models against samples");
  fit->add_option("samples", samples_path, "CSV of a_l1,miss_rate")->required();
  add_common(fit, args);
  fit->add_option("--gamma", fit_gamma, "pin the exponent instead of searching [0.3, 0.7]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (eval->parsed())
      return cmpdse::cli::cmd_eval(args, std::cout);
    if (sweep->parsed())
      return cmpdse::cli::cmd_sweep(args, sweep_mode, constraint, std::cout);
    if (optimize->parsed())
      return cmpdse::cli::cmd_optimize(args, constraint, std::cout);
    if (gen_trace->parsed())
      return cmpdse::cli::cmd_gen_trace(args, std::cout);
    if (simulate->parsed())
      return cmpdse::cli::cmd_simulate(args, trace_path, std::cout);
    if (miss_curve->parsed())
      return cmpdse::cli::cmd_miss_curve(args, std::cout);
    if (fit->parsed())
      return cmpdse::cli::cmd_fit(args, samples_path, fit_gamma, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
