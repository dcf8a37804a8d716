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

#include "cmpdse/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "cmpdse/config.hpp"
#include "cmpdse/fit.hpp"
#include "cmpdse/trace_io.hpp"

namespace cmpdse::cli
{
namespace
{
std::string fmt6(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt17(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

ScenarioConfig resolve_config(const CommonArgs& args)
{
  ScenarioConfig cfg = load_config(args.config_path);
  for (const auto& assignment : args.overrides)
    apply_setting(cfg, assignment);
  if (args.seed)
    cfg.sharing.seed = *args.seed;
  return cfg;
}

// mu_n_sigma re-derives mu_n from one point's core count; grids span
// many core counts, so only eval accepts it.
void reject_sigma(const ScenarioConfig& cfg, const char* command)
{
  if (cfg.mu_n_sigma)
    throw std::invalid_argument(std::string("workload.mu_n_sigma applies only to eval, not ")
                                + command);
}

dse::ConstraintMode parse_constraint(const std::string& name)
{
  if (name == "power")
    return dse::ConstraintMode::Power;
  if (name == "bw")
    return dse::ConstraintMode::Bandwidth;
  if (name == "both")
    return dse::ConstraintMode::Both;
  throw std::invalid_argument("constraint must be power, bw, or both");
}

std::ofstream open_output(const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

std::string output_path(const CommonArgs& args, const ScenarioConfig& cfg,
                        const std::string& fallback)
{
  if (!args.out_path.empty())
    return args.out_path;
  if (!cfg.out_path.empty())
    return cfg.out_path;
  return fallback;
}

void print_point(std::ostream& out, const std::string& prefix, const dse::EvaluatedPoint& p)
{
  out << prefix << ".n = " << p.cfg.n << '\n';
  out << prefix << ".a_l1 = " << fmt6(p.cfg.a_l1) << '\n';
  out << prefix << ".a_cpu = " << fmt6(p.cfg.a_cpu) << '\n';
  out << prefix << ".a_l2 = " << fmt6(p.cfg.a_l2) << '\n';
  out << prefix << ".ipc = " << fmt6(p.eval.ipc) << '\n';
  out << prefix << ".power = " << fmt6(p.eval.power) << '\n';
  out << prefix << ".m_d = " << fmt6(p.eval.m_d) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<dse::SweepPoint>& rows,
                     bool envelope_column)
{
  out << "x,ipc,n,a_l1,a_cpu,a_l2,power,m_d,feasible";
  if (envelope_column)
    out << ",envelope";
  out << '\n';
  for (const auto& r : rows) {
    if (r.feasible) {
      out << fmt17(r.x) << ',' << fmt17(r.eval.ipc) << ',' << r.cfg.n << ','
          << fmt17(r.cfg.a_l1) << ',' << fmt17(r.cfg.a_cpu) << ',' << fmt17(r.cfg.a_l2) << ','
          << fmt17(r.eval.power) << ',' << fmt17(r.eval.m_d) << ",1";
    } else {
      out << fmt17(r.x) << ",0,0,0,0,0,0,0,0";
    }
    if (envelope_column)
      out << ',' << (r.envelope ? 1 : 0);
    out << '\n';
  }
}

void print_fit(std::ostream& out, const std::string& prefix, const fit::FitResult& r)
{
  out << prefix << ".mu_n = " << fmt6(r.mu_n_hat) << '\n';
  out << prefix << ".c = " << fmt6(r.c_hat) << '\n';
  out << prefix << ".gamma = " << fmt6(r.gamma_hat) << '\n';
  out << prefix << ".sse = " << fmt6(r.sse) << '\n';
}
} // namespace

int cmd_eval(const CommonArgs& args, std::ostream& out)
{
  ScenarioConfig cfg = resolve_config(args);
  model::WorkloadParams w = cfg.workload;
  if (cfg.mu_n_sigma)
    w.mu_n = model::mu_n_from_asymptote(*cfg.mu_n_sigma, cfg.point.n);

  model::EvalResult r = model::evaluate(cfg.point, w, cfg.tech, cfg.budget);

  if (args.json) {
    nlohmann::ordered_json j;
    j["n"] = cfg.point.n;
    j["a_l1"] = cfg.point.a_l1;
    j["a_cpu"] = cfg.point.a_cpu;
    j["a_l2"] = cfg.point.a_l2;
    j["m1"] = r.m1;
    j["m2"] = r.m2;
    j["d_l1"] = r.d_l1;
    j["d_l2"] = r.d_l2;
    j["cpi_m"] = r.cpi_m;
    j["cpi_c"] = r.cpi_c;
    j["cpi_1"] = r.cpi_1;
    j["ipc"] = r.ipc;
    j["power"] = r.power;
    j["m_d"] = r.m_d;
    j["feasible_area"] = r.feasible_area;
    j["feasible_power"] = r.feasible_power;
    j["feasible_bw"] = r.feasible_bw;
    j["clamped"] = r.clamped;
    out << j.dump(2) << '\n';
    return 0;
  }

  out << "m1 = " << fmt6(r.m1) << '\n';
  out << "m2 = " << fmt6(r.m2) << '\n';
  out << "d_l1 = " << fmt6(r.d_l1) << '\n';
  out << "d_l2 = " << fmt6(r.d_l2) << '\n';
  out << "cpi_m = " << fmt6(r.cpi_m) << '\n';
  out << "cpi_c = " << fmt6(r.cpi_c) << '\n';
  out << "cpi_1 = " << fmt6(r.cpi_1) << '\n';
  out << "ipc = " << fmt6(r.ipc) << '\n';
  out << "power = " << fmt6(r.power) << '\n';
  out << "m_d = " << fmt6(r.m_d) << '\n';
  out << "feasible_area = " << yesno(r.feasible_area) << '\n';
  out << "feasible_power = " << yesno(r.feasible_power) << '\n';
  out << "feasible_bw = " << yesno(r.feasible_bw) << '\n';
  out << "clamped = " << yesno(r.clamped) << '\n';
  return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& mode,
              const std::string& constraint, std::ostream& out)
{
  ScenarioConfig cfg = resolve_config(args);
  reject_sigma(cfg, "sweep");
  dse::ConstraintMode cm = parse_constraint(constraint);

  std::vector<dse::SweepPoint> rows;
  bool envelope_column = false;
  if (mode == "budget") {
    rows = dse::sweep_area_budget(cfg.sweep_budgets, cfg.grid, cfg.workload, cfg.tech,
                                  cfg.budget, cm);
  } else if (mode == "l1") {
    dse::L1Sweep sweep = dse::sweep_l1_area(cfg.grid, cfg.workload, cfg.tech, cfg.budget, cm);
    rows = std::move(sweep.scatter);
    // Enumeration is (n, a_l1, a_cpu)-ordered; a stable sort on x keeps
    // the lexicographic order inside each x group.
    std::stable_sort(rows.begin(), rows.end(),
                     [](const dse::SweepPoint& a, const dse::SweepPoint& b) { return a.x < b.x; });
    envelope_column = true;
  } else {
    throw std::invalid_argument("sweep mode must be budget or l1");
  }

  const std::string path = output_path(args, cfg, "sweep.csv");
  std::ofstream file = open_output(path);
  write_sweep_csv(file, rows, envelope_column);
  if (!file)
    throw std::runtime_error("failed writing " + path);

  bool any_feasible = std::any_of(rows.begin(), rows.end(),
                                  [](const dse::SweepPoint& r) { return r.feasible; });
  out << "rows = " << rows.size() << '\n';
  out << "out = " << path << '\n';
  return any_feasible ? 0 : 2;
}

int cmd_optimize(const CommonArgs& args, const std::string& constraint, std::ostream& out)
{
  ScenarioConfig cfg = resolve_config(args);
  reject_sigma(cfg, "optimize");
  if (cfg.workload.mu_n <= 0.0)
    throw std::invalid_argument("optimize compares against mu_n = 0; set workload.mu_n > 0");

  dse::ConstraintMode cm = parse_constraint(constraint);
  dse::SharingShift shift =
      dse::compare_sharing(cfg.grid, cfg.workload, cfg.tech, cfg.budget, cm);

  out << "constraint = " << constraint << '\n';
  if (!shift.feasible) {
    out << "feasible = false\n";
    return 2;
  }
  out << "feasible = true\n";
  print_point(out, "sharing", shift.opt_sharing);
  print_point(out, "nosharing", shift.opt_nosharing);
  out << "a_l1_sharing = " << fmt6(shift.a_l1_sharing) << '\n';
  out << "a_l1_nosharing = " << fmt6(shift.a_l1_nosharing) << '\n';
  out << "relative_shift = " << fmt6(shift.relative_shift) << '\n';
  return 0;
}

int cmd_gen_trace(const CommonArgs& args, std::ostream& out)
{
  ScenarioConfig cfg = resolve_config(args);
  sim::Trace trace = sim::generate_trace(cfg.sharing);
  const std::string path = output_path(args, cfg, "trace.txt");
  sim::write_trace_file(trace, path);
  out << "records = " << trace.records.size() << '\n';
  out << "cores = " << trace.num_cores << '\n';
  out << "out = " << path << '\n';
  return 0;
}

int cmd_simulate(const CommonArgs& args, const std::string& trace_path, std::ostream& out)
{
  ScenarioConfig cfg = resolve_config(args);
  sim::Trace trace = sim::read_trace_file(trace_path);
  sim::SimStats stats = sim::simulate(trace, cfg.l1, cfg.l2, trace.num_cores);

  const std::string path = output_path(args, cfg, "");
  if (path.empty()) {
    sim::write_stats_csv(stats, out);
  } else {
    std::ofstream file = open_output(path);
    sim::write_stats_csv(stats, file);
    if (!file)
      throw std::runtime_error("failed writing " + path);
    out << "out = " << path << '\n';
  }
  return 0;
}

int cmd_miss_curve(const CommonArgs& args, std::ostream& out)
{
  ScenarioConfig cfg = resolve_config(args);
  auto curve = sim::miss_curve(cfg.sharing, cfg.l1_sweep_bytes, cfg.l2, cfg.l1.line_bytes,
                               cfg.l1.associativity);

  const std::string path = output_path(args, cfg, "miss_curve.csv");
  std::ofstream file = open_output(path);
  file << "l1_bytes,mr_multicore,mr_singlecore\n";
  for (const auto& p : curve)
    file << p.l1_bytes << ',' << fmt17(p.mr_multicore) << ',' << fmt17(p.mr_singlecore)
         << '\n';
  if (!file)
    throw std::runtime_error("failed writing " + path);

  out << "points = " << curve.size() << '\n';
  out << "out = " << path << '\n';
  return 0;
}

int cmd_fit(const CommonArgs& args, const std::string& samples_path,
            std::optional<double> gamma, std::ostream& out)
{
  ScenarioConfig cfg = resolve_config(args);
  auto samples = fit::read_samples_csv_file(samples_path);
  fit::ModelComparison cmp = fit::compare_models(samples, gamma);

  out << "samples = " << samples.size() << '\n';
  print_fit(out, "model1", cmp.model1);
  print_fit(out, "model2", cmp.model2);
  out << "sse_ratio = " << fmt6(cmp.sse_ratio) << '\n';
  out << "preferred = model" << cmp.preferred << '\n';

  const fit::FitResult& chosen = cmp.preferred == 2 ? cmp.model2 : cmp.model1;
  if (chosen.mu_n_hat < 1.0)
    out << "derived_mu = " << fmt6(fit::derived_mu(chosen, cfg.workload.alpha)) << '\n';

  const std::string path = output_path(args, cfg, "");
  if (!path.empty()) {
    std::ofstream file = open_output(path);
    fit::write_residuals_csv(samples, chosen, file);
    if (!file)
      throw std::runtime_error("failed writing " + path);
    out << "out = " << path << '\n';
  }
  return 0;
}

} // namespace cmpdse::cli
