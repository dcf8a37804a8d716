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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmpdse/cachesim.hpp"
#include "cmpdse/trace_io.hpp"
#include "cmpdse/tracegen.hpp"

using namespace cmpdse;
using doctest::Approx;

namespace {

struct RunResult {
  int status = -1;
  std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args)
{
  const std::string cmd = std::string(CMPDSE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int rc = pclose(pipe);
  REQUIRE(WIFEXITED(rc));
  r.status = WEXITSTATUS(rc);
  return r;
}

const std::string& tmp_dir()
{
  static const std::string dir = [] {
    std::string tmpl = "/tmp/cmpdse_cli_XXXXXX";
    char* d = mkdtemp(tmpl.data());
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string tmp_path(const std::string& name) { return tmp_dir() + "/" + name; }

void write_file(const std::string& path, const std::string& content)
{
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
  REQUIRE(out.good());
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_line(const std::string& text, const std::string& line)
{
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l))
    if (l == line) return true;
  return false;
}

std::string value_of(const std::string& text, const std::string& key)
{
  std::istringstream in(text);
  std::string l;
  const std::string prefix = key + " = ";
  while (std::getline(in, l))
    if (l.rfind(prefix, 0) == 0) return l.substr(prefix.size());
  return {};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

const std::string SMALL_TRACE_ARGS =
    "--set sharing.n=2 --set sharing.private_refs_per_core=2000 "
    "--set sharing.private_working_set=256 --set sharing.shared_block_count=16 "
    "--set sharing.epoch_length=32";

sim::SharingSpec small_trace_spec(std::uint64_t seed)
{
  sim::SharingSpec s;
  s.n = 2;
  s.private_refs_per_core = 2000;
  s.private_working_set = 256;
  s.shared_block_count = 16;
  s.epoch_length = 32;
  s.seed = seed;
  return s;
}

} // namespace

TEST_CASE("eval prints the pinned reference evaluation of the default point")
{
  const auto r = run_cli("eval");
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "m1 = 0.0975"));
  CHECK(has_line(r.output, "m2 = 0.04875"));
  CHECK(has_line(r.output, "d_l1 = 1.7411"));
  CHECK(has_line(r.output, "d_l2 = 15.278"));
  CHECK(has_line(r.output, "cpi_m = 3.93896"));
  CHECK(has_line(r.output, "cpi_c = 0.25"));
  CHECK(has_line(r.output, "cpi_1 = 0.987792"));
  CHECK(has_line(r.output, "ipc = 4.04944"));
  CHECK(has_line(r.output, "power = 22.4"));
  CHECK(has_line(r.output, "m_d = 0.00475313"));
  CHECK(has_line(r.output, "feasible_area = true"));
  CHECK(has_line(r.output, "feasible_power = true"));
  CHECK(has_line(r.output, "feasible_bw = false"));
  CHECK(has_line(r.output, "clamped = false"));
}

TEST_CASE("eval --json carries full-precision values")
{
  const auto r = run_cli("eval --json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["n"].get<int>() == 4);
  CHECK(j["a_l1"].get<double>() == 4.0);
  CHECK(j["a_l2"].get<double>() == 64.0);
  CHECK(j["m1"].get<double>() == 0.0975);
  CHECK(j["ipc"].get<double>() == 4.049436773136868);
  CHECK(j["power"].get<double>() == 22.4);
  CHECK(j["m_d"].get<double>() == 0.004753125);
  CHECK(j["feasible_area"].get<bool>());
  CHECK_FALSE(j["feasible_bw"].get<bool>());
  CHECK_FALSE(j["clamped"].get<bool>());
}

TEST_CASE("a memory-free workload collapses eval onto the compute side")
{
  const auto r = run_cli("eval --set workload.g=0");
  REQUIRE(r.status == 0);
  CHECK(value_of(r.output, "cpi_1") == value_of(r.output, "cpi_c"));
  CHECK(has_line(r.output, "ipc = 16"));
}

TEST_CASE("a config file and equivalent flags produce identical output")
{
  const std::string cfg = tmp_path("scenario.cfg");
  write_file(cfg, "# demo scenario\n"
                  "workload.g = 0.3\n"
                  "\n"
                  "tech.d_dram = 150   # trailing comment\n"
                  "point.a_l1 = 8\n"
                  "budget.a_total = 200\n");
  const auto from_file = run_cli("eval --config " + cfg);
  const auto from_flags = run_cli("eval --set workload.g=0.3 --set tech.d_dram=150 "
                                  "--set point.a_l1=8 --set budget.a_total=200");
  REQUIRE(from_file.status == 0);
  CHECK(from_file.output == from_flags.output);
}

TEST_CASE("input errors exit with status 3 and a pointed message")
{
  auto r = run_cli("eval --config " + tmp_path("no_such.cfg"));
  CHECK(r.status == 3);
  CHECK(r.output.find("no_such.cfg") != std::string::npos);

  r = run_cli("eval --set bogus.key=1");
  CHECK(r.status == 3);
  CHECK(r.output.find("unknown config key") != std::string::npos);

  r = run_cli("eval --set workload.g=oops");
  CHECK(r.status == 3);

  r = run_cli("eval --set workload.g");
  CHECK(r.status == 3);

  r = run_cli("eval --no-such-flag");
  CHECK(r.status == 3);

  r = run_cli("");
  CHECK(r.status == 3);

  r = run_cli("sweep --mode sideways");
  CHECK(r.status == 3);

  r = run_cli("optimize --constraint thermal");
  CHECK(r.status == 3);

  const std::string bad = tmp_path("bad_config.cfg");
  write_file(bad, "workload.g = 0.2\nnot a setting\n");
  r = run_cli("eval --config " + bad);
  CHECK(r.status == 3);
  CHECK(r.output.find(":2") != std::string::npos);
}

TEST_CASE("--help succeeds and names the subcommands")
{
  const auto r = run_cli("--help");
  CHECK(r.status == 0);
  for (const char* sub : {"eval", "sweep", "optimize", "gen-trace", "simulate",
                          "miss-curve", "fit"})
    CHECK(r.output.find(sub) != std::string::npos);
}

TEST_CASE("the sharing asymptote override applies to eval only")
{
  auto r = run_cli("eval --set workload.mu_n_sigma=0.08");
  REQUIRE(r.status == 0);
  // mu_n becomes 0.08 * (1 - 1/4) = 0.06.
  CHECK(has_line(r.output, "m1 = 0.107"));

  r = run_cli("sweep --mode budget --set workload.mu_n_sigma=0.08 --out "
              + tmp_path("sigma_sweep.csv"));
  CHECK(r.status == 3);
  CHECK(r.output.find("mu_n_sigma") != std::string::npos);

  r = run_cli("optimize --set workload.mu_n_sigma=0.08");
  CHECK(r.status == 3);
}

TEST_CASE("optimize reports the sharing-induced shift under each constraint")
{
  auto r = run_cli("optimize");
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "constraint = both"));
  CHECK(has_line(r.output, "feasible = true"));
  CHECK(has_line(r.output, "a_l1_sharing = 2"));
  CHECK(has_line(r.output, "a_l1_nosharing = 2"));
  CHECK(has_line(r.output, "relative_shift = 0"));
  CHECK(value_of(r.output, "sharing.n") != "");
  CHECK(value_of(r.output, "nosharing.ipc") != "");

  r = run_cli("optimize --constraint bw");
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "a_l1_sharing = 2"));
  CHECK(has_line(r.output, "a_l1_nosharing = 4"));
  CHECK(has_line(r.output, "relative_shift = 0.5"));

  r = run_cli("optimize --constraint power");
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "a_l1_sharing = 2"));
  CHECK(has_line(r.output, "a_l1_nosharing = 2"));
  CHECK(has_line(r.output, "relative_shift = 0"));
}

TEST_CASE("optimize distinguishes infeasible scenarios from input errors")
{
  auto r = run_cli("optimize --constraint power --set budget.p_max=0.001");
  CHECK(r.status == 2);
  CHECK(has_line(r.output, "feasible = false"));

  r = run_cli("optimize --set workload.mu_n=0");
  CHECK(r.status == 3);
}

TEST_CASE("the budget sweep writes one row per budget")
{
  const std::string csv = tmp_path("budget_sweep.csv");
  const auto r = run_cli("sweep --mode budget --constraint power --out " + csv);
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "rows = 5"));
  CHECK(has_line(r.output, "out = " + csv));

  const auto rows = parse_csv(read_file(csv));
  REQUIRE(rows.size() == 6);
  const std::vector<std::string> header = {"x",    "ipc",   "n",   "a_l1", "a_cpu",
                                           "a_l2", "power", "m_d", "feasible"};
  CHECK(rows[0] == header);
  const std::vector<std::string> budgets = {"32", "64", "128", "256", "512"};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 9);
    CHECK(rows[i][0] == budgets[i - 1]);
    CHECK(rows[i][8] == "1");
  }

  // The throughput column peaks strictly inside the budget range.
  std::vector<double> ipc;
  for (std::size_t i = 1; i < rows.size(); ++i) ipc.push_back(std::stod(rows[i][1]));
  std::size_t best = 0;
  for (std::size_t i = 1; i < ipc.size(); ++i)
    if (ipc[i] > ipc[best]) best = i;
  CHECK(best > 0);
  CHECK(best + 1 < ipc.size());
  CHECK(ipc.back() < ipc[best]);

  const auto single = run_cli("sweep --mode budget --set sweep.budgets=144 --out "
                              + tmp_path("one_budget.csv"));
  REQUIRE(single.status == 0);
  CHECK(has_line(single.output, "rows = 1"));
}

TEST_CASE("the private-area sweep marks the envelope rows")
{
  const std::string csv = tmp_path("l1_sweep.csv");
  const auto r = run_cli("sweep --mode l1 --constraint power --out " + csv);
  REQUIRE(r.status == 0);

  const auto rows = parse_csv(read_file(csv));
  REQUIRE(rows.size() > 1);
  REQUIRE(rows[0].size() == 10);
  CHECK(rows[0][9] == "envelope");

  std::map<std::string, double> best_by_x;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 10);
    REQUIRE(rows[i][8] == "1"); // scatter holds only feasible points
    const double ipc = std::stod(rows[i][1]);
    auto [it, fresh] = best_by_x.emplace(rows[i][0], ipc);
    if (!fresh && ipc > it->second) it->second = ipc;
  }
  std::size_t envelope_rows = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][9] == "1") {
      ++envelope_rows;
      CHECK(std::stod(rows[i][1]) == best_by_x.at(rows[i][0]));
    }
  CHECK(envelope_rows == best_by_x.size());

  // x never decreases down the file.
  for (std::size_t i = 2; i < rows.size(); ++i)
    CHECK(std::stod(rows[i][0]) >= std::stod(rows[i - 1][0]));
}

TEST_CASE("a sweep with no feasible point exits 2 but still writes the grid")
{
  const std::string csv = tmp_path("infeasible_sweep.csv");
  const auto r = run_cli("sweep --mode budget --constraint power "
                         "--set budget.p_max=0.0001 --out " + csv);
  CHECK(r.status == 2);
  const auto rows = parse_csv(read_file(csv));
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] == "0");
    CHECK(rows[i][8] == "0");
  }
}

TEST_CASE("gen-trace, the text format, and simulate form a lossless pipeline")
{
  const std::string trace_path = tmp_path("pipeline.trace");
  const auto gen = run_cli("gen-trace --seed 7 " + SMALL_TRACE_ARGS + " --out " + trace_path);
  REQUIRE(gen.status == 0);

  const auto spec = small_trace_spec(7);
  const auto reference = sim::generate_trace(spec);
  CHECK(has_line(gen.output, "records = " + std::to_string(reference.records.size())));
  CHECK(has_line(gen.output, "cores = 2"));

  const std::string text = read_file(trace_path);
  CHECK(text.rfind("CMPTRACE 1 2\n", 0) == 0);

  // Regenerating with the same seed reproduces the file byte for byte.
  const std::string trace_path2 = tmp_path("pipeline2.trace");
  const auto gen2 = run_cli("gen-trace --seed 7 " + SMALL_TRACE_ARGS + " --out " + trace_path2);
  REQUIRE(gen2.status == 0);
  CHECK(read_file(trace_path2) == text);

  // Simulating through the CLI matches the in-process result exactly.
  const auto sim = run_cli("simulate " + trace_path);
  REQUIRE(sim.status == 0);
  const auto stats = sim::simulate(reference, {32768, 64, 8}, {2097152, 64, 16}, 2);
  std::ostringstream expected;
  sim::write_stats_csv(stats, expected);
  CHECK(sim.output == expected.str());
}

TEST_CASE("simulate reproduces hand-checked hit counts")
{
  const std::string path = tmp_path("alternating.trace");
  write_file(path, "CMPTRACE 1 1\n0 R 0\n0 R 40\n0 R 0\n0 R 40\n");

  const auto direct = run_cli("simulate " + path + " --set sim.l1_bytes=64 "
                              "--set sim.l1_assoc=1 --set sim.l2_bytes=128 "
                              "--set sim.l2_assoc=2");
  REQUIRE(direct.status == 0);
  CHECK(has_line(direct.output, "cache_id,accesses,hits,misses,miss_rate"));
  CHECK(has_line(direct.output, "l1_0,4,0,4,1"));
  CHECK(has_line(direct.output, "l1_total,4,0,4,1"));
  CHECK(has_line(direct.output, "l2,4,2,2,0.5"));

  const auto paired = run_cli("simulate " + path + " --set sim.l1_bytes=128 "
                              "--set sim.l1_assoc=2 --set sim.l2_bytes=1024 "
                              "--set sim.l2_assoc=2");
  REQUIRE(paired.status == 0);
  CHECK(has_line(paired.output, "l1_0,4,2,2,0.5"));
  CHECK(has_line(paired.output, "l2,2,0,2,1"));
}

TEST_CASE("simulate handles empty and malformed traces")
{
  const std::string empty = tmp_path("empty.trace");
  write_file(empty, "CMPTRACE 1 2\n");
  const auto ok = run_cli("simulate " + empty);
  REQUIRE(ok.status == 0);
  CHECK(has_line(ok.output, "l1_0,0,0,0,0"));
  CHECK(has_line(ok.output, "l1_1,0,0,0,0"));
  CHECK(has_line(ok.output, "l2,0,0,0,0"));

  const std::string bad = tmp_path("bad.trace");
  write_file(bad, "CMPTRACE 1 2\n0 q 40\n");
  const auto err = run_cli("simulate " + bad);
  CHECK(err.status == 3);
  CHECK(err.output.find("line 2") != std::string::npos);

  const auto missing = run_cli("simulate " + tmp_path("nowhere.trace"));
  CHECK(missing.status == 3);
  CHECK(missing.output.find("cannot open") != std::string::npos);
}

TEST_CASE("miss-curve writes coinciding columns when sharing is off")
{
  const std::string csv = tmp_path("curve.csv");
  const auto r = run_cli("miss-curve --seed 3 " + SMALL_TRACE_ARGS
                         + " --set sharing.sharing_fraction=0"
                         + " --set sim.l1_sweep_bytes=1024,2048,4096 --out " + csv);
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "points = 3"));

  const auto rows = parse_csv(read_file(csv));
  REQUIRE(rows.size() == 4);
  const std::vector<std::string> header = {"l1_bytes", "mr_multicore", "mr_singlecore"};
  CHECK(rows[0] == header);
  const std::vector<std::string> sizes = {"1024", "2048", "4096"};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 3);
    CHECK(rows[i][0] == sizes[i - 1]);
    CHECK(rows[i][1] == rows[i][2]); // textual equality: bitwise coincidence
  }
}

TEST_CASE("fit recovers exact synthetic parameters through the CLI")
{
  const std::string csv = tmp_path("samples.csv");
  write_file(csv, "a_l1,miss_rate\n1,0.28\n4,0.18\n16,0.13\n64,0.105\n");

  const std::string residuals = tmp_path("residuals.csv");
  const auto r = run_cli("fit " + csv + " --out " + residuals);
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "samples = 4"));
  CHECK(has_line(r.output, "model2.mu_n = 0.08"));
  CHECK(has_line(r.output, "model2.c = 0.2"));
  CHECK(has_line(r.output, "model2.gamma = 0.5"));
  CHECK(has_line(r.output, "preferred = model2"));
  CHECK(has_line(r.output, "derived_mu = 0.217391"));
  CHECK(value_of(r.output, "model1.c") != "");
  CHECK(value_of(r.output, "sse_ratio") != "");

  const auto res_rows = parse_csv(read_file(residuals));
  REQUIRE(res_rows.size() == 5);
  const std::vector<std::string> res_header = {"a_l1", "miss_rate", "fitted", "residual"};
  CHECK(res_rows[0] == res_header);

  const auto pinned = run_cli("fit " + csv + " --gamma 0.5");
  REQUIRE(pinned.status == 0);
  CHECK(has_line(pinned.output, "model2.mu_n = 0.08"));
  CHECK(has_line(pinned.output, "model2.c = 0.2"));

  const auto missing = run_cli("fit " + tmp_path("absent.csv"));
  CHECK(missing.status == 3);

  const std::string thin = tmp_path("thin.csv");
  write_file(thin, "1,0.2\n4,0.1\n");
  CHECK(run_cli("fit " + thin).status == 3);
}

TEST_CASE("--out overrides the config file's output path")
{
  const std::string cfg = tmp_path("outpath.cfg");
  const std::string a = tmp_path("config_choice.csv");
  const std::string b = tmp_path("flag_choice.csv");
  write_file(cfg, "output.path = " + a + "\n");

  const auto r = run_cli("sweep --mode budget --config " + cfg + " --out " + b);
  REQUIRE(r.status == 0);
  CHECK(has_line(r.output, "out = " + b));
  CHECK(read_file(b).size() > 0);

  const auto r2 = run_cli("sweep --mode budget --config " + cfg);
  REQUIRE(r2.status == 0);
  CHECK(has_line(r2.output, "out = " + a));
}

TEST_CASE("repeated invocations are byte-identical")
{
  const std::vector<std::string> commands = {
      "eval",
      "eval --json",
      "optimize --constraint bw",
      "sweep --mode budget --out " + tmp_path("det_budget.csv"),
      "sweep --mode l1 --out " + tmp_path("det_l1.csv"),
      "miss-curve --seed 5 " + SMALL_TRACE_ARGS
          + " --set sim.l1_sweep_bytes=1024,4096 --out " + tmp_path("det_curve.csv"),
  };
  for (const auto& cmd : commands) {
    const auto first = run_cli(cmd);
    REQUIRE(first.status == 0);
    std::string first_file;
    const std::string out_path = value_of(first.output, "out");
    if (!out_path.empty()) first_file = read_file(out_path);

    const auto second = run_cli(cmd);
    CHECK(second.status == first.status);
    CHECK(second.output == first.output);
    if (!out_path.empty()) CHECK(read_file(out_path) == first_file);
  }
}
