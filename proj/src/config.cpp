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

#include "cmpdse/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmpdse::cli
{
namespace
{
std::string trim(const std::string& s)
{
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos)
    return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v)
{
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument(key + ": '" + v + "' is not a number");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v)
{
  char* end = nullptr;
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
    throw std::invalid_argument(key + ": '" + v + "' is not an unsigned integer");
  return x;
}

int to_int(const std::string& key, const std::string& v)
{
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument(key + ": '" + v + "' is not an integer");
  return static_cast<int>(x);
}

std::vector<std::string> split_list(const std::string& v)
{
  std::vector<std::string> parts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    parts.push_back(trim(item));
  return parts;
}

std::vector<double> to_double_list(const std::string& key, const std::string& v)
{
  std::vector<double> out;
  for (const auto& p : split_list(v))
    out.push_back(to_double(key, p));
  return out;
}

std::vector<int> to_int_list(const std::string& key, const std::string& v)
{
  std::vector<int> out;
  for (const auto& p : split_list(v))
    out.push_back(to_int(key, p));
  return out;
}

std::vector<std::uint64_t> to_u64_list(const std::string& key, const std::string& v)
{
  std::vector<std::uint64_t> out;
  for (const auto& p : split_list(v))
    out.push_back(to_u64(key, p));
  return out;
}
} // namespace

void apply_setting(ScenarioConfig& cfg, const std::string& assignment)
{
  std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("expected 'key = value', got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty())
    throw std::invalid_argument("expected 'key = value', got '" + assignment + "'");

  if (key == "workload.g")
    cfg.workload.g = to_double(key, value);
  else if (key == "workload.mu")
    cfg.workload.mu = to_double(key, value);
  else if (key == "workload.alpha")
    cfg.workload.alpha = to_double(key, value);
  else if (key == "workload.mu_n")
    cfg.workload.mu_n = to_double(key, value);
  else if (key == "workload.mu_n_sigma")
    cfg.mu_n_sigma = to_double(key, value);
  else if (key == "workload.beta")
    cfg.workload.beta = to_double(key, value);
  else if (key == "workload.e_n")
    cfg.workload.e_n = to_double(key, value);
  else if (key == "workload.chi")
    cfg.workload.chi = to_double(key, value);
  else if (key == "workload.f")
    cfg.workload.f = to_double(key, value);
  else if (key == "tech.tau")
    cfg.tech.tau = to_double(key, value);
  else if (key == "tech.d_noc")
    cfg.tech.d_noc = to_double(key, value);
  else if (key == "tech.d_dram")
    cfg.tech.d_dram = to_double(key, value);
  else if (key == "tech.k_cache")
    cfg.tech.k_cache = to_double(key, value);
  else if (key == "tech.k_core")
    cfg.tech.k_core = to_double(key, value);
  else if (key == "budget.a_total")
    cfg.budget.a_total = to_double(key, value);
  else if (key == "budget.p_max")
    cfg.budget.p_max = to_double(key, value);
  else if (key == "budget.md_max")
    cfg.budget.md_max = to_double(key, value);
  else if (key == "point.n")
    cfg.point.n = to_int(key, value);
  else if (key == "point.a_l1")
    cfg.point.a_l1 = to_double(key, value);
  else if (key == "point.a_cpu")
    cfg.point.a_cpu = to_double(key, value);
  else if (key == "point.a_l2")
    cfg.point.a_l2 = to_double(key, value);
  else if (key == "grid.n")
    cfg.grid.n_values = to_int_list(key, value);
  else if (key == "grid.a_l1")
    cfg.grid.a_l1_values = to_double_list(key, value);
  else if (key == "grid.a_cpu")
    cfg.grid.a_cpu_values = to_double_list(key, value);
  else if (key == "grid.a_l2_min")
    cfg.grid.a_l2_min = to_double(key, value);
  else if (key == "sweep.budgets")
    cfg.sweep_budgets = to_double_list(key, value);
  else if (key == "sharing.n")
    cfg.sharing.n = static_cast<std::uint32_t>(to_u64(key, value));
  else if (key == "sharing.private_refs_per_core")
    cfg.sharing.private_refs_per_core = to_u64(key, value);
  else if (key == "sharing.sharing_fraction")
    cfg.sharing.sharing_fraction = to_double(key, value);
  else if (key == "sharing.private_working_set")
    cfg.sharing.private_working_set = to_u64(key, value);
  else if (key == "sharing.shared_block_count")
    cfg.sharing.shared_block_count = to_u64(key, value);
  else if (key == "sharing.epoch_length")
    cfg.sharing.epoch_length = to_u64(key, value);
  else if (key == "sharing.zipf_s")
    cfg.sharing.zipf_s = to_double(key, value);
  else if (key == "sharing.seed")
    cfg.sharing.seed = to_u64(key, value);
  else if (key == "sim.l1_bytes")
    cfg.l1.capacity_bytes = to_u64(key, value);
  else if (key == "sim.l1_line_bytes")
    cfg.l1.line_bytes = static_cast<std::uint32_t>(to_u64(key, value));
  else if (key == "sim.l1_assoc")
    cfg.l1.associativity = static_cast<std::uint32_t>(to_u64(key, value));
  else if (key == "sim.l2_bytes")
    cfg.l2.capacity_bytes = to_u64(key, value);
  else if (key == "sim.l2_line_bytes")
    cfg.l2.line_bytes = static_cast<std::uint32_t>(to_u64(key, value));
  else if (key == "sim.l2_assoc")
    cfg.l2.associativity = static_cast<std::uint32_t>(to_u64(key, value));
  else if (key == "sim.l1_sweep_bytes")
    cfg.l1_sweep_bytes = to_u64_list(key, value);
  else if (key == "output.path")
    cfg.out_path = value;
  else
    throw std::invalid_argument("unknown config key: " + key);
}

void parse_config(ScenarioConfig& cfg, std::istream& in, const std::string& origin)
{
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty())
      continue;
    try {
      apply_setting(cfg, line);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

ScenarioConfig load_config(const std::string& path)
{
  ScenarioConfig cfg;
  if (path.empty())
    return cfg;
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file: " + path);
  parse_config(cfg, in, path);
  return cfg;
}

} // namespace cmpdse::cli
