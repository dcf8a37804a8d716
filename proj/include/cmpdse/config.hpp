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

#ifndef CMPDSE_CONFIG_H
#define CMPDSE_CONFIG_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmpdse/cachesim.hpp"
#include "cmpdse/dse.hpp"
#include "cmpdse/model.hpp"
#include "cmpdse/tracegen.hpp"

namespace cmpdse::cli
{
/*
 * Flat text scenario files: one `section.key = value` per line, `#`
 * starts a comment, blank lines ignored. Lists are comma-separated.
 * Every key is optional; unknown keys are an error. The same keys work
 * as command-line overrides (--set key=value).
 */

struct ScenarioConfig {
  model::WorkloadParams workload{};
  model::TechParams tech{};
  model::Budgets budget{};
  model::Configuration point{};
  dse::GridSpec grid = dse::GridSpec::defaults();
  std::vector<double> sweep_budgets = {32, 64, 128, 256, 512};
  sim::SharingSpec sharing{};
  sim::CacheGeometry l1{32768, 64, 8};
  sim::CacheGeometry l2{2097152, 64, 16};
  std::vector<std::uint64_t> l1_sweep_bytes = {4096, 8192, 16384, 32768, 65536, 131072};
  std::string out_path; // output.path

  // Derives workload.mu_n from a per-application sharing asymptote and
  // the core count of the evaluated point; only cmd_eval honors it.
  std::optional<double> mu_n_sigma;
};

// Defaults, overwritten by the file when path is non-empty.
ScenarioConfig load_config(const std::string& path);

// One `section.key = value` assignment; unknown key or bad value throws.
void apply_setting(ScenarioConfig& cfg, const std::string& assignment);

void parse_config(ScenarioConfig& cfg, std::istream& in, const std::string& origin);

} // namespace cmpdse::cli

#endif
