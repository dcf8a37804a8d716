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

#ifndef CMPDSE_COMMANDS_H
#define CMPDSE_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cmpdse::cli
{
/*
 * Subcommand bodies behind the executable. Each returns the process
 * exit code: 0 success, 2 infeasible optimization. Input problems
 * (bad config, unreadable files, malformed traces) throw
 * std::invalid_argument, which the frontend maps to exit code 3.
 */

struct CommonArgs {
  std::string config_path;            // --config
  std::vector<std::string> overrides; // --set key=value, applied in order
  std::string out_path;               // --out, wins over output.path
  std::optional<std::uint64_t> seed;  // --seed, wins over sharing.seed
  bool json = false;                  // --json (eval)
};

int cmd_eval(const CommonArgs& args, std::ostream& out);
int cmd_sweep(const CommonArgs& args, const std::string& mode,
              const std::string& constraint, std::ostream& out);
int cmd_optimize(const CommonArgs& args, const std::string& constraint, std::ostream& out);
int cmd_gen_trace(const CommonArgs& args, std::ostream& out);
int cmd_simulate(const CommonArgs& args, const std::string& trace_path, std::ostream& out);
int cmd_miss_curve(const CommonArgs& args, std::ostream& out);
int cmd_fit(const CommonArgs& args, const std::string& samples_path,
            std::optional<double> gamma, std::ostream& out);

} // namespace cmpdse::cli

#endif
