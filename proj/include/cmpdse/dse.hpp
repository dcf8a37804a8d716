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

#ifndef CMPDSE_DSE_H
#define CMPDSE_DSE_H

#include <cstddef>
#include <optional>
#include <vector>

#include "cmpdse/model.hpp"

namespace cmpdse::dse
{
/*
 * Exhaustive search over (n, a_l1, a_cpu) grids. The shared-cache area
 * is not a free axis: it takes whatever die area the cores and private
 * caches leave, a_l2 = a_total - n * (a_l1 + a_cpu), so every candidate
 * spends the full budget. Candidates whose leftover is below a_l2_min
 * are discarded.
 *
 * Results are deterministic: candidates are ranked by IPC and ties go
 * to the smallest (n, a_l1, a_cpu) in lexicographic order, regardless
 * of execution policy.
 */

struct GridSpec {
  std::vector<int> n_values;
  std::vector<double> a_l1_values;
  std::vector<double> a_cpu_values;
  double a_l2_min = 1.0;

  static GridSpec defaults();
  // lo, lo*factor, lo*factor^2, ... up to and including hi (within rounding).
  static std::vector<double> geometric(double lo, double hi, double factor = 2.0);

  void validate() const;
  std::size_t size() const;
};

// Which resource limits must hold for a candidate to count as feasible.
// Area feasibility is built into the search and always holds.
enum class ConstraintMode { Power, Bandwidth, Both };

enum class Execution { Sequential, Parallel, Auto };

struct EvaluatedPoint {
  model::Configuration cfg;
  model::EvalResult eval;
};

// One row of a sweep; cfg and eval are meaningful only when feasible.
struct SweepPoint {
  double x = 0.0;
  bool feasible = false;
  model::Configuration cfg{};
  model::EvalResult eval{};
  bool envelope = false;
};

// Every grid point whose leftover shared-cache area clears the floor,
// in lexicographic (n, a_l1, a_cpu) order, with feasibility flags set
// but not filtered on.
std::vector<EvaluatedPoint> enumerate_feasible(const GridSpec& grid,
                                               const model::WorkloadParams& w,
                                               const model::TechParams& t,
                                               const model::Budgets& b);

// Highest-IPC feasible candidate, or nullopt when the grid has none.
std::optional<EvaluatedPoint> optimize(const GridSpec& grid,
                                       const model::WorkloadParams& w,
                                       const model::TechParams& t,
                                       const model::Budgets& b,
                                       ConstraintMode mode = ConstraintMode::Both,
                                       Execution exec = Execution::Auto);

// Re-optimizes for each area budget (ascending); caps supplies the
// other limits.
std::vector<SweepPoint> sweep_area_budget(const std::vector<double>& budgets,
                                          const GridSpec& grid,
                                          const model::WorkloadParams& w,
                                          const model::TechParams& t,
                                          const model::Budgets& caps,
                                          ConstraintMode mode = ConstraintMode::Both);

struct L1Sweep {
  std::vector<SweepPoint> scatter;  // every feasible point, x = a_l1
  std::vector<SweepPoint> envelope; // best point per distinct a_l1
};

// Scatter of IPC against private-cache area, with its upper envelope.
L1Sweep sweep_l1_area(const GridSpec& grid, const model::WorkloadParams& w,
                      const model::TechParams& t, const model::Budgets& b,
                      ConstraintMode mode = ConstraintMode::Both);

struct SharingShift {
  bool feasible = false; // both optimizations found a point
  double a_l1_sharing = 0.0;
  double a_l1_nosharing = 0.0;
  double relative_shift = 0.0; // (nosharing - sharing) / nosharing
  EvaluatedPoint opt_sharing{};
  EvaluatedPoint opt_nosharing{};
};

/*
 * Optimizes the same scenario twice, once as given and once with the
 * sharing miss floor removed (mu_n = 0), and reports how far the
 * optimal private-cache area moves. Requires mu_n > 0.
 */
SharingShift compare_sharing(const GridSpec& grid, const model::WorkloadParams& w,
                             const model::TechParams& t, const model::Budgets& b,
                             ConstraintMode mode = ConstraintMode::Both);

} // namespace cmpdse::dse

#endif
