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

#include "cmpdse/dse.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <future>
#include <map>
#include <stdexcept>
#include <thread>

namespace cmpdse::dse
{
namespace
{
constexpr std::size_t PARALLEL_CHUNK = 8192;
constexpr std::size_t PARALLEL_THRESHOLD = 65536;

bool mode_feasible(const model::EvalResult& r, ConstraintMode mode)
{
  switch (mode) {
  case ConstraintMode::Power:
    return r.feasible_power;
  case ConstraintMode::Bandwidth:
    return r.feasible_bw;
  case ConstraintMode::Both:
    return r.feasible_power && r.feasible_bw;
  }
  return false;
}

// Candidate at flat grid index i, or nullopt when the leftover shared-cache
// area falls below the floor.
std::optional<model::Configuration> candidate_at(std::size_t i, const GridSpec& grid,
                                                 const model::Budgets& b)
{
  const std::size_t n_cpu = grid.a_cpu_values.size();
  const std::size_t n_l1 = grid.a_l1_values.size();
  model::Configuration cfg;
  cfg.a_cpu = grid.a_cpu_values[i % n_cpu];
  cfg.a_l1 = grid.a_l1_values[(i / n_cpu) % n_l1];
  cfg.n = grid.n_values[i / (n_cpu * n_l1)];
  cfg.a_l2 = b.a_total - static_cast<double>(cfg.n) * (cfg.a_l1 + cfg.a_cpu);
  if (cfg.a_l2 < grid.a_l2_min)
    return std::nullopt;
  return cfg;
}

struct BestPoint {
  bool valid = false;
  std::size_t index = 0;
  EvaluatedPoint point{};
};

// Keeps the first maximum in flat-index order, which is exactly the
// lexicographic (n, a_l1, a_cpu) tie-break.
void merge_best(BestPoint& best, const BestPoint& other)
{
  if (!other.valid)
    return;
  if (!best.valid || other.point.eval.ipc > best.point.eval.ipc
      || (other.point.eval.ipc == best.point.eval.ipc && other.index < best.index)) {
    best = other;
  }
}

BestPoint scan_range(std::size_t lo, std::size_t hi, const GridSpec& grid,
                     const model::WorkloadParams& w, const model::TechParams& t,
                     const model::Budgets& b, ConstraintMode mode)
{
  BestPoint best;
  for (std::size_t i = lo; i < hi; ++i) {
    auto cfg = candidate_at(i, grid, b);
    if (!cfg)
      continue;
    model::EvalResult r = model::evaluate(*cfg, w, t, b);
    if (!mode_feasible(r, mode))
      continue;
    merge_best(best, BestPoint{true, i, {*cfg, r}});
  }
  return best;
}
} // namespace

GridSpec GridSpec::defaults()
{
  GridSpec g;
  g.n_values = {1, 2, 4, 8, 16};
  g.a_l1_values = geometric(1.0, 32.0);
  g.a_cpu_values = geometric(1.0, 64.0);
  g.a_l2_min = 1.0;
  return g;
}

std::vector<double> GridSpec::geometric(double lo, double hi, double factor)
{
  if (lo <= 0.0 || hi < lo || factor <= 1.0)
    throw std::invalid_argument("geometric grid needs 0 < lo <= hi and factor > 1");
  std::vector<double> v;
  for (double x = lo; x <= hi * (1.0 + 1e-12); x *= factor)
    v.push_back(x);
  return v;
}

void GridSpec::validate() const
{
  if (n_values.empty() || a_l1_values.empty() || a_cpu_values.empty())
    throw std::invalid_argument("grid axes must be non-empty");
  for (int n : n_values)
    if (n < 1)
      throw std::invalid_argument("grid.n values must be at least 1");
  for (double a : a_l1_values)
    if (a <= 0.0)
      throw std::invalid_argument("grid.a_l1 values must be positive");
  for (double a : a_cpu_values)
    if (a <= 0.0)
      throw std::invalid_argument("grid.a_cpu values must be positive");
  auto ascending = [](const auto& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!ascending(n_values) || !ascending(a_l1_values) || !ascending(a_cpu_values))
    throw std::invalid_argument("grid axes must be strictly increasing");
  if (a_l2_min <= 0.0)
    throw std::invalid_argument("grid.a_l2_min must be positive");
}

std::size_t GridSpec::size() const
{
  return n_values.size() * a_l1_values.size() * a_cpu_values.size();
}

std::vector<EvaluatedPoint> enumerate_feasible(const GridSpec& grid,
                                               const model::WorkloadParams& w,
                                               const model::TechParams& t,
                                               const model::Budgets& b)
{
  grid.validate();
  w.validate();
  t.validate();
  b.validate();

  std::vector<EvaluatedPoint> out;
  const std::size_t total = grid.size();
  for (std::size_t i = 0; i < total; ++i) {
    auto cfg = candidate_at(i, grid, b);
    if (!cfg)
      continue;
    out.push_back({*cfg, model::evaluate(*cfg, w, t, b)});
  }
  return out;
}

std::optional<EvaluatedPoint> optimize(const GridSpec& grid, const model::WorkloadParams& w,
                                       const model::TechParams& t, const model::Budgets& b,
                                       ConstraintMode mode, Execution exec)
{
  grid.validate();
  w.validate();
  t.validate();
  b.validate();

  const std::size_t total = grid.size();
  bool parallel = exec == Execution::Parallel
                  || (exec == Execution::Auto && total >= PARALLEL_THRESHOLD
                      && std::thread::hardware_concurrency() > 1);

  BestPoint best;
  if (!parallel) {
    best = scan_range(0, total, grid, w, t, b, mode);
  } else {
    std::vector<std::future<BestPoint>> futures;
    for (std::size_t lo = 0; lo < total; lo += PARALLEL_CHUNK) {
      std::size_t hi = std::min(lo + PARALLEL_CHUNK, total);
      futures.push_back(std::async(std::launch::async, scan_range, lo, hi, std::cref(grid),
                                   std::cref(w), std::cref(t), std::cref(b), mode));
    }
    // Merging in chunk order keeps the result identical to the
    // sequential scan.
    for (auto& f : futures)
      merge_best(best, f.get());
  }

  if (!best.valid)
    return std::nullopt;
  return best.point;
}

std::vector<SweepPoint> sweep_area_budget(const std::vector<double>& budgets,
                                          const GridSpec& grid,
                                          const model::WorkloadParams& w,
                                          const model::TechParams& t,
                                          const model::Budgets& caps, ConstraintMode mode)
{
  if (budgets.empty())
    throw std::invalid_argument("sweep.budgets must be non-empty");
  for (std::size_t i = 1; i < budgets.size(); ++i)
    if (budgets[i] <= budgets[i - 1])
      throw std::invalid_argument("sweep.budgets must be strictly increasing");
  std::vector<SweepPoint> out;
  out.reserve(budgets.size());
  for (double a : budgets) {
    model::Budgets b = caps;
    b.a_total = a;
    SweepPoint p;
    p.x = a;
    if (auto opt = optimize(grid, w, t, b, mode)) {
      p.feasible = true;
      p.cfg = opt->cfg;
      p.eval = opt->eval;
    }
    out.push_back(p);
  }
  return out;
}

L1Sweep sweep_l1_area(const GridSpec& grid, const model::WorkloadParams& w,
                      const model::TechParams& t, const model::Budgets& b,
                      ConstraintMode mode)
{
  L1Sweep sweep;
  auto points = enumerate_feasible(grid, w, t, b);
  sweep.scatter.reserve(points.size());
  for (const auto& p : points) {
    if (!mode_feasible(p.eval, mode))
      continue;
    SweepPoint sp;
    sp.x = p.cfg.a_l1;
    sp.feasible = true;
    sp.cfg = p.cfg;
    sp.eval = p.eval;
    sweep.scatter.push_back(sp);
  }

  // Scatter order is the enumeration order, so the first maximum per
  // a_l1 value already carries the lexicographic tie-break.
  std::map<double, std::size_t> best_per_l1;
  for (std::size_t i = 0; i < sweep.scatter.size(); ++i) {
    const auto& sp = sweep.scatter[i];
    auto [it, inserted] = best_per_l1.try_emplace(sp.x, i);
    if (!inserted && sp.eval.ipc > sweep.scatter[it->second].eval.ipc)
      it->second = i;
  }
  for (auto& [a_l1, idx] : best_per_l1) {
    sweep.scatter[idx].envelope = true;
    sweep.envelope.push_back(sweep.scatter[idx]);
  }
  return sweep;
}

namespace
{
// Peak of the upper envelope; ties go to the smallest a_l1 bucket.
std::optional<EvaluatedPoint> envelope_peak(const L1Sweep& sweep)
{
  std::optional<EvaluatedPoint> best;
  for (const auto& p : sweep.envelope) {
    if (!best || p.eval.ipc > best->eval.ipc)
      best = EvaluatedPoint{p.cfg, p.eval};
  }
  return best;
}
} // namespace

SharingShift compare_sharing(const GridSpec& grid, const model::WorkloadParams& w,
                             const model::TechParams& t, const model::Budgets& b,
                             ConstraintMode mode)
{
  if (w.mu_n <= 0.0)
    throw std::invalid_argument("compare_sharing needs a workload with mu_n > 0");

  model::WorkloadParams w0 = w;
  w0.mu_n = 0.0;

  SharingShift shift;
  auto with = envelope_peak(sweep_l1_area(grid, w, t, b, mode));
  auto without = envelope_peak(sweep_l1_area(grid, w0, t, b, mode));
  if (!with || !without)
    return shift;

  shift.feasible = true;
  shift.opt_sharing = *with;
  shift.opt_nosharing = *without;
  shift.a_l1_sharing = with->cfg.a_l1;
  shift.a_l1_nosharing = without->cfg.a_l1;
  shift.relative_shift = (shift.a_l1_nosharing - shift.a_l1_sharing) / shift.a_l1_nosharing;
  return shift;
}

} // namespace cmpdse::dse
