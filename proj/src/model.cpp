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

#include "cmpdse/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmpdse::model
{
namespace
{
void require(bool ok, const std::string& what)
{
  if (!ok)
    throw std::invalid_argument(what);
}

double clamp_unit(double x, bool* clamped)
{
  if (x < 0.0) {
    if (clamped != nullptr)
      *clamped = true;
    return 0.0;
  }
  if (x > 1.0) {
    if (clamped != nullptr)
      *clamped = true;
    return 1.0;
  }
  return x;
}
} // namespace

void WorkloadParams::validate() const
{
  require(g >= 0.0 && g <= 1.0, "workload.g must be in [0, 1]");
  require(mu >= 0.0 && mu <= 1.0, "workload.mu must be in [0, 1]");
  require(alpha > 0.0, "workload.alpha must be positive");
  require(mu_n >= 0.0 && mu_n <= 1.0, "workload.mu_n must be in [0, 1]");
  require(beta > 0.0 && beta < 1.0, "workload.beta must be in (0, 1)");
  require(e_n >= 0.0, "workload.e_n must be nonnegative");
  require(chi > 0.0, "workload.chi must be positive");
  require(f == 1.0, "workload.f is fixed at 1");
}

void TechParams::validate() const
{
  require(tau > 0.0, "tech.tau must be positive");
  require(d_noc >= 0.0, "tech.d_noc must be nonnegative");
  require(d_dram > 0.0, "tech.d_dram must be positive");
  require(k_cache >= 0.0, "tech.k_cache must be nonnegative");
  require(k_core >= 0.0, "tech.k_core must be nonnegative");
}

void Configuration::validate() const
{
  require(n >= 1, "point.n must be at least 1");
  require(a_l1 > 0.0, "point.a_l1 must be positive");
  require(a_cpu > 0.0, "point.a_cpu must be positive");
  require(a_l2 > 0.0, "point.a_l2 must be positive");
}

void Budgets::validate() const
{
  require(a_total > 0.0, "budget.a_total must be positive");
  require(p_max > 0.0, "budget.p_max must be positive");
  require(md_max > 0.0 && md_max <= 1.0, "budget.md_max must be in (0, 1]");
}

double l1_miss_rate(double a_l1, const WorkloadParams& w, bool* clamped)
{
  double m = w.mu_n + (1.0 - w.mu_n) * w.mu / std::sqrt(a_l1 / w.alpha);
  return clamp_unit(m, clamped);
}

double l2_miss_rate(double m1, const Configuration& cfg, const WorkloadParams& w,
                    bool* clamped)
{
  double m = w.e_n * m1 * std::sqrt(static_cast<double>(cfg.n) * cfg.a_l1 / cfg.a_l2);
  return clamp_unit(m, clamped);
}

AccessTimes access_times(const Configuration& cfg, const WorkloadParams& w,
                         const TechParams& t)
{
  AccessTimes d;
  d.d_l1 = t.tau * std::pow(cfg.a_l1 / w.alpha, w.beta);
  d.d_l2 = t.d_noc + t.tau * std::pow(cfg.a_l2 / w.alpha, w.beta);
  return d;
}

double cpi_memory(double m1, double m2, const AccessTimes& d, const TechParams& t)
{
  return (1.0 - m1) * d.d_l1 + m1 * (1.0 - m2) * d.d_l2 + m1 * m2 * t.d_dram;
}

double cpi_compute(double a_cpu, const WorkloadParams& w)
{
  return w.chi / std::sqrt(a_cpu);
}

double chip_power(const Configuration& cfg, const TechParams& t)
{
  return static_cast<double>(cfg.n) * (t.k_cache * std::sqrt(cfg.a_l1) + t.k_core * cfg.a_cpu)
         + t.k_cache * std::sqrt(cfg.a_l2);
}

EvalResult evaluate(const Configuration& cfg, const WorkloadParams& w,
                    const TechParams& t, const Budgets& b)
{
  cfg.validate();
  w.validate();
  t.validate();
  b.validate();

  EvalResult r{};
  r.clamped = false;
  r.m1 = l1_miss_rate(cfg.a_l1, w, &r.clamped);
  r.m2 = l2_miss_rate(r.m1, cfg, w, &r.clamped);

  AccessTimes d = access_times(cfg, w, t);
  r.d_l1 = d.d_l1;
  r.d_l2 = d.d_l2;

  r.cpi_m = cpi_memory(r.m1, r.m2, d, t);
  r.cpi_c = cpi_compute(cfg.a_cpu, w);
  r.cpi_1 = w.g * r.cpi_m + (1.0 - w.g) * r.cpi_c;
  r.ipc = static_cast<double>(cfg.n) / r.cpi_1;

  r.power = chip_power(cfg, t);
  r.m_d = r.m1 * r.m2;

  double area = static_cast<double>(cfg.n) * (cfg.a_l1 + cfg.a_cpu) + cfg.a_l2;
  r.feasible_area = area <= b.a_total;
  r.feasible_power = r.power <= b.p_max;
  r.feasible_bw = r.m_d <= b.md_max;
  return r;
}

double mu_n_from_asymptote(double sigma, int n)
{
  if (sigma < 0.0 || sigma > 1.0)
    throw std::invalid_argument("sharing asymptote must be in [0, 1]");
  if (n < 1)
    throw std::invalid_argument("core count must be at least 1");
  return sigma * (1.0 - 1.0 / static_cast<double>(n));
}

} // namespace cmpdse::model
