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

#ifndef CMPDSE_MODEL_H
#define CMPDSE_MODEL_H

namespace cmpdse::model
{
/*
 * Analytical throughput model for a chip multiprocessor with per-core
 * private L1 caches and one shared L2. Cache miss rates follow a
 * square-root area law with an additive floor for blocks exchanged
 * between cores; cycle counts combine a compute component that shrinks
 * with core area and a memory component built from the miss rates and
 * the cache access times.
 *
 * Areas are unitless multiples of a baseline cache of area alpha.
 */

// Per-application parameters.
struct WorkloadParams {
  double g = 0.2;      // fraction of cycles spent in memory accesses
  double mu = 0.1;     // miss rate of a private cache of area alpha
  double alpha = 1.0;  // baseline cache area
  double mu_n = 0.05;  // asymptotic miss floor from inter-core sharing
  double beta = 0.4;   // access-time vs. area exponent
  double e_n = 1.0;    // sharing scale factor for the shared-cache miss rate
  double chi = 1.0;    // compute CPI of a core of unit area
  double f = 1.0;      // parallel fraction (fixed at 1: fully parallel)

  void validate() const;
};

// Technology constants shared by all design points.
struct TechParams {
  double tau = 1.0;      // access time of a cache of area alpha, cycles
  double d_noc = 10.0;   // interconnect round trip to the shared cache, cycles
  double d_dram = 200.0; // memory access latency, cycles
  double k_cache = 1.0;  // cache power per sqrt(area)
  double k_core = 0.1;   // core power per area

  void validate() const;
};

// One candidate design point.
struct Configuration {
  int n = 4;           // core count
  double a_l1 = 4.0;   // private cache area per core
  double a_cpu = 16.0; // core area
  double a_l2 = 64.0;  // shared cache area

  void validate() const;
};

// Resource limits a design must respect.
struct Budgets {
  double a_total = 144.0; // total die area
  double p_max = 40.0;    // power ceiling
  double md_max = 0.003;  // off-chip traffic ceiling, misses per reference

  void validate() const;
};

struct AccessTimes {
  double d_l1;
  double d_l2;
};

// Full evaluation of one design point.
struct EvalResult {
  double m1;    // private cache miss rate
  double m2;    // shared cache miss rate, relative to private misses
  double d_l1;  // private cache access time, cycles
  double d_l2;  // shared cache access time, cycles
  double cpi_m; // memory CPI
  double cpi_c; // compute CPI
  double cpi_1; // per-core CPI
  double ipc;   // chip throughput, instructions per cycle
  double power;
  double m_d;   // off-chip misses per reference (m1 * m2)
  bool feasible_area;
  bool feasible_power;
  bool feasible_bw;
  bool clamped; // a miss rate hit [0, 1] and was clamped
};

/*
 * Private cache miss rate: mu_n + (1 - mu_n) * mu / sqrt(a_l1 / alpha),
 * clamped to [0, 1]. With mu_n = 0 this is the plain square-root law.
 * Sets *clamped when clamping occurred.
 */
double l1_miss_rate(double a_l1, const WorkloadParams& w, bool* clamped = nullptr);

/*
 * Shared cache miss rate, relative to the references that missed the
 * private level: e_n * m1 * sqrt(n * a_l1 / a_l2), clamped to [0, 1].
 * The n private caches together act as a filter of size n * a_l1.
 */
double l2_miss_rate(double m1, const Configuration& cfg, const WorkloadParams& w,
                    bool* clamped = nullptr);

// d_l1 = tau * (a_l1/alpha)^beta; d_l2 adds the interconnect round trip.
AccessTimes access_times(const Configuration& cfg, const WorkloadParams& w,
                         const TechParams& t);

// Expected cycles per memory access, weighted over the three levels.
double cpi_memory(double m1, double m2, const AccessTimes& d, const TechParams& t);

// chi / sqrt(a_cpu): bigger cores retire instructions faster.
double cpi_compute(double a_cpu, const WorkloadParams& w);

// n * (k_cache * sqrt(a_l1) + k_core * a_cpu) + k_cache * sqrt(a_l2).
double chip_power(const Configuration& cfg, const TechParams& t);

// Evaluates every output of the model at one design point.
EvalResult evaluate(const Configuration& cfg, const WorkloadParams& w,
                    const TechParams& t, const Budgets& b);

/*
 * Maps a per-application sharing asymptote to the miss floor seen at a
 * given core count: sigma * (1 - 1/n). One core shares with nobody.
 */
double mu_n_from_asymptote(double sigma, int n);

} // namespace cmpdse::model

#endif
