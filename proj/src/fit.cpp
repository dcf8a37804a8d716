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

#include "cmpdse/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cmpdse::fit
{
namespace
{
constexpr double GAMMA_LO = 0.3;
constexpr double GAMMA_HI = 0.7;
constexpr double GAMMA_TOL = 1e-4;
constexpr double DEFAULT_GAMMA = 0.5;

std::size_t distinct_sizes(std::span<const MissSample> samples)
{
  std::set<double> sizes;
  for (const auto& s : samples)
    sizes.insert(s.a_l1);
  return sizes.size();
}

void check_samples(std::span<const MissSample> samples, std::size_t min_distinct,
                   const char* which)
{
  if (samples.size() < min_distinct)
    throw std::invalid_argument(std::string(which) + " needs at least "
                                + std::to_string(min_distinct) + " samples");
  for (const auto& s : samples)
    if (!(s.a_l1 > 0.0) || !std::isfinite(s.miss_rate))
      throw std::invalid_argument("samples need positive sizes and finite miss rates");
  if (distinct_sizes(samples) < min_distinct)
    throw std::invalid_argument(std::string(which) + " needs at least "
                                + std::to_string(min_distinct) + " distinct sizes");
}

void finish(FitResult& r, std::span<const MissSample> samples)
{
  r.residuals.resize(samples.size());
  r.sse = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    r.residuals[i] = samples[i].miss_rate - r.predict(samples[i].a_l1);
    r.sse += r.residuals[i] * r.residuals[i];
  }
}

// Exact box-constrained least squares on basis {1, A^-gamma}: the
// unconstrained optimum if it lies in the box, else the best of the
// three pinned edges (each refitting and clamping the other parameter).
FitResult solve_model2_fixed(std::span<const MissSample> samples, double gamma)
{
  // Sequential sums, in sample order: the mu_n = 0 edge then reproduces
  // fit_model1's coefficient bit for bit, which keeps the nesting
  // sse(model 2) <= sse(model 1) exact rather than approximate.
  double sxx = 0.0, sx = 0.0, sy = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    const double x = std::pow(s.a_l1, -gamma);
    sxx += x * x;
    sx += x;
    sy += s.miss_rate;
    sxy += x * s.miss_rate;
  }
  const double nn = static_cast<double>(samples.size());

  Eigen::Matrix2d ata;
  ata << nn, sx, sx, sxx;
  Eigen::Vector2d aty(sy, sxy);

  std::vector<std::pair<double, double>> candidates; // (mu_n, c)
  Eigen::Vector2d unconstrained = ata.ldlt().solve(aty);
  if (unconstrained[0] >= 0.0 && unconstrained[0] <= 1.0 && unconstrained[1] >= 0.0)
    candidates.emplace_back(unconstrained[0], unconstrained[1]);
  candidates.emplace_back(0.0, std::max(0.0, sxy / sxx));
  candidates.emplace_back(1.0, std::max(0.0, (sxy - sx) / sxx));
  candidates.emplace_back(std::clamp(sy / nn, 0.0, 1.0), 0.0);

  FitResult best;
  double best_sse = std::numeric_limits<double>::infinity();
  for (const auto& [mu_n, c] : candidates) {
    FitResult r;
    r.mu_n_hat = mu_n;
    r.c_hat = c;
    r.gamma_hat = gamma;
    finish(r, samples);
    if (r.sse < best_sse) {
      best_sse = r.sse;
      best = std::move(r);
    }
  }
  return best;
}
} // namespace

double FitResult::predict(double a_l1) const
{
  return mu_n_hat + c_hat * std::pow(a_l1, -gamma_hat);
}

static void check_gamma(double gamma)
{
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("gamma must be positive and finite");
}

FitResult fit_model1(std::span<const MissSample> samples, double gamma)
{
  check_samples(samples, 2, "model-1 fit");
  check_gamma(gamma);

  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    double x = std::pow(s.a_l1, -gamma);
    sxx += x * x;
    sxy += x * s.miss_rate;
  }

  FitResult r;
  r.mu_n_hat = 0.0;
  r.c_hat = std::max(0.0, sxy / sxx);
  r.gamma_hat = gamma;
  finish(r, samples);
  return r;
}

FitResult fit_model2(std::span<const MissSample> samples, std::optional<double> gamma)
{
  check_samples(samples, 3, "model-2 fit");

  if (gamma) {
    check_gamma(*gamma);
    return solve_model2_fixed(samples, *gamma);
  }

  auto sse_at = [&](double g) { return solve_model2_fixed(samples, g).sse; };

  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = GAMMA_LO, b = GAMMA_HI;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = sse_at(c), fd = sse_at(d);
  while (b - a > GAMMA_TOL) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = sse_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = sse_at(d);
    }
  }

  FitResult searched = solve_model2_fixed(samples, (a + b) / 2.0);
  FitResult at_default = solve_model2_fixed(samples, DEFAULT_GAMMA);
  return at_default.sse <= searched.sse ? at_default : searched;
}

ModelComparison compare_models(std::span<const MissSample> samples,
                               std::optional<double> gamma)
{
  ModelComparison cmp;
  cmp.model1 = fit_model1(samples, gamma.value_or(DEFAULT_GAMMA));
  cmp.model2 = fit_model2(samples, gamma);

  double scale = 0.0;
  for (const auto& s : samples)
    scale += s.miss_rate * s.miss_rate;
  const double tiny = 1e-18 * std::max(scale, 1e-300);

  cmp.sse_ratio = cmp.model1.sse <= tiny ? 1.0 : cmp.model2.sse / cmp.model1.sse;
  cmp.preferred =
      (cmp.sse_ratio < PREFER2_SSE_RATIO && cmp.model2.mu_n_hat > PREFER2_MIN_MU_N) ? 2 : 1;
  return cmp;
}

double derived_mu(const FitResult& fit, double alpha)
{
  if (alpha <= 0.0)
    throw std::invalid_argument("alpha must be positive");
  if (fit.mu_n_hat >= 1.0)
    throw std::invalid_argument("mu is undefined when the fitted floor is 1");
  return fit.c_hat / ((1.0 - fit.mu_n_hat) * std::pow(alpha, fit.gamma_hat));
}

std::vector<MissSample> read_samples_csv(std::istream& in)
{
  std::vector<MissSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#')
      continue;
    if (std::isalpha(static_cast<unsigned char>(line[start]))) {
      if (samples.empty() && line_no == 1)
        continue; // header
      throw std::invalid_argument("samples line " + std::to_string(line_no)
                                  + ": expected '<a_l1>,<miss_rate>'");
    }
    std::istringstream ls(line);
    double a = 0.0, mr = 0.0;
    char comma = 0;
    if (!(ls >> a >> comma >> mr) || comma != ',')
      throw std::invalid_argument("samples line " + std::to_string(line_no)
                                  + ": expected '<a_l1>,<miss_rate>'");
    samples.push_back({a, mr});
  }
  return samples;
}

std::vector<MissSample> read_samples_csv_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open samples file: " + path);
  return read_samples_csv(in);
}

void write_residuals_csv(std::span<const MissSample> samples, const FitResult& fit,
                         std::ostream& out)
{
  out << "a_l1,miss_rate,fitted,residual\n";
  char buf[160];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double fitted = fit.predict(samples[i].a_l1);
    double residual = i < fit.residuals.size() ? fit.residuals[i]
                                               : samples[i].miss_rate - fitted;
    int len = std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", samples[i].a_l1,
                            samples[i].miss_rate, fitted, residual);
    out.write(buf, len);
  }
}

} // namespace cmpdse::fit
