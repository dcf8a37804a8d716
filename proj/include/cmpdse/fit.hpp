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

#ifndef CMPDSE_FIT_H
#define CMPDSE_FIT_H

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cmpdse::fit
{
/*
 * Least-squares calibration of miss-rate laws of the form
 *
 *   model 1:  m(A) = c * A^(-gamma)
 *   model 2:  m(A) = mu_n + c * A^(-gamma)
 *
 * against measured (area, miss rate) samples. Model 1 is model 2 with
 * the floor pinned to zero, so at equal gamma its error never beats
 * model 2. Sizes may be given in any consistent unit; only mu_n is
 * unit-free. mu and alpha are not separately identifiable from a miss
 * curve, only their combination c; derived_mu recovers mu once the
 * caller fixes alpha.
 */

struct MissSample {
  double a_l1;      // cache size, any consistent unit
  double miss_rate; // in [0, 1]
};

struct FitResult {
  double mu_n_hat = 0.0;
  double c_hat = 0.0;
  double gamma_hat = 0.5;
  double sse = 0.0;
  std::vector<double> residuals; // sample order, observed minus fitted

  double predict(double a_l1) const;
};

// Preference verdict thresholds: model 2 must cut the error by at
// least this factor and find a meaningfully positive floor.
inline constexpr double PREFER2_SSE_RATIO = 0.7;
inline constexpr double PREFER2_MIN_MU_N = 0.005;

struct ModelComparison {
  FitResult model1;
  FitResult model2;
  double sse_ratio = 1.0; // sse(model2) / sse(model1), 1 when both vanish
  int preferred = 1;      // 1 or 2
};

// Closed-form fit of model 1. Needs two distinct sizes.
FitResult fit_model1(std::span<const MissSample> samples, double gamma = 0.5);

/*
 * Fit of model 2 with the floor clamped to [0,1] and the coefficient
 * to >= 0 (the clamped-out parameter is refit). Fixed gamma when given;
 * otherwise gamma is searched over [0.3, 0.7] by golden section
 * (tolerance 1e-4), keeping the default-exponent fit when it is no
 * worse. Needs three distinct sizes.
 */
FitResult fit_model2(std::span<const MissSample> samples,
                     std::optional<double> gamma = std::nullopt);

// Model 1 at the default exponent against model 2 with free exponent;
// a given gamma pins both fits to it instead.
ModelComparison compare_models(std::span<const MissSample> samples,
                               std::optional<double> gamma = std::nullopt);

// mu such that c = (1 - mu_n) * mu * alpha^gamma.
double derived_mu(const FitResult& fit, double alpha);

// CSV `a_l1,miss_rate`, optional header line, '#' comments ignored.
std::vector<MissSample> read_samples_csv(std::istream& in);
std::vector<MissSample> read_samples_csv_file(const std::string& path);

// CSV a_l1,miss_rate,fitted,residual in sample order.
void write_residuals_csv(std::span<const MissSample> samples, const FitResult& fit,
                         std::ostream& out);

} // namespace cmpdse::fit

#endif
