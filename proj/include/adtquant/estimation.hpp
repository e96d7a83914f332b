/* Copyright 2026 The adtquant Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adtquant/pac.hpp"

namespace adtquant {

/// i.i.d. samples of one quantity. At least two finite values.
struct SampleSeries {
  std::vector<double> values;
  std::optional<std::string> source;
};

struct EstimateRequest {
  SampleSeries samples;
  /// Uncertainty probability in (0, 1); the interval has confidence 1 - delta.
  double delta = 0.05;
};

/// Inverse of the standard normal CDF. Acklam's rational approximation followed by
/// one Halley step against an erfc-based CDF; absolute error below 1e-8 on
/// [1e-10, 1 - 1e-10]. Throws AdtError outside (0, 1).
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

/// Gaussian estimate: value is the sample mean, eps = z_{1-delta/2} * s / sqrt(n)
/// with s the Bessel-corrected standard deviation, delta as requested.
PacValue estimate_gaussian(const EstimateRequest& request);

}  // namespace adtquant
