// Copyright (c) 2026, the flowgen authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <vector>

namespace flowgen::test {

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Chi-square survival function (p-value of a chi2 statistic).
double chi2_sf(double chi2, int dof);

/// One-sample Kolmogorov-Smirnov against a CDF. Sorts a copy of the data.
double ks_statistic(std::vector<double> data,
                    const std::function<double(double)>& cdf);
double ks_pvalue(double d, double n_effective);

/// Two-sample KS test p-value.
double ks2_pvalue(std::vector<double> a, std::vector<double> b);

/// Chi-square uniformity p-value over equal-probability bins.
double chi2_uniform_pvalue(const std::vector<size_t>& counts);

}  // namespace flowgen::test
