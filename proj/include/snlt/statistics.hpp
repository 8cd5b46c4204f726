/*
Copyright 2026 The snlt Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#ifndef SNLT_STATISTICS_HPP
#define SNLT_STATISTICS_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace snlt {

struct MeanError {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Sample mean and standard error (n − 1 variance). Throws EstimationError
/// when fewer than two samples are given.
MeanError mean_error(const std::vector<double>& xs);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t n = 0;
};

/// Asymptotic Kolmogorov survival function Q(λ) = 2 Σ (−1)^{k−1} e^{−2k²λ²}.
double kolmogorov_survival(double lambda);

/// One-sample Kolmogorov–Smirnov test against a continuous CDF, with the
/// Stephens small-sample correction λ = (√n + 0.12 + 0.11/√n) D.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 0.0;
};

/// Σ (O − E)² / E over the cells, with dof = cells − 1 − fitted.
ChiSquareResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                               std::size_t fitted = 0);
/// Homogeneity of success proportions across groups: rows are (successes, trials).
ChiSquareResult chi_square_homogeneity(const std::vector<double>& successes, const std::vector<double>& trials);

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace snlt

#endif  // SNLT_STATISTICS_HPP
