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
#include "snlt/statistics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "snlt/error.hpp"

namespace snlt {

MeanError mean_error(const std::vector<double>& xs) {
  if (xs.size() < 2) throw EstimationError("mean_error: need at least two samples");
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double v : xs) {
    ++k;
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  const double n = static_cast<double>(xs.size());
  return {mean, std::sqrt(m2 / (n - 1.0) / n), xs.size()};
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EstimationError("ks_test: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d), samples.size()};
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                               std::size_t fitted) {
  if (observed.size() != expected.size() || observed.size() < 2 + fitted) {
    throw EstimationError("chi_square_gof: need matching cells and positive degrees of freedom");
  }
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw EstimationError("chi_square_gof: expected counts must be positive");
    const double d = observed[i] - expected[i];
    r.statistic += d * d / expected[i];
  }
  r.dof = static_cast<double>(observed.size() - 1 - fitted);
  r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
  return r;
}

ChiSquareResult chi_square_homogeneity(const std::vector<double>& successes, const std::vector<double>& trials) {
  if (successes.size() != trials.size() || successes.size() < 2) {
    throw EstimationError("chi_square_homogeneity: need at least two groups");
  }
  double s = 0.0;
  double t = 0.0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    s += successes[i];
    t += trials[i];
  }
  const double pooled = s / t;
  if (!(pooled > 0.0 && pooled < 1.0)) throw EstimationError("chi_square_homogeneity: degenerate pooled proportion");
  ChiSquareResult r;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (!(trials[i] > 0.0)) throw EstimationError("chi_square_homogeneity: empty group");
    const double e1 = trials[i] * pooled;
    const double e0 = trials[i] - e1;
    const double d = successes[i] - e1;
    r.statistic += d * d / e1 + d * d / e0;
  }
  r.dof = static_cast<double>(trials.size() - 1);
  r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
  return r;
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw EstimationError("pearson_correlation: need paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0 && syy > 0.0)) throw EstimationError("pearson_correlation: constant sample");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace snlt
