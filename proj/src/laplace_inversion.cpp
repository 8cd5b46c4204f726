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
#include "snlt/laplace_inversion.hpp"

#include <cmath>
#include <numbers>

#include "snlt/error.hpp"

namespace snlt {

double talbot_invert(const LaplaceTransform& transform, double t, int nodes) {
  if (!(t > 0.0)) throw DomainError("talbot_invert: t must be positive");
  if (nodes < 4) throw DomainError("talbot_invert: need at least 4 nodes");

  using cplx = std::complex<long double>;
  const long double pi = std::numbers::pi_v<long double>;
  const long double tt = t;
  const long double r = 2.0L * nodes / (5.0L * tt);

  long double sum = 0.5L * std::real(transform(cplx(r, 0.0L))) * std::exp(r * tt);
  for (int k = 1; k < nodes; ++k) {
    const long double theta = k * pi / nodes;
    const long double cot = std::cos(theta) / std::sin(theta);
    const cplx s(r * theta * cot, r * theta);
    const long double sigma = theta + (theta * cot - 1.0L) * cot;
    sum += std::real(std::exp(tt * s) * transform(s) * cplx(1.0L, sigma));
  }
  const long double f = r / nodes * sum;
  if (!std::isfinite(static_cast<double>(f))) throw NumericError("talbot_invert: non-finite result");
  return static_cast<double>(f);
}

}  // namespace snlt
