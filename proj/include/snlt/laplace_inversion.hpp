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
#ifndef SNLT_LAPLACE_INVERSION_HPP
#define SNLT_LAPLACE_INVERSION_HPP

#include <complex>
#include <functional>

namespace snlt {

using LaplaceTransform = std::function<std::complex<long double>(std::complex<long double>)>;

// Fixed-Talbot inversion of a Laplace transform whose singularities lie on the
// closed negative real half-line. Evaluated in long double; with the default
// node count the relative error on smooth, non-oscillating originals is
// around 1e-12. t must be positive.
double talbot_invert(const LaplaceTransform& transform, double t, int nodes = 32);

}  // namespace snlt

#endif  // SNLT_LAPLACE_INVERSION_HPP
