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
#include <cmath>
#include <functional>

#include <doctest.h>

#include "snlt/error.hpp"
#include "snlt/scale_fn.hpp"

using namespace snlt;

namespace {

// Composite Simpson with n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// W^(q) for sigma = 1 and drift mu.
double w_linear(double mu, double q, double x) {
  if (x <= 0.0) return 0.0;
  const double d = std::sqrt(mu * mu + 2.0 * q);
  if (d == 0.0) return 2.0 * x;
  return 2.0 / d * std::exp(-mu * x) * std::sinh(d * x);
}

}  // namespace

TEST_SUITE("scale_fn") {
  TEST_CASE("Brownian values") {
    const ScaleContext s(LevyModel::brownian(), 0.5);
    CHECK(s.family() == ScaleFamily::Brownian);
    CHECK(s.w(1.0) == doctest::Approx(2.0 * std::sinh(1.0)).epsilon(1e-14));
    CHECK(s.w(1.0) == doctest::Approx(2.3504024).epsilon(1e-7));
    CHECK(s.z(1.0) == doctest::Approx(1.5430806).epsilon(1e-7));
    CHECK(s.w(-0.3) == 0.0);
    CHECK(s.z(-0.3) == 1.0);
    CHECK(ScaleContext(LevyModel::brownian(), 3.0).z(0.0) == 1.0);
    CHECK(ScaleContext(LevyModel::brownian(), 0.0).z(5.0) == 1.0);
    CHECK(ScaleContext(LevyModel::brownian(1.0), 0.0).w(1.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
    CHECK(ScaleContext(LevyModel::brownian(1.0), 0.0).w(1.0) == doctest::Approx(0.8646647).epsilon(1e-7));
  }

  TEST_CASE("linear Brownian against the sinh form") {
    for (double mu : {-1.3, -0.2, 0.0, 0.4, 2.0}) {
      for (double q : {0.0, 0.3, 2.0}) {
        const ScaleContext s(LevyModel::brownian(mu), q);
        for (double x : {1e-6, 0.01, 0.5, 3.0, 12.0}) {
          CHECK(s.w(x) == doctest::Approx(w_linear(mu, q, x)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("Laplace transform of W by quadrature") {
    const LevyModel m = LevyModel::exp_jumps(1.0, 0.5, 2.0, 0.6);
    for (double q : {0.0, 0.8}) {
      for (bool inv : {false, true}) {
        const ScaleContext s = inv ? ScaleContext(m, q, NumericInversion{32}) : ScaleContext(m, q);
        const double theta = s.phi().phi + 1.5;
        const double lt = simpson([&](double x) { return std::exp(-theta * x) * s.w(x); }, 0.0, 40.0, 8000);
        CHECK(lt == doctest::Approx(1.0 / (m.psi(theta) - q)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("partial fractions agree with inversion") {
    const LevyModel m = LevyModel::exp_jumps(0.7, -0.1, 1.5, 0.8);
    for (double q : {0.0, 0.25, 3.0}) {
      const ScaleContext cf(m, q);
      const ScaleContext iv(m, q, NumericInversion{40});
      CHECK(cf.family() == ScaleFamily::ExpJumpPartialFractions);
      CHECK(iv.family() == ScaleFamily::Inversion);
      for (double x : {0.05, 0.5, 2.0, 6.0}) {
        CHECK(iv.w(x) == doctest::Approx(cf.w(x)).epsilon(1e-9));
        CHECK(iv.z(x) == doctest::Approx(cf.z(x)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("Z is one plus q times the integral of W") {
    const LevyModel m = LevyModel::exp_jumps(1.0, 0.2, 1.0, 1.0);
    const double q = 0.7;
    const ScaleContext s(m, q);
    for (double x : {0.3, 1.0, 2.5}) {
      const double integral = simpson([&](double y) { return s.w(y); }, 0.0, x, 2000);
      CHECK(s.z(x) == doctest::Approx(1.0 + q * integral).epsilon(1e-11));
    }
  }

  TEST_CASE("dW/dq") {
    CHECK(ScaleContext(LevyModel::brownian(), 0.0).dwdq(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ScaleContext(LevyModel::brownian(), 0.5).dwdq(0.0) == 0.0);
    // symbolic derivative of sqrt(2/q) sinh(sqrt(2q) x)
    const double q = 0.5, x = 1.0, r = std::sqrt(2 * q);
    const double exact = -std::sqrt(2.0) / 2.0 * std::pow(q, -1.5) * std::sinh(r * x) +
                         std::sqrt(2.0 / q) * std::cosh(r * x) * x / r;
    CHECK(ScaleContext(LevyModel::brownian(), q).dwdq(x) == doctest::Approx(exact).epsilon(1e-8));
    const LevyModel m = LevyModel::exp_jumps(1.0, 0.3, 2.0, 0.5);
    for (double qq : {0.2, 1.0}) {
      const ScaleContext s(m, qq);
      for (double xx : {0.4, 1.7}) {
        const double h = 1e-5;
        const double fd = (ScaleContext(m, qq + h).w(xx) - ScaleContext(m, qq - h).w(xx)) / (2 * h);
        CHECK(s.dwdq(xx) == doctest::Approx(fd).epsilon(1e-7));
        CHECK(s.dwdq_convolution(xx) == doctest::Approx(s.dwdq(xx)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("asymptotics") {
    for (const LevyModel& m : {LevyModel::brownian(0.3), LevyModel::exp_jumps(1.0, 0.5, 1.0, 0.5)}) {
      const double q = 0.6;
      const ScaleContext s(m, q);
      const double phi = s.phi().phi;
      CHECK(std::exp(-phi * 30.0) * s.w(30.0) == doctest::Approx(s.phi().phi_prime).epsilon(1e-6));
      CHECK(s.w(29.0) / s.w(30.0) == doctest::Approx(std::exp(-phi)).epsilon(1e-6));
      CHECK(s.z(30.0) / s.w(30.0) == doctest::Approx(q / phi).epsilon(1e-6));
    }
  }

  TEST_CASE("log domain") {
    const ScaleContext s(LevyModel::brownian(), 2.0);
    CHECK(s.log_w(1.0) == doctest::Approx(std::log(s.w(1.0))).epsilon(1e-14));
    CHECK(std::isinf(s.log_w(0.0)));
    CHECK(s.log_z(-1.0) == 0.0);
    // W overflows a double here; the log stays finite
    CHECK(s.log_w(400.0) == doctest::Approx(2.0 * 400.0 + std::log(0.5)).epsilon(1e-12));
    CHECK_THROWS(s.w(400.0));
    const ScaleContext j(LevyModel::exp_jumps(1.0, 0.0, 1.0, 1.0), 1.0);
    CHECK(j.log_w(3.0) == doctest::Approx(std::log(j.w(3.0))).epsilon(1e-13));
    CHECK(j.log_z(3.0) == doctest::Approx(std::log(j.z(3.0))).epsilon(1e-13));
  }

  TEST_CASE("argument checks") {
    CHECK_THROWS_AS(ScaleContext(LevyModel::brownian(), -0.1), DomainError);
    CHECK_THROWS_AS(ScaleContext(LevyModel::brownian(), 0.1, NumericInversion{2}), DomainError);
    CHECK(ScaleContext(LevyModel::brownian(), 0.1).with_q(0.5).w(1.0) == doctest::Approx(2.0 * std::sinh(1.0)));
  }
}
