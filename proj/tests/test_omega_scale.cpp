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
#include "snlt/omega_scale.hpp"

using namespace snlt;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (b <= a) return 0.0;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double w_bm(double q, double x) {
  if (x <= 0.0) return 0.0;
  if (q == 0.0) return 2.0 * x;
  return std::sqrt(2.0 / q) * std::sinh(std::sqrt(2.0 * q) * x);
}

// Two-switch function built from its convolution definitions: weight p below
// a, q on (a, a2), p above a2.
double two_switch(double p, double q, double a, double a2, double x) {
  auto one_switch = [&](double z) {
    return w_bm(q, z) + (p - q) * simpson([&](double u) { return w_bm(q, z - u) * w_bm(p, u); }, 0.0, std::min(a, z), 400);
  };
  if (x <= a2) return one_switch(x);
  return one_switch(x) + (p - q) * simpson([&](double z) { return w_bm(p, x - z) * one_switch(z); }, a2, x, 400);
}

}  // namespace

TEST_SUITE("omega_scale") {
  TEST_CASE("weight functions") {
    const WeightFunction s = WeightFunction::step({1.0, 2.0}, {0.5, 3.0, 1.0});
    CHECK(s(0.0) == 0.5);
    CHECK(s(1.5) == 3.0);
    CHECK(s(2.5) == 1.0);
    CHECK(s.integral(0.0, 3.0) == doctest::Approx(0.5 + 3.0 + 1.0));
    CHECK(s.sup(0.0, 1.5) == 3.0);
    const WeightFunction d = WeightFunction::delta_approx(1.0, 2.0, 0.1);
    CHECK(d(1.05) == doctest::Approx(10.0));
    CHECK(d(1.2) == 0.0);
    CHECK(d.integral(0.0, 2.0) == doctest::Approx(2.0));
    const WeightFunction p = WeightFunction::parse("const:0.5+delta:1,2,0.1");
    CHECK(p(1.0) == doctest::Approx(10.5));
    CHECK(p.integral(0.0, 2.0) == doctest::Approx(3.0));
    CHECK(WeightFunction::parse("step:1:0,2")(1.5) == 2.0);
    CHECK(WeightFunction::constant(0.0).is_zero());
    const WeightFunction c = WeightFunction::custom([](double x) { return x * x; }, "square");
    CHECK(c.integral(0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK_THROWS_AS(WeightFunction::parse("cosine:1"), ParseError);
    CHECK_THROWS_AS(WeightFunction::parse("step:1,2:0,1"), ParseError);
    CHECK_THROWS_AS(WeightFunction::constant(-1.0), DomainError);
  }

  TEST_CASE("constant weight reproduces W and Z") {
    const double q = 0.5;
    const OmegaGrid g = solve_w_omega(LevyModel::brownian(), WeightFunction::constant(q), 0.0, 2.0, 1e-3);
    const OmegaGrid gz = solve_z_omega(LevyModel::brownian(), WeightFunction::constant(q), 0.0, 2.0, 1e-3);
    const ScaleContext s(LevyModel::brownian(), q);
    for (double x : {0.5, 1.0, 2.0}) {
      for (double y : {0.0, 0.25}) CHECK(g.w(x, y) == doctest::Approx(s.w(x - y)).epsilon(1e-4));
      CHECK(gz.z(x) == doctest::Approx(s.z(x)).epsilon(1e-4));
    }
    CHECK(gz.z(0.0) == 1.0);
  }

  TEST_CASE("zero weight") {
    const OmegaGrid g = solve_omega(ScaleContext(LevyModel::brownian(), 0.0), WeightFunction::constant(0.0), 0.0, 2.0, 0.05);
    CHECK(g.z(1.3) == 1.0);
    CHECK(g.w(1.5, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("two-switch step weight against the convolution construction") {
    const double p = 0.3, q = 1.7, a = 0.6, a2 = 1.3;
    const WeightFunction omega = WeightFunction::step({a, a2}, {p, q, p});
    const OmegaGrid g = solve_w_omega(LevyModel::brownian(), omega, 0.0, 2.0, 2e-3);
    for (double x : {0.4, 1.0, 1.6, 2.0}) {
      CHECK(g.w(x, 0.0) == doctest::Approx(two_switch(p, q, a, a2, x)).epsilon(2e-5));
    }
  }

  TEST_CASE("dual equation residual") {
    // W(x,y) = W0(x-y) + int_y^x W(x,z) omega(z) W0(z-y) dz
    const WeightFunction omega = WeightFunction::parse("step:0.5,1.2:0.4,2.0,0.8");
    const double h = 2e-3;
    const OmegaGrid g = solve_w_omega(LevyModel::brownian(0.3), omega, 0.0, 2.0, h);
    const ScaleContext w0(LevyModel::brownian(0.3), 0.0);
    const auto& xs = g.mesh();
    double worst = 0.0;
    for (std::size_t i : {200u, 700u, 1000u}) {
      for (std::size_t j : {0u, 100u, 150u}) {
        // cell-exact trapezoid on the y-side unknowns
        double s = 0.0;
        for (std::size_t k = j; k < i; ++k) {
          const double om = omega.integral(xs[k], xs[k + 1]);
          s += 0.5 * om * (g.w_at(i, k) * w0.w(xs[k] - xs[j]) + g.w_at(i, k + 1) * w0.w(xs[k + 1] - xs[j]));
        }
        worst = std::max(worst, std::abs(w0.w(xs[i] - xs[j]) + s - g.w_at(i, j)) / g.w_at(i, j));
      }
    }
    CHECK(worst < 1e-5);
  }

  TEST_CASE("exit laws and resolvent") {
    const OmegaGrid g = solve_w_omega(LevyModel::brownian(), WeightFunction::constant(0.5), 0.0, 2.0, 1e-3);
    const OmegaGrid gz = solve_omega(ScaleContext(LevyModel::brownian(), 0.0), WeightFunction::constant(0.5), 0.0, 2.0, 1e-3);
    CHECK(omega_exit_laws(gz, 1.0).up == doctest::Approx(std::sinh(1.0) / std::sinh(2.0)).epsilon(1e-4));
    CHECK(omega_exit_laws(gz, 2.0).up == 1.0);
    CHECK(omega_exit_laws(gz, 2.0).down == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(omega_exit_laws(gz, 0.0).up == 0.0);
    CHECK(omega_exit_laws(gz, 0.0).down == 1.0);
    const OmegaGrid g0 = solve_w_omega(LevyModel::brownian(), WeightFunction::constant(0.0), 0.0, 2.0, 0.01);
    CHECK(omega_resolvent(g0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(omega_resolvent(g0, 0.0, 1.0) == 0.0);
    CHECK(omega_resolvent(g0, 1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
    (void)g;
  }

  TEST_CASE("mesh handling and diagnostics") {
    const OmegaGrid g =
        solve_omega(ScaleContext(LevyModel::brownian(), 0.0), WeightFunction::constant(1.0), 0.0, 1.0, 0.1, {0.333});
    CHECK_NOTHROW(g.index_of(0.333));
    CHECK_THROWS_AS(g.index_of(0.05), DomainError);
    CHECK(g.c() == 0.0);
    CHECK(g.b() == 1.0);
    const OmegaGrid hot =
        solve_w_omega(LevyModel::brownian(), WeightFunction::delta_approx(0.5, 500.0, 0.05), 0.0, 1.0, 0.05);
    CHECK_FALSE(hot.warnings().empty());
    CHECK_THROWS_AS(solve_w_omega(LevyModel::brownian(), WeightFunction::constant(1.0), 1.0, 0.0, 0.1), DomainError);
    CHECK_THROWS_AS(solve_w_omega(LevyModel::brownian(), WeightFunction::constant(1.0), 0.0, 1.0, 0.0), DomainError);
    const std::string csv = g.to_csv();
    CHECK(csv.find("x,y,W") != std::string::npos);
    CHECK(csv.find("x,Z") != std::string::npos);
  }
}
