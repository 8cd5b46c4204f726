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

#include <doctest.h>

#include "snlt/error.hpp"
#include "snlt/levy_model.hpp"

using namespace snlt;

namespace {

// Plain bisection for the largest root of psi(s) = q.
double bisect_phi(const LevyModel& m, double q) {
  double lo = 0.0, hi = 1.0;
  while (m.psi(hi) < q) hi *= 2.0;
  // for q = 0 the root may be 0 or strictly positive; start above the minimum
  if (q == 0.0) {
    double s = 0.0;
    while (s < hi && m.psi_prime(s) < 0.0) s += 1e-3;
    lo = s;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (m.psi(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("levy_model") {
  TEST_CASE("psi closed forms") {
    CHECK(LevyModel::brownian().psi(1.0) == doctest::Approx(0.5));
    CHECK(LevyModel::brownian(1.0).psi(2.0) == doctest::Approx(4.0));
    CHECK(LevyModel::exp_jumps(1.0, 0.0, 1.0, 1.0).psi(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(LevyModel::brownian().psi(-0.1), DomainError);
  }

  TEST_CASE("psi derivatives against finite differences") {
    const LevyModel m = LevyModel::exp_jumps(0.8, 0.3, 2.0, 0.4);
    for (double th : {0.1, 0.7, 2.5}) {
      const double h = 1e-5;
      CHECK(m.psi_prime(th) == doctest::Approx((m.psi(th + h) - m.psi(th - h)) / (2 * h)).epsilon(1e-8));
      CHECK(m.psi_second(th) == doctest::Approx((m.psi_prime(th + h) - m.psi_prime(th - h)) / (2 * h)).epsilon(1e-7));
    }
  }

  TEST_CASE("complex psi agrees on the real axis") {
    const LevyModel m = LevyModel::exp_jumps(1.0, 0.5, 1.5, 0.7);
    const auto z = m.psi(std::complex<long double>(1.3L, 0.0L));
    CHECK(static_cast<double>(z.real()) == doctest::Approx(m.psi(1.3)).epsilon(1e-14));
    CHECK(std::abs(static_cast<double>(z.imag())) < 1e-15);
  }

  TEST_CASE("right inverse") {
    const PhiSolve b = phi_inverse(LevyModel::brownian(), 0.5);
    CHECK(b.phi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.phi_prime == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi_inverse(LevyModel::brownian(1.0), 1.5).phi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi_inverse(LevyModel::brownian(1.0), 0.0).phi == 0.0);
    // drifting to -infinity: Phi(0) > 0
    CHECK(phi_inverse(LevyModel::brownian(-1.0), 0.0).phi == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(phi_inverse(LevyModel::brownian(), 0.0).phi_prime_infinite());
    const LevyModel m = LevyModel::exp_jumps(0.6, 0.2, 3.0, 0.5);
    for (double q : {0.0, 0.1, 1.0, 7.0}) {
      const PhiSolve s = phi_inverse(m, q);
      CHECK(s.phi == doctest::Approx(bisect_phi(m, q)).epsilon(1e-10));
      CHECK(std::abs(m.psi(s.phi) - q) < 1e-11);
    }
    CHECK_THROWS_AS(phi_inverse(m, -1.0), DomainError);
  }

  TEST_CASE("model validation and json") {
    CHECK_THROWS_AS(LevyModel(-1.0, 0.0), InvalidModelError);
    CHECK_THROWS_AS(LevyModel::exp_jumps(1.0, 0.0, -1.0, 1.0), InvalidModelError);
    CHECK_THROWS_AS(LevyModel::exp_jumps(1.0, 0.0, 1.0, 0.0), InvalidModelError);
    const LevyModel m = LevyModel::exp_jumps(0.9, -0.2, 1.25, 0.75);
    const LevyModel r = model_from_json(model_to_json(m));
    CHECK(r.sigma() == m.sigma());
    CHECK(r.gamma() == m.gamma());
    CHECK(r.psi(1.7) == m.psi(1.7));
    CHECK(model_from_json(R"({"sigma": 1})").psi(2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(model_from_json("{"), ParseError);
    CHECK_THROWS_AS(model_from_json(R"({"sigma": 1, "drift": 2})"), ParseError);
    CHECK_THROWS_AS(model_from_json(R"({"sigma": 1, "jump_kind": "exp"})"), ParseError);
    CHECK_THROWS_AS(model_from_json(R"({"sigma": "1"})"), ParseError);
    CHECK_THROWS_AS(model_from_json(R"({"gamma": 1})"), ParseError);
  }
}
