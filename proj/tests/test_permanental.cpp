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
#include <random>

#include <doctest.h>

#include "snlt/error.hpp"
#include "snlt/permanental.hpp"

using namespace snlt;

TEST_SUITE("permanental_loops") {
  const ScaleContext bm0(LevyModel::brownian(), 0.0);

  TEST_CASE("potential kernel") {
    const PotentialKernel k(bm0, 2.0, 0.0);
    CHECK(k(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k(1e-12, 1.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(k(0.5, 1.5) == doctest::Approx(0.5 * 0.5 * 2.0 / 4.0 * 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(k(2.5, 1.0), DomainError);
    const ScaleContext j(LevyModel::exp_jumps(1.0, 0.2, 1.0, 0.5), 0.3);
    const PotentialKernel kj(j, 1.0, -1.0);
    for (double x : {-0.5, 0.1, 0.8}) {
      for (double y : {-0.7, 0.3}) {
        CHECK(kj(x, y) >= 0.0);
        CHECK(kj(x, y) == doctest::Approx(potential_density(j, 1.0, -1.0, x, y)));
      }
    }
    CHECK(kj.matrix({-0.5, 0.5}).rows() == 2);
  }

  TEST_CASE("Laplace transform of the permanental vector") {
    const PotentialKernel k(bm0, 2.0, 0.0);
    CHECK(permanental_laplace(k, LevelWeights::single(1.0, 1.0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(permanental_laplace(k, LevelWeights({0.5, 1.5}, {0.0, 0.0})) == 1.0);
    CHECK(permanental_laplace(k, LevelWeights::single(1.0, 1.0), 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("tilted transform routes") {
    const PotentialKernel k(bm0, 2.0, 0.0);
    const TiltedTransform t = tilted_lt_transform(k, 1.0, LevelWeights::single(0.5, 1.0));
    CHECK(t.scale_route == doctest::Approx(t.determinant_route).epsilon(1e-10));
    const TiltedTransform z = tilted_lt_transform(k, 1.0, LevelWeights({0.5, 1.2}, {0.0, 0.0}));
    CHECK(z.scale_route == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(z.determinant_route == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("determinant identities") {
    const PotentialKernel k(bm0, 2.0, 0.0);
    const IsomorphismCheck one = isomorphism_check(k, 0.5, LevelWeights::single(1.0, 1.0));
    CHECK(one.lhs_det == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(one.rhs_det == doctest::Approx(2.0).epsilon(1e-14));
    const IsomorphismCheck zero = isomorphism_check(k, 0.5, LevelWeights({0.3, 1.1}, {0.0, 0.0}));
    CHECK(zero.lhs_det == doctest::Approx(1.0));
    CHECK(zero.rhs_det == doctest::Approx(1.0));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const PotentialKernel kk(ScaleContext(LevyModel::exp_jumps(1.0, u(rng), 1.0 + u(rng), 0.5), u(rng)), 1.0, -1.0);
      const LevelWeights lw({-0.6 + 0.1 * u(rng), 0.1 * u(rng), 0.6 + 0.1 * u(rng)}, {u(rng), 2 * u(rng), 3 * u(rng)});
      CHECK(isomorphism_check(kk, -0.2, lw).abs_gap < 1e-9);
    }
  }

  TEST_CASE("loop soup functional") {
    const PotentialKernel k(bm0, 2.0, 0.0);
    const LoopSoup s = loop_soup_functional(k, LevelWeights::single(1.0, 1.0));
    CHECK(s.value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(loop_soup_functional(k, LevelWeights({0.5, 1.5}, {0.0, 0.0})).value == doctest::Approx(0.0));
    // heavier killing shrinks the functional towards 0
    double prev = HUGE_VAL;
    for (double q : {0.0, 1.0, 10.0, 100.0, 1e4}) {
      const PotentialKernel kq(ScaleContext(LevyModel::brownian(), q), 2.0, 0.0);
      const double v = loop_soup_functional(kq, LevelWeights({0.5, 1.5}, {1.0, 2.0})).value;
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 0.03);
  }

  TEST_CASE("log-derivative identity") {
    const LogDerivCheck r = logderiv_identity_check(bm0, 1.0, 0.0);
    CHECK(r.lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(r.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const LogDerivCheck h = logderiv_identity_check(ScaleContext(LevyModel::brownian(), 0.5), 2.0, 0.0);
    CHECK(h.gap < 1e-6);
    const LogDerivCheck s = logderiv_identity_check(bm0, 1e-4, 0.0);
    CHECK(std::abs(s.lhs) < 1e-7);
    CHECK(std::abs(s.rhs) < 1e-7);
  }
}
