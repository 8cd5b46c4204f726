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
#include "snlt/gen_scale.hpp"

using namespace snlt;

TEST_SUITE("gen_scale") {
  const ScaleContext bm0(LevyModel::brownian(), 0.0);

  TEST_CASE("hand values, standard Brownian q = 0") {
    const LevelWeights one = LevelWeights::single(1.0, 1.0);
    CHECK(gen_w_recursive(one, bm0, 1.5, 0.0) == doctest::Approx(5.0).epsilon(1e-15));
    const LevelWeights two({1.0, 2.0}, {1.0, 1.0});
    CHECK(gen_w_recursive(two, bm0, 3.0, 0.0) == doctest::Approx(30.0).epsilon(1e-15));
    CHECK(gen_w_det(two, bm0, 3.0, 0.0) == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(gen_w(two, bm0, 3.0, 0.0) == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(gen_w(two, bm0, 2.5, 0.0) == doctest::Approx(19.0).epsilon(1e-14));
    const Eigen::VectorXd v = gen_w_linear_system(two, bm0, 0.0);
    CHECK(v(0) == doctest::Approx(2.0));
    CHECK(v(1) == doctest::Approx(8.0));
    CHECK(gen_w_linear_system(two, bm0, 2.5).norm() == 0.0);
    const GenScaleMatrices mats = gen_scale_matrices(two, bm0, 3.0, 0.0);
    CHECK(mats.Sigma.rows() == 2);
  }

  TEST_CASE("Z with one level equals e^2") {
    const ScaleContext s(LevyModel::brownian(), 0.5);
    const LevelWeights one = LevelWeights::single(1.0, 1.0);
    const double expect = std::cosh(2.0) + 2.0 * std::sinh(1.0) * std::cosh(1.0);
    CHECK(expect == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(gen_z_recursive(one, s, 2.0, 0.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(gen_z_det(one, s, 2.0, 0.0) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(gen_z(one, s, 2.0, 0.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(gen_z(one, s, 0.5, 0.0) == doctest::Approx(std::cosh(0.5)).epsilon(1e-14));
    CHECK(gen_z(one, s, -0.2, 0.0) == 1.0);
    CHECK_THROWS_AS(gen_z(one, s, 2.0, 1.0), DomainError);
  }

  TEST_CASE("zero weights collapse to W and Z") {
    const ScaleContext s(LevyModel::exp_jumps(1.0, 0.3, 1.0, 0.5), 0.4);
    const LevelWeights z({0.3, 0.9, 1.4}, {0.0, 0.0, 0.0});
    CHECK(z.all_zero());
    CHECK(gen_w(z, s, 2.0, 0.1) == doctest::Approx(s.w(1.9)).epsilon(1e-15));
    CHECK(gen_w_det(z, s, 2.0, 0.1) == doctest::Approx(s.w(1.9)).epsilon(1e-14));
    CHECK(gen_z_recursive(z, s, 2.0, 0.1) == doctest::Approx(s.z(1.9)).epsilon(1e-15));
  }

  TEST_CASE("single level matches W + p W W") {
    const ScaleContext s(LevyModel::exp_jumps(0.8, 0.1, 2.0, 0.3), 1.1);
    const LevelWeights lw = LevelWeights::single(0.7, 2.5);
    for (double x : {0.5, 1.0, 3.0}) {
      CHECK(gen_w(lw, s, x, 0.0) == doctest::Approx(s.w(x) + 2.5 * s.w(x - 0.7) * s.w(0.7)).epsilon(1e-13));
    }
  }

  TEST_CASE("recursion, determinant and linear system agree") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
      std::vector<double> lv, wt;
      for (std::size_t i = 0; i < n; ++i) {
        lv.push_back(0.1 + 2.8 * (static_cast<double>(i) + 0.1 + 0.8 * u(rng)) / static_cast<double>(n));
        wt.push_back(3.0 * u(rng));
      }
      const LevelWeights lw(lv, wt);
      const ScaleContext s(LevyModel::brownian(u(rng) - 0.5), 2.0 * u(rng));
      const double r = gen_w_recursive(lw, s, 3.0, 0.0);
      CHECK(gen_w_det(lw, s, 3.0, 0.0) == doctest::Approx(r).epsilon(1e-11));
      CHECK(gen_w(lw, s, 3.0, 0.0) == doctest::Approx(r).epsilon(1e-11));
      CHECK(std::exp(gen_log_w(lw, s, 3.0, 0.0)) == doctest::Approx(r).epsilon(1e-12));
      CHECK(std::exp(gen_log_z(lw, s, 3.0, 0.0)) == doctest::Approx(gen_z(lw, s, 3.0, 0.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("far arguments stay finite in the log domain") {
    const ScaleContext s(LevyModel::brownian(), 2.0);
    const LevelWeights lw({0.0, 1.0}, {1.0, 2.0});
    const double lg = gen_log_w(lw, s, 500.0, -500.0);
    CHECK(std::isfinite(lg));
    CHECK(lg > 1000.0);
  }

  TEST_CASE("level validation") {
    CHECK_THROWS_AS(LevelWeights({}, {}), DomainError);
    CHECK_THROWS_AS(LevelWeights({1.0, 0.5}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(LevelWeights({1.0, 1.0 + 1e-14}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(LevelWeights({1.0}, {-1.0}), DomainError);
    CHECK_THROWS_AS(LevelWeights({1.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(LevelWeights(std::vector<double>(65, 0.0), std::vector<double>(65, 0.0)), DomainError);
  }
}
