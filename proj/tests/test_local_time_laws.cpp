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
#include "snlt/local_time_laws.hpp"

using namespace snlt;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

Corridor cor(double c, double b, double x, double a, double p = 0.0) { return {c, b, x, a, p, std::nullopt}; }

// Killed potential density of the classical two-sided exit problem.
double u(const ScaleContext& s, double c, double b, double x, double y) {
  return s.w(x - c) * s.w(b - y) / s.w(b - c) - s.w(x - y);
}

}  // namespace

TEST_SUITE("local_time_laws") {
  const ScaleContext bm0(LevyModel::brownian(), 0.0);
  const ScaleContext bmh(LevyModel::brownian(), 0.5);
  const ScaleContext jmp(LevyModel::exp_jumps(1.0, 0.4, 1.5, 0.6), 0.8);

  TEST_CASE("exit up and down") {
    CHECK(lt_exit_up(bm0, cor(0, 2, 1.5, 1, 1)) == doctest::Approx(0.625).epsilon(1e-14));
    CHECK(lt_exit_up(bm0, cor(0, 2, 2, 1, 1)) == 1.0);
    CHECK(lt_exit_down(bm0, cor(0, 2, 2, 1, 1)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lt_exit_up(jmp, cor(0, 2, 1.3, 1, 0)) == doctest::Approx(jmp.w(1.3) / jmp.w(2.0)).epsilon(1e-13));
    CHECK(lt_exit_down(bm0, cor(0, 2, 1.3, 1, 0)) == doctest::Approx(1.0 - 1.3 / 2.0).epsilon(1e-14));
    // From a, the local time at exit is exponential and independent of the exit side.
    for (const ScaleContext* s : {&bmh, &jmp}) {
      const double c = -0.5, b = 1.5, a = 0.4, p = 1.7;
      const double g = u(*s, c, b, a, a);
      const double up0 = s->w(a - c) / s->w(b - c);
      const double down0 = s->z(a - c) - s->w(a - c) * s->z(b - c) / s->w(b - c);
      CHECK(lt_exit_up(*s, cor(c, b, a, a, p)) == doctest::Approx(up0 / (1 + p * g)).epsilon(1e-12));
      CHECK(lt_exit_down(*s, cor(c, b, a, a, p)) == doctest::Approx(down0 / (1 + p * g)).epsilon(1e-12));
    }
  }

  TEST_CASE("resolvent") {
    const double c = 0.0, b = 2.0, a = 1.0;
    CHECK(lt_resolvent(bmh, cor(c, b, 1.3, a, 0.0), 0.7) == doctest::Approx(u(bmh, c, b, 1.3, 0.7)).epsilon(1e-13));
    CHECK(lt_resolvent(bmh, cor(c, b, 0.0, a, 1.0), 0.7) == doctest::Approx(0.0).epsilon(1e-14));
    for (double p : {0.5, 3.0}) {
      for (double x : {0.4, 1.0, 1.6}) {
        for (double y : {0.3, 1.2}) {
          const double expect = u(jmp, c, b, x, y) - p * u(jmp, c, b, x, a) * u(jmp, c, b, a, y) / (1 + p * u(jmp, c, b, a, a));
          CHECK(lt_resolvent(jmp, cor(c, b, x, a, p), y) == doctest::Approx(expect).epsilon(1e-11));
        }
      }
    }
    double prev = lt_resolvent(bmh, cor(c, b, 1.2, a, 0.0), a);
    for (double p : {1.0, 10.0, 1e3, 1e6}) {
      const double v = lt_resolvent(bmh, cor(c, b, 1.2, a, p), a);
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-5);
    CHECK_THROWS_AS(lt_resolvent(bmh, cor(c, b, 1.2, a, 1.0), 2.5), DomainError);
  }

  TEST_CASE("atom and exponential law at the upper exit") {
    const AtomExpLaw law = lt_atom_exp(bm0, cor(0, 2, 1.5, 1));
    CHECK(law.atom == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(law.rate == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lt_atom_exp(bm0, cor(0, 2, 0.8, 1)).atom == 0.0);
    const double mu1 = lt_atom_exp(ScaleContext(LevyModel::brownian(1.0), 0.0), cor(0, 2, 1.5, 1)).rate;
    CHECK(mu1 == doctest::Approx(0.5 * std::sinh(2.0) / (std::sinh(1.0) * std::sinh(1.0))).epsilon(1e-12));
    CHECK(mu1 == doctest::Approx(1.3130353).epsilon(1e-7));
    CHECK_THROWS_AS(lt_atom_exp(bmh, cor(0, 2, 1.5, 1)), DomainError);
    CHECK_THROWS_AS(lt_atom_exp(bm0, cor(0, 2, 0.0, 1)), DomainError);
  }

  TEST_CASE("hitting transform") {
    CHECK(hitting_transform(bm0, cor(0, 2, 1.5, 1)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(hitting_transform(bm0, cor(0, 2, 1, 1)) == 1.0);
    CHECK(hitting_transform(bmh, cor(0, 2, 2, 1)) == doctest::Approx(0.0).epsilon(1e-14));
    const double r = 1.0;  // sqrt(2q)
    for (double x : {0.3, 0.9, 1.4, 1.9}) {
      const double expect = x > 1.0 ? std::sinh(r * (2.0 - x)) / std::sinh(r) : std::sinh(r * x) / std::sinh(r);
      CHECK(hitting_transform(bmh, cor(0, 2, x, 1)) == doctest::Approx(expect).epsilon(1e-13));
    }
  }

  TEST_CASE("exponential killing") {
    CHECK(lt_exp_killed_transform(bmh, cor(0, 2, 1, 1, 1)) == doctest::Approx(0.567666).epsilon(1e-5));
    CHECK(lt_exp_killed_transform(bmh, cor(0, 2, 1, 1, 0)) == doctest::Approx(1.0).epsilon(1e-14));
    double prev = 1.0;
    for (double p : {0.1, 1.0, 10.0, 1e4}) {
      const double v = lt_exp_killed_transform(jmp, cor(-1, 1, 0, 0, p));
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(lt_exp_killed_transform(bmh, cor(0, 2, 1.5, 1, 1)), DomainError);
    const double at_a = lt_exp_killed_transform(bmh, cor(0, 2, 1, 1, 1));
    const double h = hitting_transform(bmh, cor(0, 2, 1.5, 1));
    CHECK(strong_markov_compose(bmh, cor(0, 2, 1.5, 1, 1), at_a) == doctest::Approx(1 - h + h * at_a).epsilon(1e-14));
  }

  TEST_CASE("decomposition at a") {
    const UbDecomposition d = ub_decomposition(bmh, cor(0, 2, 1, 1, 1));
    CHECK(d.total == doctest::Approx(d.up + d.down + d.killed).epsilon(1e-14));
    CHECK(d.total == doctest::Approx(lt_exp_killed_transform(bmh, cor(0, 2, 1, 1, 1))).epsilon(1e-13));
    const double s = 0.5;
    CHECK(d.killed_prefactor ==
          doctest::Approx(s * std::sinh(2 * s) / (std::cosh(s) * std::cosh(s))).epsilon(1e-12));
    const UbDecomposition j = ub_decomposition(jmp, cor(-1, 1.5, 0.2, 0.2, 2.0));
    CHECK(j.total == doctest::Approx(lt_exp_killed_transform(jmp, cor(-1, 1.5, 0.2, 0.2, 2.0))).epsilon(1e-12));
  }

  TEST_CASE("joint law of the killed position and local time") {
    const ExpJoint e = lt_exp_joint(bmh, cor(0, 2, 1, 1), 1.0);
    CHECK(e.space_density == doctest::Approx(0.5 * std::tanh(1.0)).epsilon(1e-13));
    CHECK(e.time_rate == doctest::Approx(1.313035).epsilon(1e-6));
    CHECK(lt_exp_joint(bmh, cor(0, 2, 1, 1), 2.0 - 1e-9).space_density == doctest::Approx(0.0).epsilon(1e-8));
    // integrate the killed mass and add the exit pieces
    for (const ScaleContext* s : {&bmh, &jmp}) {
      const double c = -0.3, b = 1.7, a = 0.5, p = 0.9;
      const double mass = simpson([&](double y) { return lt_exp_joint(*s, cor(c, b, a, a), y).space_density; },
                                  c + 1e-12, b - 1e-12, 4000);
      const double r = lt_exp_joint(*s, cor(c, b, a, a), 0.0).time_rate;
      const UbDecomposition d = ub_decomposition(*s, cor(c, b, a, a, p));
      CHECK(mass * r / (r + p) + d.up + d.down == doctest::Approx(d.total).epsilon(1e-9));
    }
  }

  TEST_CASE("limits") {
    LimitValue v = lt_limit(bmh, LimitKind::ExpTime, 0.0, 0.0, 1.0);
    CHECK(v.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(v.convention);
    v = lt_limit(bmh, LimitKind::Up, 0.0, 1.3, 0.0);
    CHECK(v.value == doctest::Approx(std::exp(-1.3)).epsilon(1e-14));
    const double up_far = lt_exit_up(bmh, cor(-1e3, 1.0, 0.0, 0.0, 1.0));
    CHECK(up_far == doctest::Approx(lt_limit(bmh, LimitKind::Up, 0.0, 1.0, 1.0).value).epsilon(1e-8));
    const double down_far = lt_exit_down(bmh, cor(-1.0, 1e3, 0.0, 0.0, 1.0));
    CHECK(down_far == doctest::Approx(lt_limit(bmh, LimitKind::Down, 0.0, -1.0, 1.0).value).epsilon(1e-8));
    v = lt_limit(bm0, LimitKind::ExpTime, 0.0, 0.0, 1.0);
    CHECK(v.value == 0.0);
    CHECK(v.convention);
    CHECK_FALSE(v.note.empty());
    // drifting up: q/Phi(q) -> psi'(0) at q = 0
    const ScaleContext up(LevyModel::brownian(0.7), 0.0);
    v = lt_limit(up, LimitKind::Down, 0.0, -1.0, 0.0);
    CHECK(v.convention);
    CHECK(v.value == doctest::Approx(1.0 - 0.7 * up.w(1.0)).epsilon(1e-13));
  }

  TEST_CASE("several levels") {
    Corridor c2{0.0, 3.0, 2.5, 1.5, 0.0, LevelWeights({1.0, 2.0}, {1.0, 1.0})};
    CHECK(joint_lt_exit_up(bm0, c2) == doctest::Approx(19.0 / 30.0).epsilon(1e-14));
    Corridor c1{0.0, 2.0, 1.5, 1.0, 0.0, LevelWeights::single(1.0, 1.0)};
    CHECK(joint_lt_exit_up(bm0, c1) == doctest::Approx(0.625).epsilon(1e-14));
    Corridor z{0.0, 3.0, 1.2, 1.5, 0.0, LevelWeights({1.0, 2.0}, {0.0, 0.0})};
    CHECK(joint_lt_exit_up(bmh, z) == doctest::Approx(bmh.w(1.2) / bmh.w(3.0)).epsilon(1e-13));
    CHECK(joint_lt_exit_down(bmh, z) ==
          doctest::Approx(bmh.z(1.2) - bmh.w(1.2) * bmh.z(3.0) / bmh.w(3.0)).epsilon(1e-13));
    CHECK(joint_lt_resolvent(bmh, z, 0.4) == doctest::Approx(u(bmh, 0.0, 3.0, 1.2, 0.4)).epsilon(1e-13));
    Corridor none{0.0, 3.0, 1.2, 1.5, 0.0, std::nullopt};
    CHECK_THROWS_AS(joint_lt_exit_up(bm0, none), DomainError);
  }

  TEST_CASE("inverse local time") {
    CHECK(inv_lt_survival(bm0, cor(0, 2, 1, 1), 0.0).value == 1.0);
    CHECK(inv_lt_survival(bm0, cor(0, 2, 1, 1), 1.0).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(inv_lt_survival(bmh, cor(-40, 40, 0, 0), 1.0).rate == doctest::Approx(1.0).epsilon(1e-12));
    Corridor two{-2.0, 2.0, 0.0, 0.0, 0.0, LevelWeights({-1.0, 1.0}, {1.0, 1.0})};
    CHECK(inv_lt_joint_transform(bm0, two, 1.0) == doctest::Approx(std::exp(-0.75)).epsilon(1e-14));
    Corridor zero = two;
    zero.levels = LevelWeights({-1.0, 1.0}, {0.0, 0.0});
    CHECK(inv_lt_joint_transform(bm0, zero, 0.7) == doctest::Approx(inv_lt_survival(bm0, cor(-2, 2, 0, 0), 0.7).value));
    // corridor receding: rate -> p/(1+2pu) + p/(1+2p|v|) = 2/3
    Corridor wide{-1e7, 1e7, 0.0, 0.0, 0.0, LevelWeights({-1.0, 1.0}, {1.0, 1.0})};
    CHECK(inv_lt_joint_rate(bm0, wide) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    const OmegaGrid g = solve_omega(ScaleContext(LevyModel::brownian(), 0.0), WeightFunction::constant(0.5), 0.0, 2.0, 1e-3);
    CHECK(occu_inv_lt_transform(g, 1.0, 0.8) == doctest::Approx(inv_lt_survival(bmh, cor(0, 2, 1, 1), 0.8).value).epsilon(1e-5));
    const OmegaGrid g0 = solve_omega(ScaleContext(LevyModel::brownian(), 0.0), WeightFunction::constant(0.0), 0.0, 2.0, 0.1);
    CHECK(occu_inv_lt_transform(g0, 1.0, 0.0) == 1.0);
  }

  TEST_CASE("geometry checks") {
    CHECK_THROWS_AS(lt_exit_up(bm0, cor(0, 2, 1, 3)), DomainError);
    CHECK_THROWS_AS(lt_exit_up(bm0, cor(2, 0, 1, 1)), DomainError);
    CHECK_THROWS_AS(lt_exit_up(bm0, cor(0, 2, 3, 1)), DomainError);
    CHECK_THROWS_AS(lt_exit_up(bm0, cor(0, 2, 1, 1, -1)), DomainError);
  }
}
