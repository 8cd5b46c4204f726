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
#include "snlt/law_registry.hpp"

using namespace snlt;

namespace {

Params params(std::initializer_list<const char*> kv) {
  Params p;
  for (const char* s : kv) p.set(s);
  return p;
}

double value(const Table& t, std::size_t row = 0, std::size_t col = 0) { return t.rows.at(row).at(col); }

}  // namespace

TEST_SUITE("registry") {
  TEST_CASE("parameter parsing") {
    Params p = params({"a=1.5", "levels=0.5,1,1.5"});
    CHECK(p.number("a") == 1.5);
    CHECK(p.number("b", 7.0) == 7.0);
    CHECK(p.list("levels") == std::vector<double>{0.5, 1.0, 1.5});
    CHECK_THROWS_AS(p.set("novalue"), ParseError);
    CHECK_THROWS_AS(p.number("missing"), ParseError);
    p.set("bad", "1.0x");
    CHECK_THROWS_AS(p.number("bad"), ParseError);
    CHECK_THROWS_AS(p.require_only({"a", "levels"}), ParseError);
  }

  TEST_CASE("every listed law is reachable") {
    CHECK(law_list().size() >= 20);
    for (const auto& info : law_list()) CHECK_FALSE(info.summary.empty());
    CHECK_THROWS_AS(evaluate_law("no_such_law", LevyModel::brownian(), {}), ParseError);
    CHECK_THROWS_AS(evaluate_law("lt_exit_up", LevyModel::brownian(), params({"a=1", "b=2", "c=0", "zz=1"})),
                    ParseError);
    CHECK_THROWS_AS(evaluate_law("lt_exit_up", LevyModel::brownian(), params({"a=3", "b=2", "c=0"})), DomainError);
  }

  // standard Brownian motion: W(x) = 2x, hitting probabilities are linear
  TEST_CASE("Brownian corridor values") {
    const LevyModel bm = LevyModel::brownian();
    const double p_up = evaluate_law("lt_exit_up", bm, params({"a=1", "b=2", "c=0", "x=1.5", "p=1"})).rows[0][0];
    // reach 2 before 1, or reach 1 and then survive local-time killing with g(1,1) = 1
    CHECK(p_up == doctest::Approx(0.5 + 0.5 * 0.5 / 2.0).epsilon(1e-12));
    const Table atom = evaluate_law("lt_atom_exp", bm, params({"a=1", "b=2", "c=0", "x=1.5"}));
    CHECK(value(atom, 0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(value(atom, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(value(evaluate_law("potential_density", bm, params({"b=2", "c=0", "x=0.5", "y=1"}))) ==
          doctest::Approx(2.0 * 0.5 * 1.0 / 2.0).epsilon(1e-12));
    const Table gs = evaluate_law("gen_scale", bm, params({"x=1", "y=0", "levels=0.5", "weights=1"}));
    for (double v : gs.rows[0]) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
    // numeric inversion route agrees with the closed form
    const double num =
        evaluate_law("lt_exit_up", bm, params({"q=0.5", "nodes=32", "a=1", "b=2", "c=0", "x=1.5", "p=1"})).rows[0][0];
    const double exact =
        evaluate_law("lt_exit_up", bm, params({"q=0.5", "a=1", "b=2", "c=0", "x=1.5", "p=1"})).rows[0][0];
    CHECK(num == doctest::Approx(exact).epsilon(1e-8));
  }

  TEST_CASE("loop soup at level zero") {
    const Table t = evaluate_law("loop_soup_functional", LevyModel::brownian(),
                                 params({"b=2", "c=0", "levels=1", "weights=1"}));
    REQUIRE(t.columns.back() == "gap");
    for (std::size_t k = 0; k + 1 < t.columns.size(); ++k) CHECK(t.rows[0][k] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(std::abs(t.rows[0].back()) < 1e-12);
  }

  TEST_CASE("monte carlo verification table") {
    const auto ids = mc_law_ids();
    CHECK(std::find(ids.begin(), ids.end(), "lt_exit_up") != ids.end());
    const Table t = mc_verify("lt_exit_up", LevyModel::brownian(),
                              params({"a=1", "b=2", "c=0", "x=1.5", "p=1", "n_paths=4000", "dt=1e-3", "seed=5"}));
    REQUIRE(t.columns.size() == 4);
    CHECK(t.rows[0][0] == doctest::Approx(0.625));
    CHECK(std::abs(t.rows[0][3]) < 4.0);
    CHECK_THROWS_AS(mc_verify("gen_scale", LevyModel::brownian(), params({})), ParseError);
  }
}
