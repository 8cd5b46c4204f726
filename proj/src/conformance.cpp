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
#include "snlt/conformance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "snlt/error.hpp"
#include "snlt/gen_scale.hpp"
#include "snlt/local_time_laws.hpp"
#include "snlt/mc_oracle.hpp"
#include "snlt/omega_scale.hpp"
#include "snlt/permanental.hpp"
#include "snlt/statistics.hpp"

namespace snlt {

bool Criterion::passed() const {
  if (!error.empty() || gates.empty()) return false;
  if (seconds > time_limit) return false;
  return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.passed(); });
}

namespace {

using Rng = std::mt19937_64;

double uni(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double rel(double u, double v) { return std::abs(u - v) / std::max(std::abs(u), std::abs(v)); }

double spread(std::initializer_list<double> vs) {
  const auto [lo, hi] = std::minmax(vs);
  const double m = std::max(std::abs(lo), std::abs(hi));
  return m == 0.0 ? 0.0 : (hi - lo) / m;
}

/// n sorted levels in (lo, hi), pairwise at least `gap` apart.
std::vector<double> random_levels(Rng& rng, std::size_t n, double lo, double hi, double gap) {
  for (;;) {
    std::vector<double> v(n);
    for (auto& x : v) x = uni(rng, lo + gap, hi - gap);
    std::sort(v.begin(), v.end());
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) ok = ok && v[i] - v[i - 1] > gap;
    if (ok) return v;
  }
}

std::vector<double> random_weights(Rng& rng, std::size_t n, double hi) {
  std::vector<double> w(n);
  for (auto& x : w) x = uni(rng, 0.0, hi);
  return w;
}

LevyModel jump_model() { return LevyModel::exp_jumps(1.0, 1.0, 1.0, 0.5); }

double z_score(const Estimate& e, double analytic) {
  return e.std_error > 0.0 ? std::abs(e.mean - analytic) / e.std_error : HUGE_VAL;
}

// 1: recursion, determinant and linear system.
void three_way(Criterion& cr, const ConformanceOptions& opt) {
  const int per_n = opt.quick ? 20 : 200;
  struct Family {
    const char* name;
    int kind;
    double tol;
  };
  const Family families[] = {{"standard Brownian", 0, 1e-10}, {"linear Brownian", 1, 1e-10}, {"exp jumps by inversion", 2, 1e-6}};
  Rng rng(20240601);
  for (const auto& f : families) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
      for (int k = 0; k < per_n; ++k) {
        const double q = uni(rng, 0.0, 2.0);
        const LevyModel m = f.kind == 0   ? LevyModel::brownian()
                            : f.kind == 1 ? LevyModel::brownian(uni(rng, -1.5, 1.5))
                                          : jump_model();
        const ScaleContext ctx = f.kind == 2 ? ScaleContext(m, q, NumericInversion{32}) : ScaleContext(m, q);
        const double x = uni(rng, 1.0, 3.0);
        const LevelWeights lw(random_levels(rng, n, 0.0, x, 1e-3), random_weights(rng, n, 3.0));
        worst = std::max(worst, spread({gen_w_recursive(lw, ctx, x, 0.0), gen_w_det(lw, ctx, x, 0.0), gen_w(lw, ctx, x, 0.0)}));
        worst = std::max(worst, spread({gen_z_recursive(lw, ctx, x, 0.0), gen_z_det(lw, ctx, x, 0.0), gen_z(lw, ctx, x, 0.0)}));
      }
    }
    cr.gates.push_back({std::string(f.name) + ": max relative spread", worst, f.tol});
  }
}

// 2: ω ≡ q against the closed forms.
void volterra(Criterion& cr, const ConformanceOptions&) {
  struct Case {
    const char* name;
    LevyModel model;
  };
  const Case cases[] = {{"Brownian q=1", LevyModel::brownian()}, {"exp jumps q=1", jump_model()}};
  const double q = 1.0;
  const double hs[] = {4e-3, 2e-3, 1e-3};
  for (const auto& cs : cases) {
    const ScaleContext exact(cs.model, q);
    std::vector<double> err;
    for (double h : hs) {
      const OmegaGrid g = solve_w_omega(cs.model, WeightFunction::constant(q), 0.0, 2.0, h);
      const OmegaGrid gz = solve_z_omega(cs.model, WeightFunction::constant(q), 0.0, 2.0, h);
      const auto& xs = g.mesh();
      double e = 0.0;
      for (std::size_t i = 1; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) e = std::max(e, rel(g.w_at(i, j), exact.w(xs[i] - xs[j])));
        e = std::max(e, rel(gz.z_at(i), exact.z(xs[i])));
      }
      err.push_back(e);
    }
    const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
    cr.gates.push_back({std::string(cs.name) + ": max relative error at h=1e-3", err[2], 1e-4});
    cr.gates.push_back({std::string(cs.name) + ": convergence order", order, 1.9, true});
  }
}

// 3: ω_ε → local-time weight at a.
void delta_limit(Criterion& cr, const ConformanceOptions&) {
  const LevyModel m = LevyModel::brownian();
  const ScaleContext ctx(m, 0.5);
  const double a = 1.0, p = 1.0;
  const double target = gen_w(LevelWeights::single(a, p), ctx, 2.0, 0.0);
  std::vector<double> gaps;
  for (double eps : {0.08, 0.04, 0.02}) {
    const OmegaGrid g =
        solve_omega(ctx, WeightFunction::delta_approx(a, p, eps), 0.0, 2.0, 1e-3, {a - eps, a + eps}, true, false);
    gaps.push_back(std::abs(g.w(2.0, 0.0) - target));
  }
  cr.gates.push_back({"gap ratio eps/2 over eps (monotone)", std::max(gaps[1] / gaps[0], gaps[2] / gaps[1]), 1.0});
  cr.gates.push_back({"empirical order", std::min(std::log2(gaps[0] / gaps[1]), std::log2(gaps[1] / gaps[2])), 0.9, true});
}

// 4: Brownian prefactor and the linear-Brownian rate.
void brownian_examples(Criterion& cr, const ConformanceOptions&) {
  const double q = 0.5, a = 1.0, b = 2.0, c = 0.0;
  const ScaleContext ctx(LevyModel::brownian(), q);
  Corridor cor{c, b, a, a, 1.0, std::nullopt};
  const double pref = ub_decomposition(ctx, cor).killed_prefactor;
  const double s = std::sqrt(q / 2.0);
  const double formula = s * std::sinh(s * (b - c)) / (std::cosh(s * (b - a)) * std::cosh(s * (a - c)));
  cr.gates.push_back({"prefactor vs cosh form", std::abs(pref - formula), 1e-9});
  // 30-digit evaluation of the cosh form.
  cr.gates.push_back({"prefactor vs 0.462117157260010", std::abs(pref - 0.462117157260009759), 1e-9});

  Rng rng(4242);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    double mu = uni(rng, 0.05, 2.0);
    if (k % 2) mu = -mu;
    const double cc = uni(rng, -1.0, 1.0);
    const double aa = cc + uni(rng, 0.2, 2.0);
    const double bb = aa + uni(rng, 0.2, 2.0);
    const double r = lt_exp_rate(ScaleContext(LevyModel::brownian(mu), 0.0), aa, bb, cc);
    const double sinh_form = 0.5 * mu * std::sinh(mu * (bb - cc)) / (std::sinh(mu * (bb - aa)) * std::sinh(mu * (aa - cc)));
    worst = std::max(worst, rel(r, sinh_form));
  }
  cr.gates.push_back({"linear Brownian rate vs sinh form (50 draws)", worst, 1e-12});
}

// 5: determinant identities and the loop-soup routes.
void isomorphism(Criterion& cr, const ConformanceOptions& opt) {
  const int count = opt.quick ? 40 : 200;
  Rng rng(777);
  double worst_iso = 0.0, worst_loop = 0.0;
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
    const int fam = k % 3;
    const LevyModel m = fam == 0 ? LevyModel::brownian() : fam == 1 ? LevyModel::brownian(uni(rng, -1.0, 1.0)) : jump_model();
    const double b = uni(rng, 1.0, 3.0);
    const PotentialKernel kernel(ScaleContext(m, uni(rng, 0.0, 2.0)), b, 0.0);
    const LevelWeights lw(random_levels(rng, n, 0.0, b, 1e-2), random_weights(rng, n, 3.0));
    const double a = uni(rng, 0.01 * b, 0.99 * b);
    worst_iso = std::max(worst_iso, isomorphism_check(kernel, a, lw).abs_gap);
    const LoopSoup ls = loop_soup_functional(kernel, lw, 1.0);
    worst_loop = std::max(worst_loop, ls.gap / std::max(1.0, std::abs(ls.value)));
  }
  cr.gates.push_back({"determinant identities, max relative gap", worst_iso, 1e-9});
  cr.gates.push_back({"loop-soup routes, max gap", worst_loop, 1e-10});
  const PotentialKernel k1(ScaleContext(LevyModel::brownian(), 0.0), 2.0, 0.0);
  const LoopSoup one = loop_soup_functional(k1, LevelWeights::single(1.0, 1.0));
  cr.gates.push_back({"n=1 value vs ln 2", std::abs(one.value - std::log(2.0)), 1e-12});
}

// 6: ∫ g(a,a) da = ∂_λ ln W^(λ+q)(b−c).
void logderiv(Criterion& cr, const ConformanceOptions&) {
  Rng rng(31337);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const LevyModel m = k % 2 ? jump_model() : LevyModel::brownian(uni(rng, -1.0, 1.0));
    const double c = uni(rng, -1.0, 0.0);
    const double b = c + uni(rng, 0.5, 3.0);
    const LogDerivCheck r = logderiv_identity_check(ScaleContext(m, uni(rng, 0.0, 2.0)), b, c);
    worst = std::max(worst, r.gap / std::max(1.0, std::abs(r.rhs)));
  }
  cr.gates.push_back({"random instances, max gap", worst, 1e-6});
  const LogDerivCheck hand = logderiv_identity_check(ScaleContext(LevyModel::brownian(), 0.0), 1.0, 0.0);
  cr.gates.push_back({"lhs vs 1/3", std::abs(hand.lhs - 1.0 / 3.0), 1e-6});
  cr.gates.push_back({"rhs vs 1/3", std::abs(hand.rhs - 1.0 / 3.0), 1e-6});
}

// 7: Monte Carlo suite.
void monte_carlo(Criterion& cr, const ConformanceOptions& opt) {
  McConfig cfg;
  cfg.n_paths = opt.quick ? 20000 : 100000;
  cfg.dt = 1e-4;
  cfg.threads = opt.threads;
  const LevyModel m = LevyModel::brownian();

  {
    const ScaleContext ctx(m, 0.0);
    const Corridor cor{0.0, 2.0, 1.5, 1.0, 1.0, std::nullopt};
    const AtomExpLaw law = lt_atom_exp(ctx, cor);
    const double up = lt_exit_up(ctx, cor);
    cr.gates.push_back({"(a) analytic atom vs 2/3", std::abs(law.atom - 2.0 / 3.0), 1e-12});
    cr.gates.push_back({"(a) analytic rate vs 1", std::abs(law.rate - 1.0), 1e-12});
    cr.gates.push_back({"(b) analytic lt_exit_up vs 0.625", std::abs(up - 0.625), 1e-12});

    const McEnsemble ens = simulate_corridor(m, {0.0, 2.0, 1.5, 0.0, {1.0}, std::nullopt}, cfg);
    Functional atom;
    atom.select = Selector::Up;
    atom.conditional = true;
    atom.filter = [](const PathRecord& r) { return r.local_time[0] == 0.0; };
    cr.gates.push_back({"(a) atom |z|", z_score(empirical_transform(ens, atom), law.atom), 3.0});
    std::vector<double> pos;
    for (const auto& r : ens.records) {
      if (r.exit_kind == ExitKind::Up && r.local_time[0] > 0.0) pos.push_back(r.local_time[0]);
    }
    const MeanError me = mean_error(pos);
    cr.gates.push_back({"(a) mean local time given positive |z|", std::abs(me.mean - 1.0 / law.rate) / me.std_error, 3.0});
    Functional f;
    f.p = {1.0};
    f.select = Selector::Up;
    cr.gates.push_back({"(b) lt_exit_up |z|", z_score(empirical_transform(ens, f), up), 3.0});
  }
  {
    const ScaleContext ctx(m, 0.0);
    Corridor cor{0.0, 3.0, 2.5, 1.5, 0.0, LevelWeights({1.0, 2.0}, {1.0, 1.0})};
    const double v = joint_lt_exit_up(ctx, cor);
    cr.gates.push_back({"(b) analytic two-level value vs 19/30", std::abs(v - 19.0 / 30.0), 1e-12});
    const McEnsemble ens = simulate_corridor(m, {0.0, 3.0, 2.5, 0.0, {1.0, 2.0}, std::nullopt}, cfg);
    Functional f;
    f.p = {1.0, 1.0};
    f.select = Selector::Up;
    cr.gates.push_back({"(b) two-level lt_exit_up |z|", z_score(empirical_transform(ens, f), v), 3.0});
  }
  {
    const double q = 0.5, a = 1.0, b = 2.0, c = 0.0, t = 0.5;
    const ScaleContext ctx(m, q);
    const double r = lt_exp_rate(ctx, a, b, c);
    const McEnsemble ens = simulate_corridor(m, {c, b, a, q, {a}, std::nullopt}, cfg);
    std::vector<double> lt;
    std::vector<double> pos_k, lt_k;
    for (const auto& rec : ens.records) {
      if (rec.exit_kind == ExitKind::HorizonCapped) continue;
      lt.push_back(rec.local_time[0]);
      if (rec.exit_kind == ExitKind::Killed) {
        pos_k.push_back(rec.exit_position);
        lt_k.push_back(rec.local_time[0]);
      }
    }
    const KsResult ks = ks_test(lt, [r](double v) { return v <= 0.0 ? 0.0 : -std::expm1(-r * v); });
    cr.gates.push_back({"(c) KS p-value against the exponential law", ks.p_value, 0.01, true});
    const double rho = pearson_correlation(pos_k, lt_k);
    cr.gates.push_back({"(d) |rho| sqrt(n) for killed paths", std::abs(rho) * std::sqrt(static_cast<double>(pos_k.size())), 3.0});

    const double surv = inv_lt_survival(ctx, {c, b, a, a, 0.0, std::nullopt}, t).value;
    std::vector<double> observed, expected;
    for (ExitKind kind : {ExitKind::Up, ExitKind::Down, ExitKind::Killed}) {
      double n = 0.0, s = 0.0;
      for (const auto& rec : ens.records) {
        if (rec.exit_kind != kind) continue;
        n += 1.0;
        s += rec.local_time[0] > t ? 1.0 : 0.0;
      }
      observed.insert(observed.end(), {s, n - s});
      expected.insert(expected.end(), {n * surv, n * (1.0 - surv)});
    }
    // Six cells with the three group totals fixed: three degrees of freedom.
    const ChiSquareResult chi = chi_square_gof(observed, expected, 2);
    cr.gates.push_back({"(e) chi-square p-value, exit groups vs exp(-rt)", chi.p_value, 0.01, true});
    Functional f;
    f.filter = [t](const PathRecord& rec) { return rec.local_time[0] > t; };
    cr.gates.push_back({"(e) unconditional survival |z|", z_score(empirical_transform(ens, f), surv), 3.0});
  }
}

// 8: far boundaries receding.
void limits(Criterion& cr, const ConformanceOptions&) {
  struct Case {
    const char* name;
    LevyModel model;
    double q, p;
  };
  const Case cases[] = {{"Brownian", LevyModel::brownian(), 0.5, 1.0}, {"exp jumps", jump_model(), 0.5, 0.7}};
  const double a = 0.0;
  for (const auto& cs : cases) {
    const ScaleContext ctx(cs.model, cs.q);
    const double up_lim = lt_limit(ctx, LimitKind::Up, a, a + 1.0, cs.p).value;
    const double down_lim = lt_limit(ctx, LimitKind::Down, a, a - 1.0, cs.p).value;
    const double exp_lim = lt_limit(ctx, LimitKind::ExpTime, a, 0.0, cs.p).value;
    double gu = 0.0, gd = 0.0, ge = 0.0;
    for (double far : {5.0, 10.0, 20.0, 40.0}) {
      gu = std::abs(lt_exit_up(ctx, {a - far, a + 1.0, a, a, cs.p, std::nullopt}) - up_lim);
      gd = std::abs(lt_exit_down(ctx, {a - 1.0, a + far, a, a, cs.p, std::nullopt}) - down_lim);
      ge = std::abs(lt_exp_killed_transform(ctx, {a - far, a + far, a, a, cs.p, std::nullopt}) - exp_lim);
    }
    cr.gates.push_back({std::string(cs.name) + ": up transform gap", gu, 1e-8});
    cr.gates.push_back({std::string(cs.name) + ": down transform gap", gd, 1e-8});
    cr.gates.push_back({std::string(cs.name) + ": exponential-time transform gap", ge, 1e-8});
  }
  const double half = lt_limit(ScaleContext(LevyModel::brownian(), 0.5), LimitKind::ExpTime, 0.0, 0.0, 1.0).value;
  cr.gates.push_back({"1/(1+p Phi') vs 0.5", std::abs(half - 0.5), 1e-12});
}

struct Spec {
  const char* title;
  double limit;
  void (*run)(Criterion&, const ConformanceOptions&);
};

const Spec kSpecs[] = {
    {"generalized scale functions: three routes agree", 30.0, three_way},
    {"Volterra solver: constant weight reproduces W and Z", 60.0, volterra},
    {"window weight converges to the local-time weight", 60.0, delta_limit},
    {"Brownian prefactor and linear-Brownian rate", 5.0, brownian_examples},
    {"isomorphism and loop-soup identities", 10.0, isomorphism},
    {"log-derivative identity", 5.0, logderiv},
    {"Monte Carlo statistical suite", 600.0, monte_carlo},
    {"limits as the far boundary recedes", 5.0, limits},
};

}  // namespace

Criterion run_criterion(int number, const ConformanceOptions& opt) {
  if (number < 1 || number > 8) throw DomainError("criterion number must be in 1..8");
  const Spec& s = kSpecs[number - 1];
  Criterion cr;
  cr.number = number;
  cr.title = s.title;
  cr.time_limit = s.limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    s.run(cr, opt);
  } catch (const std::exception& e) {
    cr.error = e.what();
  }
  cr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cr;
}

std::vector<Criterion> run_conformance(const ConformanceOptions& opt) {
  std::vector<Criterion> out;
  for (int k = 1; k <= 8; ++k) {
    if (opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), k) != opt.only.end()) {
      out.push_back(run_criterion(k, opt));
    }
  }
  return out;
}

}  // namespace snlt
