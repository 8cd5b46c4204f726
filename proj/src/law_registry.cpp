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
#include "snlt/law_registry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "snlt/error.hpp"
#include "snlt/local_time_laws.hpp"
#include "snlt/omega_scale.hpp"
#include "snlt/permanental.hpp"
#include "snlt/statistics.hpp"

namespace snlt {

void Params::set(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError("parameter '" + assignment + "' is not key=value");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void Params::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ParseError("empty parameter name");
  kv_[key] = value;
}

double Params::number(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw ParseError("missing parameter '" + key + "'");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) throw ParseError("parameter '" + key + "' is not a number");
  return v;
}

double Params::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

std::vector<double> Params::list(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw ParseError("missing parameter '" + key + "'");
  std::vector<double> out;
  const std::string& s = it->second;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string item = s.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("parameter '" + key + "' is not a number list");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

void Params::require_only(const std::vector<std::string>& allowed) const {
  for (const auto& [k, v] : kv_) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw ParseError("unknown parameter '" + k + "'");
    }
  }
}

void Table::add_row(std::string label, std::vector<double> values) {
  if (values.size() != columns.size()) throw ConsistencyError("table row width does not match its columns");
  row_labels.push_back(std::move(label));
  rows.push_back(std::move(values));
}

namespace {

using LawFn = std::function<Table(const LevyModel&, const Params&)>;

struct Entry {
  LawInfo info;
  std::vector<std::string> keys;
  LawFn fn;
};

std::vector<std::string> split_keys(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t sp = std::min(s.find(' ', pos), s.size());
    if (sp > pos) out.push_back(s.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return out;
}

ScaleContext make_ctx(const LevyModel& m, const Params& p, const char* qkey = "q") {
  const double q = p.number(qkey, 0.0);
  if (p.has("nodes")) return ScaleContext(m, q, NumericInversion{static_cast<int>(p.number("nodes"))});
  return ScaleContext(m, q);
}

std::optional<LevelWeights> levels_of(const Params& p) {
  if (!p.has("levels")) return std::nullopt;
  const auto lv = p.list("levels");
  std::vector<double> w = p.has("weights") ? p.list("weights") : std::vector<double>(lv.size(), 1.0);
  return LevelWeights(lv, w);
}

Corridor corridor_of(const Params& p, bool need_a = true) {
  Corridor c;
  c.c = p.number("c");
  c.b = p.number("b");
  c.a = need_a ? p.number("a") : p.number("a", 0.5 * (c.b + c.c));
  c.x = p.number("x", c.a);
  c.p = p.number("p", 0.0);
  c.levels = levels_of(p);
  return c;
}

Table one_row(const std::string& id, std::vector<std::string> cols, std::vector<double> vals) {
  Table t;
  t.columns = std::move(cols);
  t.add_row(id, std::move(vals));
  return t;
}

OmegaGrid grid_of(const LevyModel& m, const Params& p, std::vector<double> points) {
  const ScaleContext base = make_ctx(m, p);
  const WeightFunction omega = p.has("omega") ? WeightFunction::parse(p.items().at("omega")) : WeightFunction::constant(0.0);
  return solve_omega(base, omega, p.number("c"), p.number("b"), p.number("h", 1e-3), points);
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    auto add = [&](std::string id, std::string keys, std::string summary, LawFn fn) {
      e.push_back({{id, keys, std::move(summary)}, split_keys(keys), std::move(fn)});
    };
    const std::string corridor = "q nodes a b c x p";

    add("lt_exit_up", corridor, "E_x(exp(-q T_b - p l(a,T_b)); T_b < T_c)", [](const LevyModel& m, const Params& p) {
      return one_row("lt_exit_up", {"value"}, {lt_exit_up(make_ctx(m, p), corridor_of(p))});
    });
    add("lt_exit_down", corridor, "E_x(exp(-q T_c - p l(a,T_c)); T_c < T_b)", [](const LevyModel& m, const Params& p) {
      return one_row("lt_exit_down", {"value"}, {lt_exit_down(make_ctx(m, p), corridor_of(p))});
    });
    add("lt_resolvent", corridor + " y", "resolvent density at y weighted by exp(-p l(a,t))",
        [](const LevyModel& m, const Params& p) {
          return one_row("lt_resolvent", {"density"}, {lt_resolvent(make_ctx(m, p), corridor_of(p), p.number("y"))});
        });
    add("lt_atom_exp", "nodes a b c x", "law of l(a,T_b) given T_b < T_c: atom at 0 and exponential rate",
        [](const LevyModel& m, const Params& p) {
          const AtomExpLaw law = lt_atom_exp(make_ctx(m, p), corridor_of(p));
          return one_row("lt_atom_exp", {"atom", "rate"}, {law.atom, law.rate});
        });
    add("hitting_transform", "q nodes a b c x", "E_x(exp(-q T_a); T_a < T_b and T_c)",
        [](const LevyModel& m, const Params& p) {
          return one_row("hitting_transform", {"value"}, {hitting_transform(make_ctx(m, p), corridor_of(p))});
        });
    add("lt_exp_killed_transform", corridor, "E_x(exp(-p l(a, e_q ^ T_b ^ T_c)))",
        [](const LevyModel& m, const Params& p) {
          const ScaleContext ctx = make_ctx(m, p);
          Corridor cor = corridor_of(p);
          Corridor at_a = cor;
          at_a.x = cor.a;
          const double v = lt_exp_killed_transform(ctx, at_a);
          Table t = one_row("lt_exp_killed_transform", {"value", "value_from_a"},
                            {strong_markov_compose(ctx, cor, v), v});
          if (cor.x != cor.a) t.notes.push_back("started away from a: composed with the hitting transform");
          return t;
        });
    add("ub_decomposition", "q nodes a b c p", "up + down + killed pieces of E_a(exp(-p l(a, e_q ^ T)))",
        [](const LevyModel& m, const Params& p) {
          const UbDecomposition u = ub_decomposition(make_ctx(m, p), corridor_of(p));
          return one_row("ub_decomposition", {"up", "down", "killed", "total", "rate", "killed_prefactor"},
                         {u.up, u.down, u.killed, u.total, u.rate, u.killed_prefactor});
        });
    add("lt_exp_joint", "q nodes a b c y", "density of X(e_q) at y and rate of l(a, e_q) on {e_q < T}",
        [](const LevyModel& m, const Params& p) {
          const ExpJoint j = lt_exp_joint(make_ctx(m, p), corridor_of(p), p.number("y"));
          return one_row("lt_exp_joint", {"space_density", "time_rate"}, {j.space_density, j.time_rate});
        });
    auto limit = [](LimitKind kind, const char* id, const char* far) {
      return [kind, id, far](const LevyModel& m, const Params& p) {
        const double fv = far ? p.number(far) : 0.0;
        const LimitValue v = lt_limit(make_ctx(m, p), kind, p.number("a", 0.0), fv, p.number("p", 0.0));
        Table t = one_row(id, {"value", "convention"}, {v.value, v.convention ? 1.0 : 0.0});
        if (!v.note.empty()) t.notes.push_back(v.note);
        return t;
      };
    };
    add("lt_limit_up", "q nodes a b p", "c -> -infinity limit of lt_exit_up from a", limit(LimitKind::Up, "lt_limit_up", "b"));
    add("lt_limit_down", "q nodes a c p", "b -> infinity limit of lt_exit_down from a",
        limit(LimitKind::Down, "lt_limit_down", "c"));
    add("lt_limit_exp", "q nodes a p", "E_a(exp(-p l(a, e_q))) without boundaries",
        limit(LimitKind::ExpTime, "lt_limit_exp", nullptr));
    const std::string joint = "q nodes b c x levels weights";
    add("joint_lt_exit_up", joint, "joint local times at T_b on {T_b < T_c}", [](const LevyModel& m, const Params& p) {
      return one_row("joint_lt_exit_up", {"value"}, {joint_lt_exit_up(make_ctx(m, p), corridor_of(p, false))});
    });
    add("joint_lt_exit_down", joint, "joint local times at T_c on {T_c < T_b}", [](const LevyModel& m, const Params& p) {
      return one_row("joint_lt_exit_down", {"value"}, {joint_lt_exit_down(make_ctx(m, p), corridor_of(p, false))});
    });
    add("joint_lt_resolvent", joint + " y", "resolvent density weighted by joint local times",
        [](const LevyModel& m, const Params& p) {
          return one_row("joint_lt_resolvent", {"density"},
                         {joint_lt_resolvent(make_ctx(m, p), corridor_of(p, false), p.number("y"))});
        });
    add("inv_lt_survival", "q nodes a b c t", "P_a(inverse local time at t < e_q ^ T_b ^ T_c)",
        [](const LevyModel& m, const Params& p) {
          const InvLtSurvival s = inv_lt_survival(make_ctx(m, p), corridor_of(p), p.number("t"));
          return one_row("inv_lt_survival", {"value", "rate"}, {s.value, s.rate});
        });
    add("inv_lt_joint_transform", "q nodes a b c t levels weights", "joint local times at the inverse local time",
        [](const LevyModel& m, const Params& p) {
          const ScaleContext ctx = make_ctx(m, p);
          const Corridor cor = corridor_of(p);
          return one_row("inv_lt_joint_transform", {"value", "rate"},
                         {inv_lt_joint_transform(ctx, cor, p.number("t")), inv_lt_joint_rate(ctx, cor)});
        });
    add("occu_inv_lt_transform", "q nodes omega h a b c t", "weighted occupation at the inverse local time",
        [](const LevyModel& m, const Params& p) {
          const OmegaGrid g = grid_of(m, p, {p.number("a")});
          Table t = one_row("occu_inv_lt_transform", {"value"}, {occu_inv_lt_transform(g, p.number("a"), p.number("t"))});
          t.notes.insert(t.notes.end(), g.warnings().begin(), g.warnings().end());
          return t;
        });
    add("omega_exit_laws", "q nodes omega h b c x", "E_x(exp(-L(T_b)); T_b < T_c) and the downward counterpart",
        [](const LevyModel& m, const Params& p) {
          const OmegaGrid g = grid_of(m, p, {p.number("x")});
          const ExitLaws l = omega_exit_laws(g, p.number("x"));
          return one_row("omega_exit_laws", {"up", "down"}, {l.up, l.down});
        });
    add("omega_resolvent", "q nodes omega h b c x y", "resolvent density weighted by exp(-L(t))",
        [](const LevyModel& m, const Params& p) {
          const OmegaGrid g = grid_of(m, p, {p.number("x"), p.number("y")});
          return one_row("omega_resolvent", {"density"}, {omega_resolvent(g, p.number("x"), p.number("y"))});
        });
    add("potential_density", "q nodes b c x y", "g(x,y) of the killed process", [](const LevyModel& m, const Params& p) {
      return one_row("potential_density", {"g"},
                     {potential_density(make_ctx(m, p), p.number("b"), p.number("c"), p.number("x"), p.number("y"))});
    });
    add("permanental_laplace", "q nodes b c levels weights beta", "det(I + Lambda G)^(-1/beta)",
        [](const LevyModel& m, const Params& p) {
          const PotentialKernel k(make_ctx(m, p), p.number("b"), p.number("c"));
          return one_row("permanental_laplace", {"value"}, {permanental_laplace(k, *levels_of(p), p.number("beta", 2.0))});
        });
    add("tilted_lt_transform", "q nodes a b c levels weights", "E~_a(exp(-sum p_j l(a_j, inf))) by two routes",
        [](const LevyModel& m, const Params& p) {
          const PotentialKernel k(make_ctx(m, p), p.number("b"), p.number("c"));
          const TiltedTransform t = tilted_lt_transform(k, p.number("a"), *levels_of(p));
          return one_row("tilted_lt_transform", {"scale_route", "determinant_route"}, {t.scale_route, t.determinant_route});
        });
    add("isomorphism_check", "q nodes a b c levels weights", "determinant identities for the potential kernel",
        [](const LevyModel& m, const Params& p) {
          const PotentialKernel k(make_ctx(m, p), p.number("b"), p.number("c"));
          const IsomorphismCheck r = isomorphism_check(k, p.number("a"), *levels_of(p));
          return one_row("isomorphism_check", {"lhs_det", "rhs_det", "lhs_bordered", "rhs_bordered", "abs_gap"},
                         {r.lhs_det, r.rhs_det, r.lhs_bordered, r.rhs_bordered, r.abs_gap});
        });
    add("loop_soup_functional", "q nodes b c levels weights", "ln det(I + Lambda G) and the scale-function route",
        [](const LevyModel& m, const Params& p) {
          const PotentialKernel k(make_ctx(m, p), p.number("b"), p.number("c"));
          const LoopSoup s = loop_soup_functional(k, *levels_of(p));
          return one_row("loop_soup_functional", {"value", "log_det", "log_scale", "gap"},
                         {s.value, s.log_det, s.log_scale, s.gap});
        });
    add("logderiv_identity_check", "q lambda nodes b c", "integral of g(a,a) against d/dlambda ln W(b-c)",
        [](const LevyModel& m, const Params& p) {
          const ScaleContext ctx = make_ctx(m, p).with_q(p.number("q", 0.0) + p.number("lambda", 0.0));
          const LogDerivCheck r = logderiv_identity_check(ctx, p.number("b"), p.number("c"));
          return one_row("logderiv_identity_check", {"lhs", "rhs", "gap"}, {r.lhs, r.rhs, r.gap});
        });
    add("gen_scale", "q nodes x y levels weights", "generalized W(x,y) by recursion, determinant and linear system",
        [](const LevyModel& m, const Params& p) {
          const ScaleContext ctx = make_ctx(m, p);
          const LevelWeights lw = *levels_of(p);
          const double x = p.number("x");
          const double y = p.number("y");
          return one_row("gen_scale", {"recursive", "determinant", "linear_system"},
                         {gen_w_recursive(lw, ctx, x, y), gen_w_det(lw, ctx, x, y), gen_w(lw, ctx, x, y)});
        });
    return e;
  }();
  return entries;
}

const Entry& find(const std::string& id) {
  for (const auto& e : registry()) {
    if (e.info.id == id) return e;
  }
  throw ParseError("unknown law id '" + id + "'; see law --list");
}

}  // namespace

const std::vector<LawInfo>& law_list() {
  static const std::vector<LawInfo> infos = [] {
    std::vector<LawInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

Table evaluate_law(const std::string& id, const LevyModel& model, const Params& params) {
  const Entry& e = find(id);
  params.require_only(e.keys);
  if (params.has("levels") && !params.has("weights")) {
    Table t = e.fn(model, params);
    t.notes.push_back("weights default to 1");
    return t;
  }
  return e.fn(model, params);
}

namespace {

const std::vector<std::string> kMcKeys = {"n_paths", "dt", "seed", "eps", "t_max", "threads"};

McConfig mc_config_of(const Params& p) {
  McConfig cfg;
  cfg.n_paths = static_cast<std::size_t>(p.number("n_paths", static_cast<double>(cfg.n_paths)));
  cfg.dt = p.number("dt", cfg.dt);
  cfg.seed = static_cast<std::uint64_t>(p.number("seed", static_cast<double>(cfg.seed)));
  cfg.epsilon_lt = p.number("eps", cfg.epsilon_lt);
  cfg.t_max = p.number("t_max", cfg.t_max);
  cfg.threads = static_cast<unsigned>(p.number("threads", 0.0));
  return cfg;
}

Params without_mc(const Params& p) {
  Params out;
  for (const auto& [k, v] : p.items()) {
    if (std::find(kMcKeys.begin(), kMcKeys.end(), k) == kMcKeys.end()) out.set(k, v);
  }
  return out;
}

Table mc_table() {
  Table t;
  t.columns = {"analytic", "mc_mean", "mc_stderr", "z_score"};
  return t;
}

void add_mc_row(Table& t, const std::string& label, double analytic, const Estimate& e) {
  const double z = e.std_error > 0.0 ? (e.mean - analytic) / e.std_error : (e.mean == analytic ? 0.0 : HUGE_VAL);
  t.add_row(label, {analytic, e.mean, e.std_error, z});
}

}  // namespace

std::vector<std::string> mc_law_ids() {
  return {"lt_exit_up",      "lt_exit_down",           "joint_lt_exit_up", "joint_lt_exit_down",   "lt_atom_exp",
          "hitting_transform", "lt_exp_killed_transform", "inv_lt_survival", "occu_inv_lt_transform"};
}

Table mc_verify(const std::string& id, const LevyModel& model, const Params& params) {
  const Params lp = without_mc(params);
  {
    std::vector<std::string> allowed = find(id).keys;
    allowed.insert(allowed.end(), kMcKeys.begin(), kMcKeys.end());
    params.require_only(allowed);
  }
  const McConfig cfg = mc_config_of(params);
  const auto ids = mc_law_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw ParseError("law '" + id + "' has no Monte Carlo check");

  const bool joint = id.rfind("joint_", 0) == 0;
  const ScaleContext ctx = make_ctx(model, lp);
  const Corridor cor = corridor_of(lp, !joint);
  const LevelWeights lw = cor.weights();
  SimulationSpec spec;
  spec.c = cor.c;
  spec.b = cor.b;
  spec.x = cor.x;
  spec.levels = lw.levels();
  Table t = mc_table();

  if (id == "lt_exit_up" || id == "lt_exit_down" || joint) {
    const bool up = id.find("up") != std::string::npos;
    const McEnsemble ens = simulate_corridor(model, spec, cfg);
    Functional f;
    f.q = ctx.q();
    f.p = lw.weights();
    f.select = up ? Selector::Up : Selector::Down;
    const double analytic = up ? lt_exit_up(ctx, cor) : lt_exit_down(ctx, cor);
    add_mc_row(t, id, analytic, empirical_transform(ens, f));
    t.notes = ens.warnings;
  } else if (id == "lt_atom_exp") {
    const AtomExpLaw law = lt_atom_exp(ctx, cor);
    const McEnsemble ens = simulate_corridor(model, spec, cfg);
    Functional f;
    f.select = Selector::Up;
    f.conditional = true;
    f.filter = [](const PathRecord& r) { return r.local_time[0] == 0.0; };
    add_mc_row(t, "atom", law.atom, empirical_transform(ens, f));
    std::vector<double> pos;
    for (const auto& r : ens.records) {
      if (r.exit_kind == ExitKind::Up && r.local_time[0] > 0.0) pos.push_back(r.local_time[0]);
    }
    const MeanError m = mean_error(pos);
    add_mc_row(t, "mean_given_positive", 1.0 / law.rate, {m.mean, m.std_error, m.n});
    t.notes = ens.warnings;
  } else if (id == "hitting_transform") {
    spec.q = ctx.q();
    const McEnsemble ens = simulate_corridor(model, spec, cfg);
    Functional f;
    f.filter = [](const PathRecord& r) { return r.local_time[0] > 0.0; };
    add_mc_row(t, id, hitting_transform(ctx, cor), empirical_transform(ens, f));
    t.notes = ens.warnings;
  } else if (id == "lt_exp_killed_transform") {
    spec.q = ctx.q();
    const McEnsemble ens = simulate_corridor(model, spec, cfg);
    Corridor at_a = cor;
    at_a.x = cor.a;
    Functional f;
    f.p = {cor.p};
    add_mc_row(t, id, strong_markov_compose(ctx, cor, lt_exp_killed_transform(ctx, at_a)), empirical_transform(ens, f));
    t.notes = ens.warnings;
  } else if (id == "inv_lt_survival") {
    spec.q = ctx.q();
    spec.x = cor.a;
    const double tt = lp.number("t");
    const double analytic = inv_lt_survival(ctx, cor, tt).value;
    const McEnsemble ens = simulate_corridor(model, spec, cfg);
    Functional f;
    f.conditional = true;
    f.filter = [tt](const PathRecord& r) { return r.local_time[0] > tt; };
    std::vector<double> succ, trials;
    for (auto [sel, label] : {std::pair{Selector::Up, "given_up"}, std::pair{Selector::Down, "given_down"},
                              std::pair{Selector::Killed, "given_killed"}}) {
      f.select = sel;
      const Estimate e = empirical_transform(ens, f);
      add_mc_row(t, label, analytic, e);
      std::size_t n = 0;
      for (const auto& r : ens.records) {
        n += (sel == Selector::Up && r.exit_kind == ExitKind::Up) || (sel == Selector::Down && r.exit_kind == ExitKind::Down) ||
             (sel == Selector::Killed && r.exit_kind == ExitKind::Killed);
      }
      succ.push_back(e.mean * static_cast<double>(n));
      trials.push_back(static_cast<double>(n));
    }
    f.select = Selector::Any;
    add_mc_row(t, "unconditional", analytic, empirical_transform(ens, f));
    const ChiSquareResult chi = chi_square_homogeneity(succ, trials);
    t.notes.push_back("chi-square homogeneity across exit kinds: statistic " + std::to_string(chi.statistic) +
                      ", p-value " + std::to_string(chi.p_value));
    t.notes.insert(t.notes.end(), ens.warnings.begin(), ens.warnings.end());
  } else if (id == "occu_inv_lt_transform") {
    const double tt = lp.number("t");
    const OmegaGrid g = grid_of(model, lp, {cor.a});
    const double analytic = omega_exit_laws(g, cor.a).up * occu_inv_lt_transform(g, cor.a, tt);
    spec.x = cor.a;
    spec.levels = {cor.a};
    if (lp.has("omega")) spec.omega = WeightFunction::parse(lp.items().at("omega"));
    const McEnsemble ens = simulate_corridor(model, spec, cfg);
    Functional f;
    f.q = ctx.q();
    f.use_weighted_occupation = true;
    f.select = Selector::Up;
    f.filter = [tt](const PathRecord& r) { return r.local_time[0] > tt; };
    add_mc_row(t, "up_and_local_time_above_t", analytic, empirical_transform(ens, f));
    t.notes.push_back("analytic value is W(a,c)/W(b,c) times the inverse-local-time transform");
    t.notes.insert(t.notes.end(), ens.warnings.begin(), ens.warnings.end());
  }
  return t;
}

}  // namespace snlt
