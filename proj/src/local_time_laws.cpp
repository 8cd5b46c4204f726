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
#include "snlt/local_time_laws.hpp"

#include <cmath>
#include <limits>

#include "snlt/error.hpp"

namespace snlt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_range(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void validate_geometry(const Corridor& cor, bool use_a) {
  check_range(cor.c, "c");
  check_range(cor.b, "b");
  check_range(cor.x, "x");
  if (!(cor.c < cor.b)) throw DomainError("corridor requires c < b");
  if (use_a) {
    check_range(cor.a, "a");
    if (!(cor.c < cor.a && cor.a < cor.b)) throw DomainError("corridor requires c < a < b");
  }
  if (!(cor.x >= cor.c && cor.x <= cor.b)) throw DomainError("corridor requires x in [c, b]");
  if (!(cor.p >= 0.0) || !std::isfinite(cor.p)) throw DomainError("local-time weight p must be finite and nonnegative");
  if (cor.levels) {
    for (double l : cor.levels->levels()) {
      if (!(l > cor.c && l < cor.b)) throw DomainError("joint levels must lie in (c, b)");
    }
  }
}

bool same_point(double u, double v) { return std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(v)); }

}  // namespace

void Corridor::validate() const { validate_geometry(*this, true); }

LevelWeights Corridor::weights() const { return levels ? *levels : LevelWeights::single(a, p); }

double lt_exit_up(const ScaleContext& ctx, const Corridor& cor) {
  validate_geometry(cor, !cor.levels);
  const LevelWeights lw = cor.weights();
  if (cor.x >= cor.b) return 1.0;
  const double den = gen_log_w(lw, ctx, cor.b, cor.c);
  if (den == kNegInf) throw DegenerateError("lt_exit_up: generalized W(b, c) vanishes");
  return std::exp(gen_log_w(lw, ctx, cor.x, cor.c) - den);
}

double lt_exit_down(const ScaleContext& ctx, const Corridor& cor) {
  validate_geometry(cor, !cor.levels);
  const LevelWeights lw = cor.weights();
  if (cor.x >= cor.b) return 0.0;
  const double den = gen_log_w(lw, ctx, cor.b, cor.c);
  if (den == kNegInf) throw DegenerateError("lt_exit_down: generalized W(b, c) vanishes");
  const double l1 = gen_log_z(lw, ctx, cor.x, cor.c);
  const double l2 = gen_log_w(lw, ctx, cor.x, cor.c) - den + gen_log_z(lw, ctx, cor.b, cor.c);
  if (l2 == kNegInf) return std::exp(l1);
  if (l2 >= l1) return 0.0;
  return std::exp(l1 + std::log(-std::expm1(l2 - l1)));
}

double lt_resolvent(const ScaleContext& ctx, const Corridor& cor, double y) {
  validate_geometry(cor, !cor.levels);
  if (!(y > cor.c && y < cor.b)) throw DomainError("lt_resolvent: y must lie in (c, b)");
  const LevelWeights lw = cor.weights();
  const double den = gen_log_w(lw, ctx, cor.b, cor.c);
  if (den == kNegInf) throw DegenerateError("lt_resolvent: generalized W(b, c) vanishes");
  const double first = std::exp(gen_log_w(lw, ctx, cor.x, cor.c) - den + gen_log_w(lw, ctx, cor.b, y));
  const double second = std::exp(gen_log_w(lw, ctx, cor.x, y));
  return first - second;
}

double lt_exp_rate(const ScaleContext& ctx, double a, double b, double c) {
  if (!(c < a && a < b)) throw DomainError("rate requires c < a < b");
  return std::exp(ctx.log_w(b - c) - ctx.log_w(b - a) - ctx.log_w(a - c));
}

AtomExpLaw lt_atom_exp(const ScaleContext& ctx, const Corridor& cor) {
  cor.validate();
  if (ctx.q() != 0.0) throw DomainError("lt_atom_exp is the q = 0 law; use a context with q = 0");
  if (!(cor.x > cor.c)) throw DomainError("lt_atom_exp: conditioning event has probability 0 at x = c");
  AtomExpLaw law;
  law.rate = lt_exp_rate(ctx, cor.a, cor.b, cor.c);
  if (cor.x > cor.a) {
    law.atom = std::exp(ctx.log_w(cor.x - cor.a) + ctx.log_w(cor.b - cor.c) - ctx.log_w(cor.x - cor.c) -
                        ctx.log_w(cor.b - cor.a));
  }
  return law;
}

double hitting_transform(const ScaleContext& ctx, const Corridor& cor) {
  cor.validate();
  const double lac = ctx.log_w(cor.a - cor.c);
  const double first = std::exp(ctx.log_w(cor.x - cor.c) - lac);
  const double second = std::exp(ctx.log_w(cor.x - cor.a) + ctx.log_w(cor.b - cor.c) - ctx.log_w(cor.b - cor.a) - lac);
  return first - second;
}

double lt_exp_killed_transform(const ScaleContext& ctx, const Corridor& cor) {
  cor.validate();
  if (!same_point(cor.x, cor.a)) {
    throw DomainError("lt_exp_killed_transform starts at a; compose with strong_markov_compose for x != a");
  }
  if (cor.p == 0.0) return 1.0;
  const double r = lt_exp_rate(ctx, cor.a, cor.b, cor.c);
  return r / (r + cor.p);
}

double strong_markov_compose(const ScaleContext& ctx, const Corridor& cor, double at_a) {
  const double h = hitting_transform(ctx, cor);
  return (1.0 - h) + h * at_a;
}

UbDecomposition ub_decomposition(const ScaleContext& ctx, const Corridor& cor) {
  cor.validate();
  Corridor at_a = cor;
  at_a.x = cor.a;
  at_a.levels.reset();
  UbDecomposition u;
  u.up = lt_exit_up(ctx, at_a);
  u.down = lt_exit_down(ctx, at_a);
  const double wac = ctx.w(cor.a - cor.c);
  const double wbc = ctx.w(cor.b - cor.c);
  const double wba = ctx.w(cor.b - cor.a);
  const double zac = ctx.z(cor.a - cor.c);
  const double zbc = ctx.z(cor.b - cor.c);
  const double num = wac * (zbc - 1.0) - wbc * (zac - 1.0);
  u.killed = num / (wbc + cor.p * wba * wac);
  u.total = u.up + u.down + u.killed;
  u.rate = wbc / (wba * wac);
  u.killed_prefactor = num / (wba * wac);
  return u;
}

ExpJoint lt_exp_joint(const ScaleContext& ctx, const Corridor& cor, double y) {
  cor.validate();
  if (!(y > cor.c && y < cor.b)) throw DomainError("lt_exp_joint: y must lie in (c, b)");
  ExpJoint j;
  const double lbc = ctx.log_w(cor.b - cor.c);
  j.space_density =
      ctx.q() * (std::exp(ctx.log_w(cor.a - cor.c) - lbc + ctx.log_w(cor.b - y)) - std::exp(ctx.log_w(cor.a - y)));
  j.time_rate = lt_exp_rate(ctx, cor.a, cor.b, cor.c);
  return j;
}

LimitValue lt_limit(const ScaleContext& ctx, LimitKind kind, double a, double far, double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("lt_limit: p must be finite and nonnegative");
  const PhiSolve& ph = ctx.phi();
  LimitValue out;
  switch (kind) {
    case LimitKind::Up: {
      const double d = far - a;
      if (!(d > 0.0)) throw DomainError("lt_limit up: need b > a");
      const double lw = ctx.log_w(d);
      out.value = std::exp(-(ph.phi * d + std::log1p(p * std::exp(lw - ph.phi * d))));
      break;
    }
    case LimitKind::Down: {
      const double d = a - far;
      if (!(d > 0.0)) throw DomainError("lt_limit down: need a > c");
      double ratio;
      if (ctx.q() == 0.0) {
        out.convention = true;
        if (ph.phi > 0.0) {
          ratio = 0.0;
          out.note = "q = 0 with Phi(0) > 0: q/Phi(q) = 0";
        } else {
          ratio = ctx.model().psi_prime(0.0);
          out.note = "q = 0 with Phi(0) = 0: q/Phi(q) -> psi'(0)";
        }
      } else {
        ratio = ctx.q() / ph.phi;
      }
      const double wd = ctx.w(d);
      out.value = (ctx.z(d) - ratio * wd) / (1.0 + p * std::exp(-ph.phi * d) * wd);
      break;
    }
    case LimitKind::ExpTime: {
      if (ph.phi_prime_infinite()) {
        out.convention = true;
        out.note = "Phi'(0) = infinity";
        out.value = p > 0.0 ? 0.0 : 1.0;
      } else {
        out.value = 1.0 / (1.0 + p * ph.phi_prime);
      }
      break;
    }
  }
  return out;
}

namespace {

void require_levels(const Corridor& cor, const char* who) {
  if (!cor.levels) throw DomainError(std::string(who) + ": levels are required");
}

}  // namespace

double joint_lt_exit_up(const ScaleContext& ctx, const Corridor& cor) {
  require_levels(cor, "joint_lt_exit_up");
  return lt_exit_up(ctx, cor);
}

double joint_lt_exit_down(const ScaleContext& ctx, const Corridor& cor) {
  require_levels(cor, "joint_lt_exit_down");
  return lt_exit_down(ctx, cor);
}

double joint_lt_resolvent(const ScaleContext& ctx, const Corridor& cor, double y) {
  require_levels(cor, "joint_lt_resolvent");
  return lt_resolvent(ctx, cor, y);
}

InvLtSurvival inv_lt_survival(const ScaleContext& ctx, const Corridor& cor, double t) {
  validate_geometry(cor, true);
  if (!(t >= 0.0)) throw DomainError("inv_lt_survival: t must be nonnegative");
  InvLtSurvival s;
  s.rate = lt_exp_rate(ctx, cor.a, cor.b, cor.c);
  s.value = std::exp(-s.rate * t);
  return s;
}

double inv_lt_joint_rate(const ScaleContext& ctx, const Corridor& cor) {
  validate_geometry(cor, true);
  const LevelWeights lw = cor.weights();
  return std::exp(gen_log_w(lw, ctx, cor.b, cor.c) - gen_log_w(lw, ctx, cor.b, cor.a) - gen_log_w(lw, ctx, cor.a, cor.c));
}

double inv_lt_joint_transform(const ScaleContext& ctx, const Corridor& cor, double t) {
  if (!(t >= 0.0)) throw DomainError("inv_lt_joint_transform: t must be nonnegative");
  return std::exp(-inv_lt_joint_rate(ctx, cor) * t);
}

double occu_inv_lt_transform(const OmegaGrid& grid, double a, double t) {
  if (!(a > grid.c() && a < grid.b())) throw DomainError("occu_inv_lt_transform: need c < a < b");
  if (!(t >= 0.0)) throw DomainError("occu_inv_lt_transform: t must be nonnegative");
  const std::size_t ia = grid.index_of(a);
  const std::size_t ib = grid.mesh().size() - 1;
  const double den = grid.w_at(ib, ia) * grid.w_at(ia, 0);
  if (!(den > 0.0)) throw DegenerateError("occu_inv_lt_transform: W^(ω)(b,a) W^(ω)(a,c) = 0");
  return std::exp(-grid.w_at(ib, 0) * t / den);
}

}  // namespace snlt
