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
#ifndef SNLT_LOCAL_TIME_LAWS_HPP
#define SNLT_LOCAL_TIME_LAWS_HPP

#include <optional>
#include <string>

#include "snlt/gen_scale.hpp"
#include "snlt/omega_scale.hpp"

namespace snlt {

/// Interval [c, b], start x, observation level a and local-time weight p.
/// The exponential clock rate q is the q of the ScaleContext. `levels`, when
/// set, replaces (a, p) for the joint laws.
struct Corridor {
  double c = 0.0;
  double b = 1.0;
  double x = 0.5;
  double a = 0.5;
  double p = 0.0;
  std::optional<LevelWeights> levels;

  /// Throws DomainError unless c < a < b, x ∈ [c, b] and levels ⊂ (c, b).
  void validate() const;
  /// (a, p) as a one-level LevelWeights, or `levels` when set.
  LevelWeights weights() const;
};

/// Law of l(a, τ_b⁺) given τ_b⁺ < τ_c⁻: an atom at 0 plus an exponential tail.
struct AtomExpLaw {
  double atom = 0.0;
  double rate = 0.0;
};

/// E_x(e^{−qτ_b⁺ − Σ p_j l(a_j, τ_b⁺)}; τ_b⁺ < τ_c⁻).
double lt_exit_up(const ScaleContext& ctx, const Corridor& cor);
/// E_x(e^{−qτ_c⁻ − Σ p_j l(a_j, τ_c⁻)}; τ_c⁻ < τ_b⁺).
double lt_exit_down(const ScaleContext& ctx, const Corridor& cor);
/// Resolvent density at y ∈ (c, b) of the process weighted by e^{−Σ p_j l(a_j, t)}.
double lt_resolvent(const ScaleContext& ctx, const Corridor& cor, double y);

/// Requires ctx.q() == 0 and x ∈ (c, b].
AtomExpLaw lt_atom_exp(const ScaleContext& ctx, const Corridor& cor);

/// E_x(e^{−qτ^{a}}; τ^{a} < τ_b⁺ ∧ τ_c⁻).
double hitting_transform(const ScaleContext& ctx, const Corridor& cor);

/// W(b−c) / (W(b−a) W(a−c)): rate of the exponential law of
/// l(a, e_q ∧ τ_b⁺ ∧ τ_c⁻) under P_a, and of the inverse local time.
double lt_exp_rate(const ScaleContext& ctx, double a, double b, double c);

/// E_a(e^{−p l(a, e_q ∧ τ_b⁺ ∧ τ_c⁻)}). Requires x == a; see
/// strong_markov_compose for other starting points.
double lt_exp_killed_transform(const ScaleContext& ctx, const Corridor& cor);

/// Value under P_x of a functional that is 1 if a is not reached before
/// e_q ∧ τ_b⁺ ∧ τ_c⁻ and equals `at_a` (its value under P_a) otherwise:
/// (1 − H) + H · at_a with H = hitting_transform.
double strong_markov_compose(const ScaleContext& ctx, const Corridor& cor, double at_a);

/// The three pieces of E_a(e^{−p l(a, e_q ∧ τ)}) split by how the corridor
/// is left, in closed form. `killed_prefactor` is the density of l(a, e_q)
/// on {e_q < τ} times e^{rate·t}.
struct UbDecomposition {
  double up = 0.0;
  double down = 0.0;
  double killed = 0.0;
  double total = 0.0;
  double rate = 0.0;
  double killed_prefactor = 0.0;
};
UbDecomposition ub_decomposition(const ScaleContext& ctx, const Corridor& cor);

/// Under P_a on {e_q < τ_b⁺ ∧ τ_c⁻}: density of X_{e_q} at y (including the
/// factor q) and the exponential rate of l(a, e_q).
struct ExpJoint {
  double space_density = 0.0;
  double time_rate = 0.0;
};
ExpJoint lt_exp_joint(const ScaleContext& ctx, const Corridor& cor, double y);

/// The b, c → ∞ limits from level a.
enum class LimitKind {
  Up,       // 1 / (e^{Φ(q)(b−a)} + p W(b−a))
  Down,     // (Z(a−c) − (q/Φ(q)) W(a−c)) / (1 + p e^{Φ(q)(c−a)} W(a−c))
  ExpTime,  // 1 / (1 + p Φ'(q))
};

struct LimitValue {
  double value = 0.0;
  /// Set when a q = 0 convention decided the value (q/Φ(q) → ψ'(0) or Φ(0),
  /// Φ'(0) = ∞).
  bool convention = false;
  std::string note;
};

/// `far` is the finite boundary: b for Up, c for Down, ignored for ExpTime.
LimitValue lt_limit(const ScaleContext& ctx, LimitKind kind, double a, double far, double p);

/// Joint laws at several levels; cor.levels must be set.
double joint_lt_exit_up(const ScaleContext& ctx, const Corridor& cor);
double joint_lt_exit_down(const ScaleContext& ctx, const Corridor& cor);
double joint_lt_resolvent(const ScaleContext& ctx, const Corridor& cor, double y);

/// P_a(l^{−1}(a, t) < e_q ∧ τ_b⁺ ∧ τ_c⁻) = exp(−rate · t); the same number is
/// the conditional probability given each of the three ways of leaving.
struct InvLtSurvival {
  double value = 1.0;
  double rate = 0.0;
};
InvLtSurvival inv_lt_survival(const ScaleContext& ctx, const Corridor& cor, double t);

/// E_a(exp(−q l^{−1}(a,t) − Σ p_j l(a_j, l^{−1}(a,t))); l^{−1}(a,t) < τ_b⁺ ∧ τ_c⁻).
/// Uses cor.a, cor.b, cor.c and cor.levels (or (a, p) when levels is unset).
double inv_lt_joint_transform(const ScaleContext& ctx, const Corridor& cor, double t);
/// The exponent of inv_lt_joint_transform per unit t.
double inv_lt_joint_rate(const ScaleContext& ctx, const Corridor& cor);

/// E_a(e^{−L(l^{−1}(a,t))}; l^{−1}(a,t) < τ_b⁺ ∧ τ_c⁻) from a solved grid on
/// [c, b] whose mesh contains a.
double occu_inv_lt_transform(const OmegaGrid& grid, double a, double t);

}  // namespace snlt

#endif  // SNLT_LOCAL_TIME_LAWS_HPP
