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
#ifndef SNLT_SCALE_FN_HPP
#define SNLT_SCALE_FN_HPP

#include <memory>
#include <string>
#include <variant>

#include "snlt/levy_model.hpp"

namespace snlt {

/// Use the closed form for the model's family: Brownian motion with drift
/// (hyperbolic form) or exponential jumps (partial fractions of 1/(ψ(s)−q)).
/// Falls back to inversion when the partial fractions are degenerate.
struct ClosedForm {};

/// Fixed-Talbot inversion of the damped transform 1/(ψ(s+Φ(q)) − q).
struct NumericInversion {
  int nodes = 32;
};

using ScaleMethod = std::variant<ClosedForm, NumericInversion>;

enum class ScaleFamily { Brownian, ExpJumpPartialFractions, Inversion };

std::string to_string(ScaleFamily f);

/// A (model, q) pair together with an evaluation strategy for W^(q), Z^(q)
/// and ∂_q W^(q).
///
/// W^(q)(x) = 0 for x < 0 and Z^(q)(x) = 1 for x <= 0. The scalar getters throw
/// OverflowError instead of returning infinity; ratio-type formulas should use
/// log_w / log_z. Contexts are cheap to copy and safe to share across threads.
class ScaleContext {
 public:
  ScaleContext(const LevyModel& model, double q, ScaleMethod method = ClosedForm{});

  const LevyModel& model() const noexcept;
  double q() const noexcept;
  const PhiSolve& phi() const noexcept;
  ScaleFamily family() const noexcept;
  const ScaleMethod& method() const noexcept;

  /// Same model and method at another q.
  ScaleContext with_q(double q) const;

  double w(double x) const;
  double z(double x) const;
  /// ∂_q W^(q)(x) = (W^(q) * W^(q))(x). Analytic for the closed-form families,
  /// adaptive quadrature of the self-convolution otherwise.
  double dwdq(double x) const;
  /// The self-convolution evaluated by adaptive Gauss–Kronrod quadrature,
  /// whatever the family.
  double dwdq_convolution(double x, double rel_tol = 1e-11) const;

  /// log W^(q)(x); -infinity for x <= 0.
  double log_w(double x) const;
  /// log Z^(q)(x); 0 for x <= 0.
  double log_z(double x) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace snlt

#endif  // SNLT_SCALE_FN_HPP
