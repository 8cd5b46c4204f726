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
#ifndef SNLT_LEVY_MODEL_HPP
#define SNLT_LEVY_MODEL_HPP

#include <complex>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

namespace snlt {

/// No jump part: X is a Brownian motion with drift.
struct NoJumps {};

/// Compound Poisson negative jumps with exponentially distributed sizes.
///
/// The Lévy measure is Π(dx) = rate · ρ e^{ρx} dx on x < 0 with ρ = 1/mean_jump.
/// The jumps have finite mean, so no compensator is subtracted: the γ field of
/// LevyModel is the true linear coefficient and
///   ψ(θ) = σ²θ²/2 + γθ + rate·(ρ/(ρ+θ) − 1).
struct ExpJumps {
  double rate = 0.0;
  double mean_jump = 1.0;
};

using JumpSpec = std::variant<NoJumps, ExpJumps>;

/// Spectrally negative Lévy process given by its Gaussian coefficient,
/// linear coefficient and (parametric) jump measure.
///
/// Construction enforces the invariants: sigma >= 0, finite parameters, and the
/// process is not the negative of a subordinator. Local-time laws additionally
/// require unbounded variation (sigma > 0); see require_unbounded_variation().
class LevyModel {
 public:
  LevyModel(double sigma, double gamma, JumpSpec jumps = NoJumps{});

  /// X_t = mu t + sigma B_t.
  static LevyModel brownian(double mu = 0.0, double sigma = 1.0);
  static LevyModel exp_jumps(double sigma, double gamma, double rate, double mean_jump);

  double sigma() const noexcept { return sigma_; }
  double gamma() const noexcept { return gamma_; }
  const JumpSpec& jumps() const noexcept { return jumps_; }
  bool has_jumps() const noexcept { return std::holds_alternative<ExpJumps>(jumps_); }

  /// Laplace exponent ψ(θ) for θ >= 0. Throws DomainError for θ < 0.
  double psi(double theta) const;
  /// First and second derivatives of ψ on [0, ∞).
  double psi_prime(double theta) const;
  double psi_second(double theta) const;
  /// Analytic continuation of ψ, used by the Bromwich inversion.
  std::complex<long double> psi(std::complex<long double> s) const;

  bool unbounded_variation() const noexcept { return sigma_ > 0.0; }
  /// Throws InvalidModelError unless sigma > 0.
  void require_unbounded_variation() const;

  std::string describe() const;

 private:
  double sigma_;
  double gamma_;
  JumpSpec jumps_;
};

/// Right inverse Φ(q) of ψ together with Φ'(q) and the solver residual.
struct PhiSolve {
  double q = 0.0;
  double phi = 0.0;
  /// +infinity exactly when q = 0 and ψ'(0) = 0.
  double phi_prime = 0.0;
  double residual = 0.0;

  bool phi_prime_infinite() const noexcept { return phi_prime == std::numeric_limits<double>::infinity(); }
};

/// Largest root of ψ(s) = q.
///
/// Brackets [Φ(0) side, s_hi] by doubling s_hi until ψ(s_hi) > q and then runs
/// Newton from the right, falling back to bisection when a step leaves the
/// bracket. Convergence test is |ψ(s) − q| <= tol · max(1, q).
PhiSolve phi_inverse(const LevyModel& model, double q, double tol = 1e-12);

/// Flat key/value model description (JSON object) with keys
/// sigma, gamma, jump_kind ("none" | "exp"), jump_rate, jump_mean.
LevyModel model_from_json(std::string_view text);
std::string model_to_json(const LevyModel& model);

}  // namespace snlt

#endif  // SNLT_LEVY_MODEL_HPP
