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
#ifndef SNLT_OMEGA_SCALE_HPP
#define SNLT_OMEGA_SCALE_HPP

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "snlt/scale_fn.hpp"

namespace snlt {

/// Nonnegative, locally bounded weight ω used for weighted occupation times
/// L(t) = ∫₀ᵗ ω(X_s) ds.
///
/// Besides pointwise evaluation every weight knows its exact integral over an
/// interval (the Volterra solver integrates ω cell by cell, so narrow spikes
/// are never missed) and its discontinuities.
class WeightFunction {
 public:
  /// ω ≡ q.
  static WeightFunction constant(double q);
  /// Piecewise constant: heights[0] below levels[0], heights[i] on
  /// [levels[i-1], levels[i]), heights.back() above levels.back().
  /// heights.size() must be levels.size() + 1.
  static WeightFunction step(std::vector<double> levels, std::vector<double> heights);
  /// (p / 2ε) 1{|x − a| <= ε}.
  static WeightFunction delta_approx(double a, double p, double eps);
  static WeightFunction sum(std::vector<WeightFunction> parts);
  /// Arbitrary evaluator; integrals fall back to adaptive quadrature.
  static WeightFunction custom(std::function<double(double)> f, std::string name,
                               std::vector<double> breakpoints = {});

  /// Text form used by the CLI: "const:q", "step:l1,l2,...:h0,h1,...",
  /// "delta:a,p,eps", and '+' to add terms.
  static WeightFunction parse(std::string_view text);

  double operator()(double x) const;
  double integral(double lo, double hi) const;
  /// Sorted discontinuities.
  std::vector<double> breakpoints() const;
  /// sup of ω over [lo, hi] (sampled for custom weights).
  double sup(double lo, double hi) const;
  bool is_zero() const;
  std::string describe() const;

  struct Node;

 private:
  explicit WeightFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Discretized ω-scale functions on a mesh of [c, b].
///
/// W^(ω)(x_i, x_j) is stored for j <= i (it vanishes above the diagonal) and
/// Z^(ω)(x_i, c) for every node. The kernel is W^(q0) of the base context, so
/// the grid represents the weight q0 + ω.
class OmegaGrid {
 public:
  const std::vector<double>& mesh() const noexcept { return mesh_; }
  double c() const noexcept { return mesh_.front(); }
  double b() const noexcept { return mesh_.back(); }
  double h() const noexcept { return h_; }
  bool uniform() const noexcept { return uniform_; }
  bool has_w() const noexcept { return !w_.empty(); }
  bool has_z() const noexcept { return !z_.empty(); }
  const ScaleContext& base() const noexcept { return base_; }
  const WeightFunction& omega() const noexcept { return omega_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  /// ∫ω over [x_k, x_{k+1}].
  const std::vector<double>& cell_weights() const noexcept { return cell_; }

  /// Index of the mesh node equal to x (within a small fraction of h).
  /// Throws DomainError when x is not a node.
  std::size_t index_of(double x) const;

  double w_at(std::size_t i, std::size_t j) const;
  double z_at(std::size_t i) const;
  /// W^(ω)(x, y) and Z^(ω)(x, c) at mesh nodes.
  double w(double x, double y) const;
  double z(double x) const;

  /// Grid dump: '#' header lines, then x,y,W rows; Z rows follow when solved.
  std::string to_csv() const;

 private:
  friend OmegaGrid solve_omega(const ScaleContext&, const WeightFunction&, double, double, double,
                               const std::vector<double>&, bool, bool);
  OmegaGrid(ScaleContext base, WeightFunction omega) : base_(std::move(base)), omega_(std::move(omega)) {}

  ScaleContext base_;
  WeightFunction omega_;
  std::vector<double> mesh_;
  std::vector<double> cell_;
  double h_ = 0.0;
  bool uniform_ = true;
  std::vector<double> w_;  // packed lower triangle, row i holds j = 0..i
  std::vector<double> z_;
  std::vector<std::string> warnings_;
};

/// Solves the Volterra equations
///   W^(ω)(x,y) = W(x−y) + ∫ᵧˣ W(x−z) ω(z) W^(ω)(z,y) dz
///   Z^(ω)(x,c) = 1 + ∫_cˣ W(x−z) ω(z) Z^(ω)(z,c) dz
/// with W = W^(q0) of `base`, by product trapezoid on a mesh of step about h.
/// The mesh contains c, b, the breakpoints of ω and `points`.
OmegaGrid solve_omega(const ScaleContext& base, const WeightFunction& omega, double c, double b, double h,
                      const std::vector<double>& points = {}, bool with_w = true, bool with_z = true);

/// Kernel W = W^(0) of the model.
OmegaGrid solve_w_omega(const LevyModel& model, const WeightFunction& omega, double c, double b, double h,
                        const std::vector<double>& points = {});
OmegaGrid solve_z_omega(const LevyModel& model, const WeightFunction& omega, double c, double b, double h,
                        const std::vector<double>& points = {});

struct ExitLaws {
  double up = 0.0;
  double down = 0.0;
};

/// E_x(e^{−L(τ_b⁺)}; τ_b⁺ < τ_c⁻) and E_x(e^{−L(τ_c⁻)}; τ_c⁻ < τ_b⁺).
ExitLaws omega_exit_laws(const OmegaGrid& grid, double x);

/// (W^(ω)(x,c)/W^(ω)(b,c)) W^(ω)(b,y) − W^(ω)(x,y).
double omega_resolvent(const OmegaGrid& grid, double x, double y);

}  // namespace snlt

#endif  // SNLT_OMEGA_SCALE_HPP
