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
#ifndef SNLT_GEN_SCALE_HPP
#define SNLT_GEN_SCALE_HPP

#include <vector>

#include <Eigen/Dense>

#include "snlt/scale_fn.hpp"

namespace snlt {

/// Levels a₁ < … < aₙ with weights p₁, …, pₙ >= 0. The killing rate q lives in
/// the ScaleContext the functions are evaluated with.
class LevelWeights {
 public:
  static constexpr std::size_t kMaxLevels = 64;

  LevelWeights() = default;
  /// Throws DomainError unless 1 <= n <= 64, levels increase by more than
  /// 1e-12 and all weights are finite and nonnegative.
  LevelWeights(std::vector<double> levels, std::vector<double> weights);
  static LevelWeights single(double a, double p) { return LevelWeights({a}, {p}); }

  std::size_t size() const noexcept { return levels_.size(); }
  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double level(std::size_t k) const { return levels_.at(k); }
  double weight(std::size_t k) const { return weights_.at(k); }
  bool all_zero() const noexcept;

 private:
  std::vector<double> levels_;
  std::vector<double> weights_;
};

/// Σ = (W(a_i − a_j)), α(x) = (W(x − a_i)), β(y) = (W(a_i − y)),
/// γ = (Z(a_i − c)) and Λ = diag(p).
struct GenScaleMatrices {
  Eigen::MatrixXd Sigma;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
  Eigen::VectorXd lambda;
};

/// Builds the matrices at (x, y) with γ taken at c = y.
GenScaleMatrices gen_scale_matrices(const LevelWeights& lw, const ScaleContext& ctx, double x, double y);

/// 𝖶(x, y) through the defining recursion over the levels.
double gen_w_recursive(const LevelWeights& lw, const ScaleContext& ctx, double x, double y);
/// 𝖹(x, c) through the recursion. Throws DomainError if a₁ <= c.
double gen_z_recursive(const LevelWeights& lw, const ScaleContext& ctx, double x, double c);

/// Bordered determinants, evaluated by LU.
double gen_w_det(const LevelWeights& lw, const ScaleContext& ctx, double x, double y);
double gen_z_det(const LevelWeights& lw, const ScaleContext& ctx, double x, double c);

/// (𝖶(a_i, y))_i from the unit lower triangular system v = β(y) + ΣΛv.
Eigen::VectorXd gen_w_linear_system(const LevelWeights& lw, const ScaleContext& ctx, double y);
/// (𝖹(a_i, c))_i from v = γ + ΣΛv.
Eigen::VectorXd gen_z_linear_system(const LevelWeights& lw, const ScaleContext& ctx, double c);

/// Forward substitution: 𝖶(x, y) = W(x − y) + Σ_k W(x − a_k) p_k 𝖶(a_k, y).
double gen_w(const LevelWeights& lw, const ScaleContext& ctx, double x, double y);
double gen_z(const LevelWeights& lw, const ScaleContext& ctx, double x, double c);

/// Logarithms of gen_w / gen_z without overflow: every quantity is scaled by
/// e^{−Φ(q)·distance} before the forward substitution. log 𝖶 is −∞ for x <= y.
double gen_log_w(const LevelWeights& lw, const ScaleContext& ctx, double x, double y);
double gen_log_z(const LevelWeights& lw, const ScaleContext& ctx, double x, double c);

}  // namespace snlt

#endif  // SNLT_GEN_SCALE_HPP
