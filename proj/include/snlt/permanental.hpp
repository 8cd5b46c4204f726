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
#ifndef SNLT_PERMANENTAL_HPP
#define SNLT_PERMANENTAL_HPP

#include <Eigen/Dense>

#include "snlt/gen_scale.hpp"

namespace snlt {

/// Potential density of X killed on leaving [c, b] or at e_q, with respect
/// to Lebesgue measure on (c, b):
///   g(x, y) = (W(x−c)/W(b−c)) W(b−y) − W(x−y).
class PotentialKernel {
 public:
  PotentialKernel(ScaleContext ctx, double b, double c);

  const ScaleContext& context() const noexcept { return ctx_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

  /// Throws DomainError outside (c, b)².
  double operator()(double x, double y) const;
  /// (g(a_i, a_j))_{ij}.
  Eigen::MatrixXd matrix(const std::vector<double>& levels) const;

 private:
  ScaleContext ctx_;
  double b_;
  double c_;
};

double potential_density(const ScaleContext& ctx, double b, double c, double x, double y);

/// det(I + ΛG)^{−1/β}. Throws ExistenceError when det(I + ΛG) <= 0.
double permanental_laplace(const PotentialKernel& kernel, const LevelWeights& lw, double beta = 2.0);

/// Both sides of the tilted transform Ẽ_a(exp(−Σ p_j l(a_j, ∞))).
struct TiltedTransform {
  /// 𝖶(b,a) 𝖶(a,c) / (𝖶(b,c) g(a,a)).
  double scale_route = 0.0;
  /// Bordered determinant / (det(I + ΛG) g(a,a)).
  double determinant_route = 0.0;
};
TiltedTransform tilted_lt_transform(const PotentialKernel& kernel, double a, const LevelWeights& lw);

struct IsomorphismCheck {
  double lhs_det = 0.0;       // 𝖶(b,c)/W(b−c)
  double rhs_det = 0.0;       // det(I + ΛG)
  double lhs_bordered = 0.0;  // 𝖶(b,a) 𝖶(a,c)/W(b−c)
  double rhs_bordered = 0.0;  // det [[g(a,a), g(a,a_j)], [Λ g(a_i,a), I + ΛG]]
  double abs_gap = 0.0;       // largest relative discrepancy of the two pairs
};
IsomorphismCheck isomorphism_check(const PotentialKernel& kernel, double a, const LevelWeights& lw);

/// ln det(I + ΛG) and ln(𝖶(b,c)/W(b−c)); throws ConsistencyError when they
/// differ by more than tol (relative to max(1, value)).
struct LoopSoup {
  double log_det = 0.0;
  double log_scale = 0.0;
  double value = 0.0;
  double gap = 0.0;
};
LoopSoup loop_soup_functional(const PotentialKernel& kernel, const LevelWeights& lw, double tol = 1e-8);

/// ∫_c^b W(b−a) W(a−c) / W(b−c) da against ∂_q W^(q)(b−c) / W^(q)(b−c), both at
/// the q of ctx (shift q by λ to get the λ-derivative form).
struct LogDerivCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};
LogDerivCheck logderiv_identity_check(const ScaleContext& ctx, double b, double c);

}  // namespace snlt

#endif  // SNLT_PERMANENTAL_HPP
