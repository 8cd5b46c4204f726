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
#include "snlt/gen_scale.hpp"

#include <cmath>
#include <limits>

#include "snlt/error.hpp"

namespace snlt {

LevelWeights::LevelWeights(std::vector<double> levels, std::vector<double> weights)
    : levels_(std::move(levels)), weights_(std::move(weights)) {
  if (levels_.empty()) throw DomainError("LevelWeights: at least one level is required");
  if (levels_.size() > kMaxLevels) throw DomainError("LevelWeights: at most 64 levels are supported");
  if (levels_.size() != weights_.size()) throw DomainError("LevelWeights: levels and weights differ in length");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (!std::isfinite(levels_[k])) throw DomainError("LevelWeights: non-finite level");
    if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k])) {
      throw DomainError("LevelWeights: weights must be finite and nonnegative");
    }
    if (k > 0 && !(levels_[k] - levels_[k - 1] > 1e-12)) {
      throw DomainError("LevelWeights: levels must be strictly increasing (gap > 1e-12)");
    }
  }
}

bool LevelWeights::all_zero() const noexcept {
  for (double p : weights_) {
    if (p != 0.0) return false;
  }
  return true;
}

GenScaleMatrices gen_scale_matrices(const LevelWeights& lw, const ScaleContext& ctx, double x, double y) {
  const auto n = static_cast<Eigen::Index>(lw.size());
  GenScaleMatrices m;
  m.Sigma.resize(n, n);
  m.alpha.resize(n);
  m.beta.resize(n);
  m.gamma.resize(n);
  m.lambda.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ai = lw.level(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < n; ++j) m.Sigma(i, j) = ctx.w(ai - lw.level(static_cast<std::size_t>(j)));
    m.alpha(i) = ctx.w(x - ai);
    m.beta(i) = ctx.w(ai - y);
    m.gamma(i) = ctx.z(ai - y);
    m.lambda(i) = lw.weight(static_cast<std::size_t>(i));
  }
  return m;
}

namespace {

// T_0(z) = seed(z); T_k(z) = T_{k−1}(z) + p_k W(z − a_k) T_{k−1}(a_k),
// tracked at z = a_1..a_n and at z = x.
template <class Seed>
double recurse(const LevelWeights& lw, const ScaleContext& ctx, double x, Seed seed) {
  const std::size_t n = lw.size();
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i < n; ++i) t[i] = seed(lw.level(i));
  t[n] = seed(x);
  for (std::size_t k = 0; k < n; ++k) {
    const double ak = lw.level(k);
    const double tk = t[k];
    const double pk = lw.weight(k);
    for (std::size_t i = k + 1; i < n; ++i) t[i] += pk * ctx.w(lw.level(i) - ak) * tk;
    t[n] += pk * ctx.w(x - ak) * tk;
  }
  return t[n];
}

double bordered_det(double corner, const Eigen::VectorXd& row, const Eigen::VectorXd& col, const Eigen::MatrixXd& body) {
  const Eigen::Index n = body.rows();
  Eigen::MatrixXd m(n + 1, n + 1);
  m(0, 0) = corner;
  m.block(0, 1, 1, n) = row.transpose();
  m.block(1, 0, n, 1) = col;
  m.block(1, 1, n, n) = body;
  return m.partialPivLu().determinant();
}

Eigen::VectorXd forward_solve(const LevelWeights& lw, const ScaleContext& ctx, const Eigen::VectorXd& rhs) {
  const std::size_t n = lw.size();
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs(static_cast<Eigen::Index>(i));
    for (std::size_t k = 0; k < i; ++k) s += ctx.w(lw.level(i) - lw.level(k)) * lw.weight(k) * v(static_cast<Eigen::Index>(k));
    v(static_cast<Eigen::Index>(i)) = s;
  }
  return v;
}

// Scaled W: e^{−Φ z} W(z), bounded on [0, ∞).
double scaled_w(const ScaleContext& ctx, double z) {
  if (z <= 0.0) return 0.0;
  return std::exp(ctx.log_w(z) - ctx.phi().phi * z);
}

double scaled_z(const ScaleContext& ctx, double z) {
  if (z <= 0.0) return std::exp(-ctx.phi().phi * z);
  return std::exp(ctx.log_z(z) - ctx.phi().phi * z);
}

// log of seed(x − y) + Σ_k W(x − a_k) p_k v_k with v the forward-substituted
// values at the levels, all carried as e^{−Φ(· − y)} multiples.
template <class ScaledSeed>
double log_forward(const LevelWeights& lw, const ScaleContext& ctx, double x, double y, ScaledSeed seed) {
  const std::size_t n = lw.size();
  const double phi = ctx.phi().phi;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = lw.level(i);
    double s = seed(ai - y);
    for (std::size_t k = 0; k < i; ++k) s += scaled_w(ctx, ai - lw.level(k)) * lw.weight(k) * v[k];
    v[i] = s;
  }
  double s = seed(x - y);
  for (std::size_t k = 0; k < n; ++k) s += scaled_w(ctx, x - lw.level(k)) * lw.weight(k) * v[k];
  if (!(s > 0.0)) return -std::numeric_limits<double>::infinity();
  return phi * (x - y) + std::log(s);
}

}  // namespace

double gen_w_recursive(const LevelWeights& lw, const ScaleContext& ctx, double x, double y) {
  return check_finite(recurse(lw, ctx, x, [&](double z) { return ctx.w(z - y); }), "gen_w_recursive");
}

double gen_z_recursive(const LevelWeights& lw, const ScaleContext& ctx, double x, double c) {
  if (!(lw.level(0) > c)) throw DomainError("gen_z: the lowest level must lie above c");
  return check_finite(recurse(lw, ctx, x, [&](double z) { return ctx.z(z - c); }), "gen_z_recursive");
}

double gen_w_det(const LevelWeights& lw, const ScaleContext& ctx, double x, double y) {
  const auto m = gen_scale_matrices(lw, ctx, x, y);
  const auto n = static_cast<Eigen::Index>(lw.size());
  const Eigen::MatrixXd body = Eigen::MatrixXd::Identity(n, n) - m.lambda.asDiagonal() * m.Sigma;
  const Eigen::VectorXd col = -(m.lambda.array() * m.beta.array()).matrix();
  return check_finite(bordered_det(ctx.w(x - y), m.alpha, col, body), "gen_w_det");
}

double gen_z_det(const LevelWeights& lw, const ScaleContext& ctx, double x, double c) {
  if (!(lw.level(0) > c)) throw DomainError("gen_z: the lowest level must lie above c");
  const auto m = gen_scale_matrices(lw, ctx, x, c);
  const auto n = static_cast<Eigen::Index>(lw.size());
  const Eigen::MatrixXd body = Eigen::MatrixXd::Identity(n, n) - m.lambda.asDiagonal() * m.Sigma;
  const Eigen::VectorXd col = -(m.lambda.array() * m.gamma.array()).matrix();
  return check_finite(bordered_det(ctx.z(x - c), m.alpha, col, body), "gen_z_det");
}

Eigen::VectorXd gen_w_linear_system(const LevelWeights& lw, const ScaleContext& ctx, double y) {
  Eigen::VectorXd beta(static_cast<Eigen::Index>(lw.size()));
  for (std::size_t i = 0; i < lw.size(); ++i) beta(static_cast<Eigen::Index>(i)) = ctx.w(lw.level(i) - y);
  return forward_solve(lw, ctx, beta);
}

Eigen::VectorXd gen_z_linear_system(const LevelWeights& lw, const ScaleContext& ctx, double c) {
  if (!(lw.level(0) > c)) throw DomainError("gen_z: the lowest level must lie above c");
  Eigen::VectorXd gamma(static_cast<Eigen::Index>(lw.size()));
  for (std::size_t i = 0; i < lw.size(); ++i) gamma(static_cast<Eigen::Index>(i)) = ctx.z(lw.level(i) - c);
  return forward_solve(lw, ctx, gamma);
}

double gen_w(const LevelWeights& lw, const ScaleContext& ctx, double x, double y) {
  const Eigen::VectorXd v = gen_w_linear_system(lw, ctx, y);
  double s = ctx.w(x - y);
  for (std::size_t k = 0; k < lw.size(); ++k) s += ctx.w(x - lw.level(k)) * lw.weight(k) * v(static_cast<Eigen::Index>(k));
  return check_finite(s, "gen_w");
}

double gen_z(const LevelWeights& lw, const ScaleContext& ctx, double x, double c) {
  const Eigen::VectorXd v = gen_z_linear_system(lw, ctx, c);
  double s = ctx.z(x - c);
  for (std::size_t k = 0; k < lw.size(); ++k) s += ctx.w(x - lw.level(k)) * lw.weight(k) * v(static_cast<Eigen::Index>(k));
  return check_finite(s, "gen_z");
}

double gen_log_w(const LevelWeights& lw, const ScaleContext& ctx, double x, double y) {
  if (x <= y) return -std::numeric_limits<double>::infinity();
  return log_forward(lw, ctx, x, y, [&](double z) { return scaled_w(ctx, z); });
}

double gen_log_z(const LevelWeights& lw, const ScaleContext& ctx, double x, double c) {
  if (!(lw.level(0) > c)) throw DomainError("gen_z: the lowest level must lie above c");
  return log_forward(lw, ctx, x, c, [&](double z) { return scaled_z(ctx, z); });
}

}  // namespace snlt
