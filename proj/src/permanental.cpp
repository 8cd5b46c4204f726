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
#include "snlt/permanental.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "snlt/error.hpp"

namespace snlt {

PotentialKernel::PotentialKernel(ScaleContext ctx, double b, double c) : ctx_(std::move(ctx)), b_(b), c_(c) {
  if (!std::isfinite(b) || !std::isfinite(c) || !(c < b)) throw DomainError("PotentialKernel: need finite c < b");
}

double PotentialKernel::operator()(double x, double y) const {
  if (!(x > c_ && x < b_ && y > c_ && y < b_)) throw DomainError("potential density: arguments must lie in (c, b)");
  const double lbc = ctx_.log_w(b_ - c_);
  return std::exp(ctx_.log_w(x - c_) - lbc + ctx_.log_w(b_ - y)) - ctx_.w(x - y);
}

Eigen::MatrixXd PotentialKernel::matrix(const std::vector<double>& levels) const {
  const auto n = static_cast<Eigen::Index>(levels.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = (*this)(levels[static_cast<std::size_t>(i)], levels[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

double potential_density(const ScaleContext& ctx, double b, double c, double x, double y) {
  return PotentialKernel(ctx, b, c)(x, y);
}

namespace {

Eigen::MatrixXd i_plus_lambda_g(const PotentialKernel& k, const LevelWeights& lw) {
  const Eigen::MatrixXd g = k.matrix(lw.levels());
  const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(lw.weights().data(), static_cast<Eigen::Index>(lw.size()));
  return Eigen::MatrixXd::Identity(g.rows(), g.cols()) + p.asDiagonal() * g;
}

// det [[d, uᵀ], [v, M]] = det(M) (d − uᵀ M⁻¹ v): one step of block elimination.
double bordered(double d, const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::MatrixXd& m) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  return lu.determinant() * (d - u.dot(lu.solve(v)));
}

void check_levels_inside(const PotentialKernel& k, const LevelWeights& lw) {
  for (double l : lw.levels()) {
    if (!(l > k.c() && l < k.b())) throw DomainError("levels must lie in (c, b)");
  }
}

struct BorderParts {
  double gaa;
  Eigen::VectorXd row;
  Eigen::VectorXd col;
};

BorderParts border(const PotentialKernel& k, double a, const LevelWeights& lw) {
  const auto n = static_cast<Eigen::Index>(lw.size());
  BorderParts b{k(a, a), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ai = lw.level(static_cast<std::size_t>(i));
    b.row(i) = k(a, ai);
    b.col(i) = lw.weight(static_cast<std::size_t>(i)) * k(ai, a);
  }
  return b;
}

double rel_gap(double u, double v) { return std::abs(u - v) / std::max(1.0, std::max(std::abs(u), std::abs(v))); }

}  // namespace

double permanental_laplace(const PotentialKernel& kernel, const LevelWeights& lw, double beta) {
  if (!(beta > 0.0)) throw DomainError("permanental_laplace: beta must be positive");
  check_levels_inside(kernel, lw);
  const double det = i_plus_lambda_g(kernel, lw).partialPivLu().determinant();
  if (!(det > 0.0)) throw ExistenceError("permanental_laplace: det(I + Lambda G) is not positive", det);
  return std::pow(det, -1.0 / beta);
}

TiltedTransform tilted_lt_transform(const PotentialKernel& kernel, double a, const LevelWeights& lw) {
  check_levels_inside(kernel, lw);
  if (!(a > kernel.c() && a < kernel.b())) throw DomainError("tilted_lt_transform: a must lie in (c, b)");
  const ScaleContext& ctx = kernel.context();
  const double b = kernel.b();
  const double c = kernel.c();
  const BorderParts bp = border(kernel, a, lw);
  if (!(bp.gaa > 0.0)) throw DegenerateError("tilted_lt_transform: g(a, a) = 0");
  TiltedTransform t;
  t.scale_route = std::exp(gen_log_w(lw, ctx, b, a) + gen_log_w(lw, ctx, a, c) - gen_log_w(lw, ctx, b, c)) / bp.gaa;
  const Eigen::MatrixXd m = i_plus_lambda_g(kernel, lw);
  t.determinant_route = bordered(bp.gaa, bp.row, bp.col, m) / (m.partialPivLu().determinant() * bp.gaa);
  return t;
}

IsomorphismCheck isomorphism_check(const PotentialKernel& kernel, double a, const LevelWeights& lw) {
  check_levels_inside(kernel, lw);
  if (!(a > kernel.c() && a < kernel.b())) throw DomainError("isomorphism_check: a must lie in (c, b)");
  const ScaleContext& ctx = kernel.context();
  const double b = kernel.b();
  const double c = kernel.c();
  const double lbc = ctx.log_w(b - c);
  IsomorphismCheck r;
  const Eigen::MatrixXd m = i_plus_lambda_g(kernel, lw);
  r.lhs_det = std::exp(gen_log_w(lw, ctx, b, c) - lbc);
  r.rhs_det = m.partialPivLu().determinant();
  r.lhs_bordered = std::exp(gen_log_w(lw, ctx, b, a) + gen_log_w(lw, ctx, a, c) - lbc);
  const BorderParts bp = border(kernel, a, lw);
  r.rhs_bordered = bordered(bp.gaa, bp.row, bp.col, m);
  r.abs_gap = std::max(rel_gap(r.lhs_det, r.rhs_det), rel_gap(r.lhs_bordered, r.rhs_bordered));
  return r;
}

LoopSoup loop_soup_functional(const PotentialKernel& kernel, const LevelWeights& lw, double tol) {
  check_levels_inside(kernel, lw);
  const ScaleContext& ctx = kernel.context();
  LoopSoup s;
  const double det = i_plus_lambda_g(kernel, lw).partialPivLu().determinant();
  if (!(det > 0.0)) throw ExistenceError("loop_soup_functional: det(I + Lambda G) is not positive", det);
  s.log_det = std::log(det);
  s.log_scale = gen_log_w(lw, ctx, kernel.b(), kernel.c()) - ctx.log_w(kernel.b() - kernel.c());
  s.gap = std::abs(s.log_det - s.log_scale);
  s.value = s.log_scale;
  if (s.gap > tol * std::max(1.0, std::abs(s.value))) {
    throw ConsistencyError("loop_soup_functional: determinant and scale-function routes disagree");
  }
  return s;
}

LogDerivCheck logderiv_identity_check(const ScaleContext& ctx, double b, double c) {
  if (!std::isfinite(b) || !std::isfinite(c) || !(b > c)) throw DomainError("logderiv_identity_check: need b > c");
  const double lbc = ctx.log_w(b - c);
  auto integrand = [&](double a) {
    if (a <= c || a >= b) return 0.0;
    return std::exp(ctx.log_w(b - a) + ctx.log_w(a - c) - lbc);
  };
  LogDerivCheck r;
  double err = 0.0;
  r.lhs = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, c, b, 15, 1e-13, &err);
  r.rhs = ctx.dwdq(b - c) / std::exp(lbc);
  r.gap = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace snlt
