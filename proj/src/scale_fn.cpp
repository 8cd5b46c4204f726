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
#include "snlt/scale_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "snlt/error.hpp"
#include "snlt/laplace_inversion.hpp"

namespace snlt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sinh(d x) / d) for d >= 0, x > 0
double log_sinhc(double d, double x) {
  const double u = d * x;
  if (u == 0.0) return std::log(x);
  if (u > 20.0) return u - std::log(2.0 * d) + std::log1p(-std::exp(-2.0 * u));
  return std::log(std::sinh(u) / d);
}

// W(x) = (2/σ²) e^{−γx/σ²} sinh(δx)/δ,  δ = √(γ² + 2σ²q)/σ²
struct BrownianForm {
  double sig2;
  double gamma;
  double q;
  double delta;

  BrownianForm(const LevyModel& m, double q_) : sig2(m.sigma() * m.sigma()), gamma(m.gamma()), q(q_) {
    delta = std::sqrt(gamma * gamma + 2.0 * sig2 * q) / sig2;
  }

  double s_plus() const { return -gamma / sig2 + delta; }
  double s_minus() const { return -gamma / sig2 - delta; }

  double log_w(double x) const { return std::log(2.0 / sig2) - gamma * x / sig2 + log_sinhc(delta, x); }

  double w(double x) const {
    const double u = delta * x;
    if (u > 20.0 || std::abs(gamma * x / sig2) > 20.0) return std::exp(log_w(x));
    const double sinhc = u == 0.0 ? x : std::sinh(u) / delta;
    return 2.0 / sig2 * std::exp(-gamma * x / sig2) * sinhc;
  }

  double z(double x) const {
    if (q == 0.0) return 1.0;
    const double sp = s_plus();
    const double sm = s_minus();
    if (sp * x > 30.0) return std::exp(log_z(x));
    return 1.0 + q / (sig2 * delta) * (std::expm1(sp * x) / sp - std::expm1(sm * x) / sm);
  }

  double log_z(double x) const {
    if (q == 0.0) return 0.0;
    const double sp = s_plus();
    const double sm = s_minus();
    if (sp * x <= 30.0) return std::log(z(x));
    const double k = q / (sig2 * delta);
    const double rest = 1.0 + k * (-1.0 / sp + 1.0 / sm - std::exp(sm * x) / sm);
    return sp * x + std::log(k / sp + std::exp(-sp * x) * rest);
  }

  // (2/σ⁴) e^{−γx/σ²} (xδ cosh δx − sinh δx)/δ³
  double dwdq(double x) const {
    const double u = delta * x;
    double core;
    if (u < 1e-2) {
      const double u2 = u * u;
      core = x * x * x * (1.0 / 3.0 + u2 / 30.0 + u2 * u2 / 840.0);
    } else if (u > 20.0) {
      // xδ cosh u − sinh u ≈ e^u (xδ − 1)/2
      const double lg = u + std::log(0.5 * (u - 1.0)) - 3.0 * std::log(delta) - gamma * x / sig2;
      return check_finite(2.0 / (sig2 * sig2) * std::exp(lg), "dwdq");
    } else {
      core = (u * std::cosh(u) - std::sinh(u)) / (delta * delta * delta);
    }
    return check_finite(2.0 / (sig2 * sig2) * std::exp(-gamma * x / sig2) * core, "dwdq");
  }
};

// W(x) = Σ A_i (e^{r_i x} − 1) over the three roots of ψ(s) = q, which holds
// because Σ A_i = 0 when σ > 0.
struct ExpSumForm {
  std::array<double, 3> r{};
  std::array<double, 3> A{};
  double q = 0.0;
  std::size_t imax = 0;

  double w(double x) const {
    if (r[imax] * x > 30.0) return std::exp(log_w(x));
    double v = 0.0;
    for (std::size_t i = 0; i < 3; ++i) v += A[i] * std::expm1(r[i] * x);
    return std::max(v, 0.0);
  }

  double log_w(double x) const {
    const double rm = r[imax];
    if (rm * x <= 30.0) return std::log(w(x));
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += A[i] * std::exp((r[i] - rm) * x);
    return rm * x + std::log(s);
  }

  double z(double x) const {
    if (q == 0.0) return 1.0;
    if (r[imax] * x > 30.0) return std::exp(log_z(x));
    double v = 0.0;
    for (std::size_t i = 0; i < 3; ++i) v += A[i] * std::expm1(r[i] * x) / r[i];
    return 1.0 + q * v;
  }

  double log_z(double x) const {
    if (q == 0.0) return 0.0;
    const double rm = r[imax];
    if (rm * x <= 30.0) return std::log(z(x));
    double c0 = 1.0;
    for (std::size_t i = 0; i < 3; ++i) c0 -= q * A[i] / r[i];
    double s = c0 * std::exp(-rm * x);
    for (std::size_t i = 0; i < 3; ++i) s += q * A[i] / r[i] * std::exp((r[i] - rm) * x);
    return rm * x + std::log(s);
  }

  // Σ_ij A_i A_j ∫₀ˣ e^{r_i(x−y)} e^{r_j y} dy
  double dwdq(double x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double c = i == j ? x * std::exp(r[i] * x)
                                : (std::exp(r[j] * x) - std::exp(r[i] * x)) / (r[j] - r[i]);
        v += A[i] * A[j] * c;
      }
    }
    return check_finite(std::max(v, 0.0), "dwdq");
  }
};

struct InversionForm {
  LevyModel model;
  double q;
  double phi;
  int nodes;
  mutable std::mutex mu;
  mutable std::unordered_map<double, double> cache;  // x -> e^{-Φx} W(x)

  InversionForm(const LevyModel& m, double q_, double phi_, int nodes_) : model(m), q(q_), phi(phi_), nodes(nodes_) {}

  double damped_w(double x) const {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (auto it = cache.find(x); it != cache.end()) return it->second;
    }
    using cplx = std::complex<long double>;
    const long double ph = phi;
    const long double qq = q;
    const double v = talbot_invert([&](cplx s) { return 1.0L / (model.psi(s + ph) - qq); }, x, nodes);
    if (!(v >= 0.0) && v < -1e-12) throw NumericError("inversion of W produced a negative value");
    const double out = std::max(v, 0.0);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 2000000) cache.clear();
    cache.emplace(x, out);
    return out;
  }

  double damped_z(double x) const {
    using cplx = std::complex<long double>;
    const long double ph = phi;
    const long double qq = q;
    return talbot_invert(
        [&](cplx s) {
          const cplx u = s + ph;
          const cplx p = model.psi(u);
          return p / (u * (p - qq));
        },
        x, nodes);
  }

  double w(double x) const { return std::exp(phi * x) * damped_w(x); }
  double log_w(double x) const { return phi * x + std::log(damped_w(x)); }
  double z(double x) const { return q == 0.0 ? 1.0 : std::exp(phi * x) * damped_z(x); }
  double log_z(double x) const { return q == 0.0 ? 0.0 : phi * x + std::log(damped_z(x)); }
};

// Roots of (ψ(s) − q)(s + ρ) = c3 s³ + c2 s² + c1 s + c0; returns false when
// two roots are too close for stable partial fractions.
bool exp_sum_roots(const LevyModel& m, double q, double phi, ExpSumForm& out) {
  const auto& j = std::get<ExpJumps>(m.jumps());
  const double rho = 1.0 / j.mean_jump;
  const double lam = j.rate;
  const double s2 = m.sigma() * m.sigma();
  const double g = m.gamma();
  const double c3 = 0.5 * s2;
  const double c2 = 0.5 * s2 * rho + g;
  const double c1 = g * rho - lam - q;
  const double c0 = -q * rho;

  // deflate by the known root Φ(q)
  const double b2 = c3;
  const double b1 = c2 + phi * b2;
  const double b0 = c1 + phi * b1;
  const double disc = b1 * b1 - 4.0 * b2 * b0;
  if (disc < 0.0) return false;
  const double sq = std::sqrt(disc);
  const double t = -0.5 * (b1 + std::copysign(sq, b1));
  double r1 = t / b2;
  double r2 = t != 0.0 ? b0 / t : -b1 / b2 - r1;
  std::array<double, 3> r{phi, r1, r2};

  auto poly = [&](double s) { return ((c3 * s + c2) * s + c1) * s + c0; };
  auto dpoly = [&](double s) { return (3.0 * c3 * s + 2.0 * c2) * s + c1; };
  for (auto& root : r) {
    for (int it = 0; it < 3; ++it) {
      const double d = dpoly(root);
      if (d == 0.0) break;
      root -= poly(root) / d;
    }
  }
  out.r = r;
  out.q = q;
  const double scale = std::max({1.0, std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  for (std::size_t i = 0; i < 3; ++i) {
    double den = c3;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k == i) continue;
      if (std::abs(r[i] - r[k]) < 1e-7 * scale) return false;
      den *= r[i] - r[k];
    }
    out.A[i] = (r[i] + rho) / den;
  }
  out.imax = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
  return true;
}

}  // namespace

std::string to_string(ScaleFamily f) {
  switch (f) {
    case ScaleFamily::Brownian: return "brownian";
    case ScaleFamily::ExpJumpPartialFractions: return "exp-jump-partial-fractions";
    case ScaleFamily::Inversion: return "inversion";
  }
  return "unknown";
}

struct ScaleContext::Impl {
  LevyModel model;
  double q;
  ScaleMethod method;
  PhiSolve phi;
  ScaleFamily family;
  std::variant<BrownianForm, ExpSumForm, std::unique_ptr<InversionForm>> form;

  Impl(const LevyModel& m, double q_, ScaleMethod meth)
      : model(m), q(q_), method(meth), phi(phi_inverse(m, q_)), family(ScaleFamily::Inversion),
        form(std::unique_ptr<InversionForm>()) {
    model.require_unbounded_variation();
    int nodes = 32;
    if (const auto* inv = std::get_if<NumericInversion>(&method)) {
      nodes = inv->nodes;
    } else if (!model.has_jumps()) {
      family = ScaleFamily::Brownian;
      form = BrownianForm(model, q);
      return;
    } else {
      ExpSumForm es;
      if (exp_sum_roots(model, q, phi.phi, es)) {
        family = ScaleFamily::ExpJumpPartialFractions;
        form = es;
        return;
      }
    }
    family = ScaleFamily::Inversion;
    form = std::make_unique<InversionForm>(model, q, phi.phi, nodes);
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(
        [&](const auto& alt) -> decltype(auto) {
          using T = std::decay_t<decltype(alt)>;
          if constexpr (std::is_same_v<T, std::unique_ptr<InversionForm>>) {
            return f(*alt);
          } else {
            return f(alt);
          }
        },
        form);
  }
};

ScaleContext::ScaleContext(const LevyModel& model, double q, ScaleMethod method) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("ScaleContext: q must be finite and nonnegative");
  if (const auto* inv = std::get_if<NumericInversion>(&method)) {
    if (inv->nodes < 8 || inv->nodes > 200) throw DomainError("ScaleContext: inversion nodes must be in [8, 200]");
  }
  impl_ = std::make_shared<const Impl>(model, q, method);
}

const LevyModel& ScaleContext::model() const noexcept { return impl_->model; }
double ScaleContext::q() const noexcept { return impl_->q; }
const PhiSolve& ScaleContext::phi() const noexcept { return impl_->phi; }
ScaleFamily ScaleContext::family() const noexcept { return impl_->family; }
const ScaleMethod& ScaleContext::method() const noexcept { return impl_->method; }

ScaleContext ScaleContext::with_q(double q) const { return ScaleContext(impl_->model, q, impl_->method); }

double ScaleContext::w(double x) const {
  if (std::isnan(x)) throw DomainError("w: x is NaN");
  if (x <= 0.0) return 0.0;
  return check_finite(impl_->visit([x](const auto& f) { return f.w(x); }), "w");
}

double ScaleContext::z(double x) const {
  if (std::isnan(x)) throw DomainError("z: x is NaN");
  if (x <= 0.0) return 1.0;
  return check_finite(impl_->visit([x](const auto& f) { return f.z(x); }), "z");
}

double ScaleContext::log_w(double x) const {
  if (std::isnan(x)) throw DomainError("log_w: x is NaN");
  if (x <= 0.0) return kNegInf;
  return impl_->visit([x](const auto& f) { return f.log_w(x); });
}

double ScaleContext::log_z(double x) const {
  if (std::isnan(x)) throw DomainError("log_z: x is NaN");
  if (x <= 0.0) return 0.0;
  return impl_->visit([x](const auto& f) { return f.log_z(x); });
}

double ScaleContext::dwdq(double x) const {
  if (!(x >= 0.0)) throw DomainError("dwdq: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (const auto* b = std::get_if<BrownianForm>(&impl_->form)) return b->dwdq(x);
  if (const auto* e = std::get_if<ExpSumForm>(&impl_->form)) return e->dwdq(x);
  return dwdq_convolution(x);
}

double ScaleContext::dwdq_convolution(double x, double rel_tol) const {
  if (!(x >= 0.0)) throw DomainError("dwdq_convolution: x must be nonnegative");
  if (x == 0.0) return 0.0;
  double err = 0.0;
  auto integrand = [&](double y) { return w(x - y) * w(y); };
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, x, 15, rel_tol, &err);
  if (!std::isfinite(v) || err > 1e3 * rel_tol * std::abs(v) + 1e-300) {
    throw NumericError("dwdq_convolution: quadrature did not reach the requested tolerance");
  }
  return v;
}

}  // namespace snlt
