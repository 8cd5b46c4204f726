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
#include "snlt/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "snlt/error.hpp"

namespace snlt {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

LevyModel::LevyModel(double sigma, double gamma, JumpSpec jumps)
    : sigma_(sigma), gamma_(gamma), jumps_(jumps) {
  if (!finite(sigma) || !finite(gamma)) throw InvalidModelError("sigma and gamma must be finite");
  if (sigma < 0.0) throw InvalidModelError("sigma must be nonnegative");
  if (const auto* j = std::get_if<ExpJumps>(&jumps_)) {
    if (!(j->rate > 0.0) || !finite(j->rate)) throw InvalidModelError("jump rate must be positive");
    if (!(j->mean_jump > 0.0) || !finite(j->mean_jump)) throw InvalidModelError("mean jump size must be positive");
    if (sigma == 0.0 && gamma <= 0.0)
      throw InvalidModelError("pure-jump model with gamma <= 0 is the negative of a subordinator");
  } else if (sigma == 0.0) {
    throw InvalidModelError("model without jumps needs sigma > 0");
  }
}

LevyModel LevyModel::brownian(double mu, double sigma) { return LevyModel(sigma, mu, NoJumps{}); }

LevyModel LevyModel::exp_jumps(double sigma, double gamma, double rate, double mean_jump) {
  return LevyModel(sigma, gamma, ExpJumps{rate, mean_jump});
}

double LevyModel::psi(double theta) const {
  if (!(theta >= 0.0)) throw DomainError("psi: theta must be nonnegative");
  double v = 0.5 * sigma_ * sigma_ * theta * theta + gamma_ * theta;
  if (const auto* j = std::get_if<ExpJumps>(&jumps_)) {
    const double rho = 1.0 / j->mean_jump;
    // λ(ρ/(ρ+θ) − 1) = −λθ/(ρ+θ), written without cancellation
    v -= j->rate * theta / (rho + theta);
  }
  return v;
}

double LevyModel::psi_prime(double theta) const {
  if (!(theta >= 0.0)) throw DomainError("psi_prime: theta must be nonnegative");
  double v = sigma_ * sigma_ * theta + gamma_;
  if (const auto* j = std::get_if<ExpJumps>(&jumps_)) {
    const double rho = 1.0 / j->mean_jump;
    v -= j->rate * rho / ((rho + theta) * (rho + theta));
  }
  return v;
}

double LevyModel::psi_second(double theta) const {
  if (!(theta >= 0.0)) throw DomainError("psi_second: theta must be nonnegative");
  double v = sigma_ * sigma_;
  if (const auto* j = std::get_if<ExpJumps>(&jumps_)) {
    const double rho = 1.0 / j->mean_jump;
    v += 2.0 * j->rate * rho / ((rho + theta) * (rho + theta) * (rho + theta));
  }
  return v;
}

std::complex<long double> LevyModel::psi(std::complex<long double> s) const {
  const long double sig2 = static_cast<long double>(sigma_) * sigma_;
  std::complex<long double> v = 0.5L * sig2 * s * s + static_cast<long double>(gamma_) * s;
  if (const auto* j = std::get_if<ExpJumps>(&jumps_)) {
    const long double rho = 1.0L / j->mean_jump;
    v -= static_cast<long double>(j->rate) * s / (rho + s);
  }
  return v;
}

void LevyModel::require_unbounded_variation() const {
  if (!unbounded_variation())
    throw InvalidModelError("local-time laws need unbounded variation (sigma > 0); got " + describe());
}

std::string LevyModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "sigma=" << sigma_ << " gamma=" << gamma_;
  if (const auto* j = std::get_if<ExpJumps>(&jumps_)) {
    os << " jumps=exp(rate=" << j->rate << ",mean=" << j->mean_jump << ")";
  } else {
    os << " jumps=none";
  }
  return os.str();
}

PhiSolve phi_inverse(const LevyModel& model, double q, double tol) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("phi_inverse: q must be finite and nonnegative");
  if (!(tol > 0.0)) throw DomainError("phi_inverse: tol must be positive");

  const double inf = std::numeric_limits<double>::infinity();
  const double d0 = model.psi_prime(0.0);
  if (q == 0.0 && d0 >= 0.0) {
    // Φ(0) = 0; Φ'(0) = 1/ψ'(0), infinite when ψ'(0) = 0.
    return PhiSolve{0.0, 0.0, d0 > 0.0 ? 1.0 / d0 : inf, 0.0};
  }

  double lo = 0.0;
  if (d0 < 0.0) {
    // ψ decreases first: start the bracket at the minimiser of ψ.
    double a = 0.0;
    double b = 1.0;
    int guard = 0;
    while (model.psi_prime(b) <= 0.0) {
      a = b;
      b *= 2.0;
      if (++guard > 1100) throw SolverError("phi_inverse: cannot bracket minimiser of psi", a, b);
    }
    for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
      const double m = 0.5 * (a + b);
      (model.psi_prime(m) > 0.0 ? b : a) = m;
    }
    lo = a;
  }

  double hi = std::max(1.0, 2.0 * lo);
  int guard = 0;
  while (model.psi(hi) <= q) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 1100) throw SolverError("phi_inverse: cannot bracket root", lo, hi);
  }

  const double target_tol = tol * std::max(1.0, q);
  double s = hi;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const double f = model.psi(s) - q;
    if (std::abs(f) <= target_tol) {
      converged = true;
      break;
    }
    (f > 0.0 ? hi : lo) = s;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      converged = true;
      break;
    }
    double next = s - f / model.psi_prime(s);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  if (!converged) throw SolverError("phi_inverse: iteration cap reached", lo, hi);

  PhiSolve out;
  out.q = q;
  out.phi = s;
  out.residual = model.psi(s) - q;
  const double d = model.psi_prime(s);
  out.phi_prime = d > 0.0 ? 1.0 / d : inf;
  return out;
}

LevyModel model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model file: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "sigma" && key != "gamma" && key != "jump_kind" && key != "jump_rate" && key != "jump_mean")
      throw ParseError("model file: unknown key '" + key + "'");
  }
  auto number = [&](const char* key, double fallback, bool required) {
    if (!j.contains(key)) {
      if (required) throw ParseError(std::string("model file: missing key '") + key + "'");
      return fallback;
    }
    if (!j[key].is_number()) throw ParseError(std::string("model file: key '") + key + "' must be a number");
    return j[key].get<double>();
  };
  const double sigma = number("sigma", 0.0, true);
  const double gamma = number("gamma", 0.0, false);
  std::string kind = "none";
  if (j.contains("jump_kind")) {
    if (!j["jump_kind"].is_string()) throw ParseError("model file: jump_kind must be a string");
    kind = j["jump_kind"].get<std::string>();
  }
  if (kind == "none") {
    if (j.contains("jump_rate") || j.contains("jump_mean"))
      throw ParseError("model file: jump_rate/jump_mean given with jump_kind=none");
    return LevyModel(sigma, gamma, NoJumps{});
  }
  if (kind == "exp") {
    return LevyModel(sigma, gamma, ExpJumps{number("jump_rate", 0.0, true), number("jump_mean", 0.0, true)});
  }
  throw ParseError("model file: unknown jump_kind '" + kind + "'");
}

std::string model_to_json(const LevyModel& model) {
  nlohmann::json j;
  j["sigma"] = model.sigma();
  j["gamma"] = model.gamma();
  if (const auto* e = std::get_if<ExpJumps>(&model.jumps())) {
    j["jump_kind"] = "exp";
    j["jump_rate"] = e->rate;
    j["jump_mean"] = e->mean_jump;
  } else {
    j["jump_kind"] = "none";
  }
  return j.dump();
}

}  // namespace snlt
