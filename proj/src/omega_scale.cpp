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
#include "snlt/omega_scale.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <variant>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "snlt/error.hpp"

namespace snlt {

namespace {

struct ConstW {
  double q;
};
struct StepW {
  std::vector<double> levels;
  std::vector<double> heights;
};
struct DeltaW {
  double a, p, eps;
};
struct SumW {
  std::vector<WeightFunction> parts;
};
struct CustomW {
  std::function<double(double)> f;
  std::string name;
  std::vector<double> bps;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string item(s.substr(pos, comma - pos));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw ParseError("weight: bad number '" + item + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

struct WeightFunction::Node {
  std::variant<ConstW, StepW, DeltaW, SumW, CustomW> v;
};

WeightFunction WeightFunction::constant(double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("constant weight must be finite and nonnegative");
  return WeightFunction(std::make_shared<const Node>(Node{ConstW{q}}));
}

WeightFunction WeightFunction::step(std::vector<double> levels, std::vector<double> heights) {
  if (heights.size() != levels.size() + 1) throw DomainError("step weight needs one more height than levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i])) throw DomainError("step weight: non-finite level");
    if (i > 0 && !(levels[i] > levels[i - 1])) throw DomainError("step weight: levels must increase");
  }
  for (double h : heights) {
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("step weight: heights must be finite and nonnegative");
  }
  return WeightFunction(std::make_shared<const Node>(Node{StepW{std::move(levels), std::move(heights)}}));
}

WeightFunction WeightFunction::delta_approx(double a, double p, double eps) {
  if (!(eps > 0.0) || !(p >= 0.0) || !std::isfinite(a) || !std::isfinite(p) || !std::isfinite(eps)) {
    throw DomainError("delta weight requires eps > 0 and p >= 0");
  }
  return WeightFunction(std::make_shared<const Node>(Node{DeltaW{a, p, eps}}));
}

WeightFunction WeightFunction::sum(std::vector<WeightFunction> parts) {
  if (parts.empty()) return constant(0.0);
  if (parts.size() == 1) return parts.front();
  return WeightFunction(std::make_shared<const Node>(Node{SumW{std::move(parts)}}));
}

WeightFunction WeightFunction::custom(std::function<double(double)> f, std::string name, std::vector<double> bps) {
  if (!f) throw DomainError("custom weight: empty evaluator");
  std::sort(bps.begin(), bps.end());
  return WeightFunction(std::make_shared<const Node>(Node{CustomW{std::move(f), std::move(name), std::move(bps)}}));
}

WeightFunction WeightFunction::parse(std::string_view text) {
  std::vector<WeightFunction> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t plus = std::min(text.find('+', pos), text.size());
    std::string_view term = text.substr(pos, plus - pos);
    while (!term.empty() && term.front() == ' ') term.remove_prefix(1);
    while (!term.empty() && term.back() == ' ') term.remove_suffix(1);
    const std::size_t colon = term.find(':');
    if (colon == std::string_view::npos) throw ParseError("weight: expected kind:args in '" + std::string(term) + "'");
    const std::string_view kind = term.substr(0, colon);
    const std::string_view args = term.substr(colon + 1);
    try {
      if (kind == "const") {
        const auto v = parse_list(args);
        if (v.size() != 1) throw ParseError("weight: const takes one value");
        parts.push_back(constant(v[0]));
      } else if (kind == "delta") {
        const auto v = parse_list(args);
        if (v.size() != 3) throw ParseError("weight: delta takes a,p,eps");
        parts.push_back(delta_approx(v[0], v[1], v[2]));
      } else if (kind == "step") {
        const std::size_t c2 = args.find(':');
        if (c2 == std::string_view::npos) throw ParseError("weight: step takes levels:heights");
        parts.push_back(step(parse_list(args.substr(0, c2)), parse_list(args.substr(c2 + 1))));
      } else {
        throw ParseError("weight: unknown kind '" + std::string(kind) + "'");
      }
    } catch (const DomainError& e) {
      throw ParseError(std::string("weight: ") + e.what());
    }
    pos = plus + 1;
  }
  return sum(std::move(parts));
}

double WeightFunction::operator()(double x) const {
  return std::visit(
      [x](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstW>) {
          return w.q;
        } else if constexpr (std::is_same_v<T, StepW>) {
          const auto it = std::upper_bound(w.levels.begin(), w.levels.end(), x);
          return w.heights[static_cast<std::size_t>(it - w.levels.begin())];
        } else if constexpr (std::is_same_v<T, DeltaW>) {
          return std::abs(x - w.a) <= w.eps ? w.p / (2.0 * w.eps) : 0.0;
        } else if constexpr (std::is_same_v<T, SumW>) {
          double s = 0.0;
          for (const auto& part : w.parts) s += part(x);
          return s;
        } else {
          return w.f(x);
        }
      },
      node_->v);
}

double WeightFunction::integral(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  return std::visit(
      [&](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstW>) {
          return w.q * (hi - lo);
        } else if constexpr (std::is_same_v<T, StepW>) {
          double s = 0.0;
          double left = lo;
          for (std::size_t i = 0; i <= w.levels.size() && left < hi; ++i) {
            const double right = i < w.levels.size() ? std::min(hi, w.levels[i]) : hi;
            if (right > left) {
              s += w.heights[i] * (right - left);
              left = right;
            }
          }
          return s;
        } else if constexpr (std::is_same_v<T, DeltaW>) {
          const double l = std::max(lo, w.a - w.eps);
          const double r = std::min(hi, w.a + w.eps);
          return r > l ? w.p / (2.0 * w.eps) * (r - l) : 0.0;
        } else if constexpr (std::is_same_v<T, SumW>) {
          double s = 0.0;
          for (const auto& part : w.parts) s += part.integral(lo, hi);
          return s;
        } else {
          std::vector<double> cuts{lo};
          for (double bp : w.bps) {
            if (bp > lo && bp < hi) cuts.push_back(bp);
          }
          cuts.push_back(hi);
          double s = 0.0;
          for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            s += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(w.f, cuts[i], cuts[i + 1], 10, 1e-12);
          }
          return s;
        }
      },
      node_->v);
}

std::vector<double> WeightFunction::breakpoints() const {
  std::vector<double> out = std::visit(
      [](const auto& w) -> std::vector<double> {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstW>) {
          return {};
        } else if constexpr (std::is_same_v<T, StepW>) {
          return w.levels;
        } else if constexpr (std::is_same_v<T, DeltaW>) {
          return {w.a - w.eps, w.a + w.eps};
        } else if constexpr (std::is_same_v<T, SumW>) {
          std::vector<double> all;
          for (const auto& part : w.parts) {
            const auto b = part.breakpoints();
            all.insert(all.end(), b.begin(), b.end());
          }
          return all;
        } else {
          return w.bps;
        }
      },
      node_->v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double WeightFunction::sup(double lo, double hi) const {
  return std::visit(
      [&](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstW>) {
          return w.q;
        } else if constexpr (std::is_same_v<T, StepW>) {
          double m = (*this)(lo);
          for (double l : w.levels) {
            if (l >= lo && l <= hi) m = std::max(m, (*this)(l));
          }
          return m;
        } else if constexpr (std::is_same_v<T, DeltaW>) {
          return (w.a + w.eps >= lo && w.a - w.eps <= hi) ? w.p / (2.0 * w.eps) : 0.0;
        } else if constexpr (std::is_same_v<T, SumW>) {
          double s = 0.0;
          for (const auto& part : w.parts) s += part.sup(lo, hi);
          return s;
        } else {
          double m = 0.0;
          for (int k = 0; k <= 1000; ++k) m = std::max(m, w.f(lo + (hi - lo) * k / 1000.0));
          return m;
        }
      },
      node_->v);
}

bool WeightFunction::is_zero() const {
  return std::visit(
      [](const auto& w) -> bool {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstW>) {
          return w.q == 0.0;
        } else if constexpr (std::is_same_v<T, StepW>) {
          return std::all_of(w.heights.begin(), w.heights.end(), [](double h) { return h == 0.0; });
        } else if constexpr (std::is_same_v<T, DeltaW>) {
          return w.p == 0.0;
        } else if constexpr (std::is_same_v<T, SumW>) {
          return std::all_of(w.parts.begin(), w.parts.end(), [](const WeightFunction& p) { return p.is_zero(); });
        } else {
          return false;
        }
      },
      node_->v);
}

std::string WeightFunction::describe() const {
  return std::visit(
      [](const auto& w) -> std::string {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstW>) {
          return "const:" + fmt(w.q);
        } else if constexpr (std::is_same_v<T, StepW>) {
          std::string s = "step:";
          for (std::size_t i = 0; i < w.levels.size(); ++i) s += (i ? "," : "") + fmt(w.levels[i]);
          s += ":";
          for (std::size_t i = 0; i < w.heights.size(); ++i) s += (i ? "," : "") + fmt(w.heights[i]);
          return s;
        } else if constexpr (std::is_same_v<T, DeltaW>) {
          return "delta:" + fmt(w.a) + "," + fmt(w.p) + "," + fmt(w.eps);
        } else if constexpr (std::is_same_v<T, SumW>) {
          std::string s;
          for (std::size_t i = 0; i < w.parts.size(); ++i) s += (i ? "+" : "") + w.parts[i].describe();
          return s;
        } else {
          return "custom:" + w.name;
        }
      },
      node_->v);
}

std::size_t OmegaGrid::index_of(double x) const {
  const double tol = 1e-9 * std::max(h_, 1e-300) + 1e-14 * std::abs(x);
  const auto it = std::lower_bound(mesh_.begin(), mesh_.end(), x - tol);
  if (it == mesh_.end() || std::abs(*it - x) > tol) {
    throw DomainError("omega grid: " + fmt(x) + " is not a mesh node; pass it as a query point when solving");
  }
  return static_cast<std::size_t>(it - mesh_.begin());
}

double OmegaGrid::w_at(std::size_t i, std::size_t j) const {
  if (w_.empty()) throw DomainError("omega grid: W was not solved");
  if (i >= mesh_.size() || j >= mesh_.size()) throw DomainError("omega grid: index out of range");
  if (j > i) return 0.0;
  return w_[i * (i + 1) / 2 + j];
}

double OmegaGrid::z_at(std::size_t i) const {
  if (z_.empty()) throw DomainError("omega grid: Z was not solved");
  if (i >= mesh_.size()) throw DomainError("omega grid: index out of range");
  return z_[i];
}

double OmegaGrid::w(double x, double y) const { return w_at(index_of(x), index_of(y)); }
double OmegaGrid::z(double x) const { return z_at(index_of(x)); }

std::string OmegaGrid::to_csv() const {
  std::ostringstream os;
  os << "# model: " << base_.model().describe() << "\n";
  os << "# q0: " << fmt(base_.q()) << "\n";
  os << "# omega: " << omega_.describe() << "\n";
  os << "# c: " << fmt(c()) << " b: " << fmt(b()) << " h: " << fmt(h_) << " nodes: " << mesh_.size() << "\n";
  for (const auto& w : warnings_) os << "# warning: " << w << "\n";
  if (has_w()) {
    os << "x,y,W\n";
    for (std::size_t i = 0; i < mesh_.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) os << fmt(mesh_[i]) << ',' << fmt(mesh_[j]) << ',' << fmt(w_at(i, j)) << '\n';
    }
  }
  if (has_z()) {
    os << "x,Z\n";
    for (std::size_t i = 0; i < mesh_.size(); ++i) os << fmt(mesh_[i]) << ',' << fmt(z_[i]) << '\n';
  }
  return os.str();
}

namespace {

constexpr std::size_t kMaxNodes = 8001;

// Uniform nodes with every forced point moved onto the nearest node; points
// that collide with an already forced node are inserted instead.
std::vector<double> build_mesh(double c, double b, double h, std::vector<double> forced, bool& uniform, double& step) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::round((b - c) / h)));
  if (n + 1 > kMaxNodes) throw DomainError("omega grid: too many nodes; increase h");
  step = (b - c) / static_cast<double>(n);
  std::vector<double> mesh(n + 1);
  for (std::size_t k = 0; k <= n; ++k) mesh[k] = c + step * static_cast<double>(k);
  mesh[n] = b;
  std::vector<bool> pinned(n + 1, false);
  pinned[0] = pinned[n] = true;
  uniform = true;
  std::vector<double> extra;
  std::sort(forced.begin(), forced.end());
  for (double p : forced) {
    if (!(p > c && p < b)) continue;
    const auto k = static_cast<std::size_t>(std::llround((p - c) / step));
    if (std::abs(mesh[k] - p) <= 1e-9 * step) {
      mesh[k] = p;
      pinned[k] = true;
      continue;
    }
    uniform = false;
    if (!pinned[k]) {
      mesh[k] = p;
      pinned[k] = true;
    } else {
      extra.push_back(p);
    }
  }
  mesh.insert(mesh.end(), extra.begin(), extra.end());
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end(), [&](double u, double v) { return v - u <= 1e-12 * step; }),
             mesh.end());
  return mesh;
}

}  // namespace

OmegaGrid solve_omega(const ScaleContext& base, const WeightFunction& omega, double c, double b, double h,
                      const std::vector<double>& points, bool with_w, bool with_z) {
  if (!std::isfinite(c) || !std::isfinite(b) || !(c < b)) throw DomainError("omega grid: need finite c < b");
  if (!(h > 0.0) || h > b - c) throw DomainError("omega grid: need 0 < h <= b - c");
  OmegaGrid g(base, omega);
  std::vector<double> forced = omega.breakpoints();
  forced.insert(forced.end(), points.begin(), points.end());
  g.mesh_ = build_mesh(c, b, h, forced, g.uniform_, g.h_);
  const auto& x = g.mesh_;
  const std::size_t n = x.size();

  g.cell_.resize(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double om = omega.integral(x[k], x[k + 1]);
    if (!std::isfinite(om) || om < 0.0) throw DomainError("omega grid: weight is not finite and nonnegative on the mesh");
    g.cell_[k] = om;
  }
  // node weights of the product trapezoid
  std::vector<double> nu(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    nu[k] += 0.5 * g.cell_[k];
    nu[k + 1] += 0.5 * g.cell_[k];
  }

  std::vector<double> toeplitz;
  std::vector<double> full;
  if (g.uniform_) {
    toeplitz.resize(n);
    for (std::size_t d = 0; d < n; ++d) toeplitz[d] = base.w(g.h_ * static_cast<double>(d));
  } else {
    full.resize(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k <= i; ++k) full[i * (i + 1) / 2 + k] = base.w(x[i] - x[k]);
    }
  }
  auto kernel_row = [&](std::size_t i, std::size_t k) {
    return g.uniform_ ? toeplitz[i - k] : full[i * (i + 1) / 2 + k];
  };

  double max_cell = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) max_cell = std::max(max_cell, x[k + 1] - x[k]);
  const double coupling = *std::max_element(nu.begin(), nu.end()) * base.w(max_cell);
  if (coupling > 0.5) {
    g.warnings_.push_back("step is coarse relative to the weight: max node weight times W(h) = " + fmt(coupling));
  }

  std::vector<double> acc(n);
  // acc[i] collects Σ_k ν_k W(x_i − x_k) u_k over the nodes already solved.
  auto march = [&](std::size_t j, double seed0, auto&& seed, std::vector<double>& out) {
    std::fill(acc.begin() + static_cast<std::ptrdiff_t>(j), acc.end(), 0.0);
    out[j] = seed0;
    for (std::size_t i = j; i < n; ++i) {
      const double u = i == j ? seed0 : seed(i) + acc[i];
      out[i] = u;
      const double s = nu[i] * u;
      if (s == 0.0) continue;
      if (g.uniform_) {
        const double* kt = toeplitz.data();
        for (std::size_t m = i + 1; m < n; ++m) acc[m] += s * kt[m - i];
      } else {
        for (std::size_t m = i + 1; m < n; ++m) acc[m] += s * full[m * (m + 1) / 2 + i];
      }
    }
  };

  if (with_w) {
    g.w_.assign(n * (n + 1) / 2, 0.0);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
      march(j, 0.0, [&](std::size_t i) { return kernel_row(i, j); }, col);
      for (std::size_t i = j; i < n; ++i) {
        if (!std::isfinite(col[i])) throw OverflowError("omega grid: W overflowed; shrink [c, b]");
        g.w_[i * (i + 1) / 2 + j] = col[i];
      }
    }
  }
  if (with_z) {
    g.z_.assign(n, 0.0);
    march(0, 1.0, [&](std::size_t) { return 1.0; }, g.z_);
    for (double v : g.z_) {
      if (!std::isfinite(v)) throw OverflowError("omega grid: Z overflowed; shrink [c, b]");
    }
  }
  return g;
}

OmegaGrid solve_w_omega(const LevyModel& model, const WeightFunction& omega, double c, double b, double h,
                        const std::vector<double>& points) {
  return solve_omega(ScaleContext(model, 0.0), omega, c, b, h, points, true, false);
}

OmegaGrid solve_z_omega(const LevyModel& model, const WeightFunction& omega, double c, double b, double h,
                        const std::vector<double>& points) {
  return solve_omega(ScaleContext(model, 0.0), omega, c, b, h, points, false, true);
}

ExitLaws omega_exit_laws(const OmegaGrid& grid, double x) {
  if (!(x >= grid.c() && x <= grid.b())) throw DomainError("omega_exit_laws: x outside [c, b]");
  const std::size_t i = grid.index_of(x);
  const std::size_t ib = grid.mesh().size() - 1;
  const double wb = grid.w_at(ib, 0);
  if (!(wb > 0.0)) throw DegenerateError("omega_exit_laws: W^(ω)(b, c) = 0");
  ExitLaws out;
  out.up = grid.w_at(i, 0) / wb;
  if (grid.has_z()) out.down = grid.z_at(i) - out.up * grid.z_at(ib);
  else out.down = std::numeric_limits<double>::quiet_NaN();
  return out;
}

double omega_resolvent(const OmegaGrid& grid, double x, double y) {
  if (!(x >= grid.c() && x <= grid.b() && y >= grid.c() && y <= grid.b())) {
    throw DomainError("omega_resolvent: arguments outside [c, b]");
  }
  const std::size_t i = grid.index_of(x);
  const std::size_t j = grid.index_of(y);
  const std::size_t ib = grid.mesh().size() - 1;
  const double wb = grid.w_at(ib, 0);
  if (!(wb > 0.0)) throw DegenerateError("omega_resolvent: W^(ω)(b, c) = 0");
  return grid.w_at(i, 0) / wb * grid.w_at(ib, j) - grid.w_at(i, j);
}

}  // namespace snlt
