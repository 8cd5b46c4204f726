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
#include "snlt/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "snlt/error.hpp"
#include "snlt/rng.hpp"
#include "snlt/statistics.hpp"

namespace snlt {

const char* to_string(ExitKind k) {
  switch (k) {
    case ExitKind::Up: return "up";
    case ExitKind::Down: return "down";
    case ExitKind::Killed: return "killed";
    case ExitKind::HorizonCapped: return "horizon";
  }
  return "unknown";
}

std::size_t McEnsemble::count(ExitKind k) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [k](const PathRecord& r) { return r.exit_kind == k; }));
}

unsigned default_threads() {
  if (const char* env = std::getenv("SNLT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PathSim {
  double sigma;
  double gamma;
  double jump_rate;
  double jump_mean;
  const SimulationSpec& spec;
  const McConfig& cfg;

  PathRecord run(std::uint64_t index) const {
    Philox4x32 rng(cfg.seed, index);
    std::normal_distribution<double> normal;
    const std::size_t nl = spec.levels.size();
    PathRecord rec;
    rec.local_time.assign(nl, 0.0);
    rec.local_time_window.assign(nl, 0.0);
    double x = spec.x;
    if (x >= spec.b) {
      rec.exit_kind = ExitKind::Up;
      rec.exit_position = x;
      return rec;
    }
    if (x <= spec.c) {
      rec.exit_kind = ExitKind::Down;
      rec.exit_position = x;
      return rec;
    }
    const double s2 = sigma * sigma;
    const double eps = cfg.epsilon_lt;
    const double clock = spec.q > 0.0 ? -std::log(rng.uniform()) / spec.q : kInf;
    double next_jump = jump_rate > 0.0 ? -std::log(rng.uniform()) / jump_rate : kInf;
    double t = 0.0;
    double omega_prev = spec.omega ? (*spec.omega)(x) : 0.0;
    for (;;) {
      double h = cfg.dt;
      enum { Step, Clock, Jump, Horizon } stop = Step;
      if (clock - t <= h) {
        h = clock - t;
        stop = Clock;
      }
      if (next_jump - t <= h) {
        h = next_jump - t;
        stop = Jump;
      }
      if (cfg.t_max - t <= h) {
        h = cfg.t_max - t;
        stop = Horizon;
      }
      h = std::max(h, 0.0);
      const double sh = s2 * h;
      const double x1 = x + gamma * h + sigma * std::sqrt(h) * normal(rng);

      // continuous crossings between the grid points
      bool up = x1 >= spec.b;
      if (!up) {
        const double e = 2.0 * (spec.b - x) * (spec.b - x1) / sh;
        up = e < 40.0 && rng.uniform() < std::exp(-e);
      }
      bool down = !up && x1 <= spec.c;
      if (!up && !down) {
        const double e = 2.0 * (x - spec.c) * (x1 - spec.c) / sh;
        down = e < 40.0 && rng.uniform() < std::exp(-e);
      }
      if (up || down) {
        rec.exit_kind = up ? ExitKind::Up : ExitKind::Down;
        rec.exit_time = t + h;
        if (spec.omega) rec.weighted_occupation += 0.5 * h * (omega_prev + (*spec.omega)(up ? spec.b : spec.c));
        rec.exit_position = up ? spec.b : spec.c;
        return rec;
      }

      const double dx = std::abs(x1 - x);
      for (std::size_t k = 0; k < nl; ++k) {
        const double a = spec.levels[k];
        const double kk = std::abs(x - a) + std::abs(x1 - a);
        if ((kk * kk - dx * dx) / (2.0 * sh) < 40.0) {
          const double l = (std::sqrt(dx * dx - 2.0 * sh * std::log(rng.uniform())) - kk) / s2;
          if (l > 0.0) rec.local_time[k] += l;
        }
        const double in0 = std::abs(x - a) <= eps ? 1.0 : 0.0;
        const double in1 = std::abs(x1 - a) <= eps ? 1.0 : 0.0;
        rec.local_time_window[k] += 0.5 * h * (in0 + in1) / (2.0 * eps);
      }
      if (spec.omega) {
        const double om = (*spec.omega)(x1);
        rec.weighted_occupation += 0.5 * h * (omega_prev + om);
        omega_prev = om;
      }
      t += h;
      x = x1;

      if (stop == Clock) {
        rec.exit_kind = ExitKind::Killed;
        rec.exit_time = clock;
        rec.exit_position = x;
        return rec;
      }
      if (stop == Jump) {
        t = next_jump;
        x -= -std::log(rng.uniform()) * jump_mean;
        next_jump += -std::log(rng.uniform()) / jump_rate;
        if (x <= spec.c) {
          rec.exit_kind = ExitKind::Down;
          rec.exit_time = t;
          rec.exit_position = x;
          return rec;
        }
        if (spec.omega) omega_prev = (*spec.omega)(x);
      }
      if (stop == Horizon) {
        rec.exit_kind = ExitKind::HorizonCapped;
        rec.exit_time = cfg.t_max;
        rec.exit_position = x;
        return rec;
      }
    }
  }
};

}  // namespace

McEnsemble simulate_corridor(const LevyModel& model, const SimulationSpec& spec, const McConfig& cfg) {
  if (!(model.sigma() > 0.0)) throw InvalidModelError("simulate_corridor: sigma = 0 paths are not simulated");
  if (!(cfg.dt > 0.0) || !(cfg.epsilon_lt > 0.0) || !(cfg.t_max > 0.0)) {
    throw DomainError("simulate_corridor: dt, epsilon_lt and t_max must be positive");
  }
  if (cfg.n_paths < 100) throw DomainError("simulate_corridor: at least 100 paths are required");
  if (!(spec.c < spec.b) || !std::isfinite(spec.c) || !std::isfinite(spec.b)) {
    throw DomainError("simulate_corridor: need finite c < b");
  }
  if (!(spec.x >= spec.c && spec.x <= spec.b)) throw DomainError("simulate_corridor: x must lie in [c, b]");
  if (!(spec.q >= 0.0)) throw DomainError("simulate_corridor: q must be nonnegative");

  PathSim sim{model.sigma(), model.gamma(), 0.0, 0.0, spec, cfg};
  if (const auto* j = std::get_if<ExpJumps>(&model.jumps())) {
    sim.jump_rate = j->rate;
    sim.jump_mean = j->mean_jump;
  }

  McEnsemble ens{cfg, spec, std::vector<PathRecord>(cfg.n_paths), {}};
  const unsigned nt = std::max(1u, std::min<unsigned>(cfg.threads ? cfg.threads : default_threads(),
                                                      static_cast<unsigned>(cfg.n_paths)));
  auto work = [&](unsigned tid) {
    for (std::size_t i = tid; i < cfg.n_paths; i += nt) ens.records[i] = sim.run(i);
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  const std::size_t capped = ens.count(ExitKind::HorizonCapped);
  if (capped * 100 > cfg.n_paths) {
    ens.warnings.push_back("more than 1% of paths hit t_max; estimates are biased");
  }
  if (!spec.levels.empty() && model.sigma() * std::sqrt(cfg.dt) > 2.0 * cfg.epsilon_lt) {
    ens.warnings.push_back("typical step exceeds the local-time window; the window estimator is coarse");
  }
  return ens;
}

Estimate empirical_transform(const McEnsemble& ens, const Functional& f) {
  if (ens.records.size() < 100) throw EstimationError("empirical_transform: at least 100 records are required");
  std::vector<double> vals;
  vals.reserve(ens.records.size());
  std::size_t used = 0;
  for (const auto& r : ens.records) {
    bool sel = true;
    switch (f.select) {
      case Selector::Any: sel = r.exit_kind != ExitKind::HorizonCapped; break;
      case Selector::Up: sel = r.exit_kind == ExitKind::Up; break;
      case Selector::Down: sel = r.exit_kind == ExitKind::Down; break;
      case Selector::Killed: sel = r.exit_kind == ExitKind::Killed; break;
    }
    if (!sel) {
      if (!f.conditional) vals.push_back(0.0);
      continue;
    }
    ++used;
    if (f.filter && !f.filter(r)) {
      vals.push_back(0.0);
      continue;
    }
    const auto& lt = f.use_window_estimator ? r.local_time_window : r.local_time;
    double e = f.q * r.exit_time;
    for (std::size_t k = 0; k < f.p.size() && k < lt.size(); ++k) e += f.p[k] * lt[k];
    if (f.use_weighted_occupation) e += r.weighted_occupation;
    vals.push_back(std::exp(-e));
  }
  if (used == 0) throw EstimationError("empirical_transform: no path satisfies the selection");
  if (vals.size() < 2) throw EstimationError("empirical_transform: too few selected paths");
  const MeanError m = mean_error(vals);
  return {m.mean, m.std_error, used};
}

RichardsonResult richardson_epsilon(const McEnsemble& e1, const McEnsemble& e2, std::size_t level) {
  const auto& c1 = e1.config;
  const auto& c2 = e2.config;
  if (c1.seed != c2.seed || c1.n_paths != c2.n_paths || c1.dt != c2.dt || e1.records.size() != e2.records.size() ||
      e1.spec.x != e2.spec.x || e1.spec.b != e2.spec.b || e1.spec.c != e2.spec.c || e1.spec.q != e2.spec.q) {
    throw ConsistencyError("richardson_epsilon: ensembles do not share seed, paths and corridor");
  }
  if (std::abs(c2.epsilon_lt - 0.5 * c1.epsilon_lt) > 1e-12 * c1.epsilon_lt) {
    throw ConsistencyError("richardson_epsilon: second window must be half the first");
  }
  if (level >= e1.spec.levels.size() || e1.spec.levels != e2.spec.levels) {
    throw ConsistencyError("richardson_epsilon: level mismatch");
  }
  std::vector<double> l1, l2, ex, diff;
  for (std::size_t i = 0; i < e1.records.size(); ++i) {
    const double u = e1.records[i].local_time_window[level];
    const double v = e2.records[i].local_time_window[level];
    l1.push_back(u);
    l2.push_back(v);
    ex.push_back(2.0 * v - u);
    diff.push_back(u - v);
  }
  RichardsonResult r;
  r.mean_eps = mean_error(l1).mean;
  r.mean_half = mean_error(l2).mean;
  const MeanError m = mean_error(ex);
  r.extrapolated = m.mean;
  r.std_error = m.std_error;
  const MeanError d = mean_error(diff);
  r.bias = d.mean;
  r.flagged = std::abs(r.bias) > d.std_error;
  return r;
}

}  // namespace snlt
