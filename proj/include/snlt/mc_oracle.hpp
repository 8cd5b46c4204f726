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
#ifndef SNLT_MC_ORACLE_HPP
#define SNLT_MC_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snlt/levy_model.hpp"
#include "snlt/omega_scale.hpp"

namespace snlt {

struct McConfig {
  double dt = 1e-4;
  std::size_t n_paths = 100000;
  std::uint64_t seed = 0x5eed2024u;
  /// Half-width of the occupation window used by the window estimator.
  double epsilon_lt = 5e-3;
  double t_max = 200.0;
  /// 0: SNLT_THREADS if set, otherwise the hardware concurrency.
  unsigned threads = 0;
};

/// What to simulate: X started at x, stopped on leaving [c, b] or at an
/// independent exponential time of rate q (q = 0: no clock).
struct SimulationSpec {
  double c = 0.0;
  double b = 1.0;
  double x = 0.5;
  double q = 0.0;
  /// Levels whose local times are recorded.
  std::vector<double> levels;
  /// Weight for L = ∫ω(X_s) ds; unset records 0.
  std::optional<WeightFunction> omega;
};

enum class ExitKind { Up, Down, Killed, HorizonCapped };

const char* to_string(ExitKind k);

struct PathRecord {
  ExitKind exit_kind = ExitKind::HorizonCapped;
  double exit_time = 0.0;
  /// X at the stopping time (b on Up, the landing point on Down).
  double exit_position = 0.0;
  /// Local time at each level, drawn from its exact conditional law given
  /// the Euler skeleton (Brownian bridge between grid points).
  std::vector<double> local_time;
  /// (1/2ε) × occupation time of [a − ε, a + ε], trapezoid rule in time.
  std::vector<double> local_time_window;
  double weighted_occupation = 0.0;
};

struct McEnsemble {
  McConfig config;
  SimulationSpec spec;
  std::vector<PathRecord> records;
  std::vector<std::string> warnings;

  std::size_t count(ExitKind k) const;
};

/// Simulates n_paths independent paths. Gaussian increments are exact on the
/// grid, jump times and sizes are exact, and crossings of b and c between grid
/// points are detected with the Brownian-bridge crossing probability.
/// Throws InvalidModelError for sigma = 0.
McEnsemble simulate_corridor(const LevyModel& model, const SimulationSpec& spec, const McConfig& cfg);

enum class Selector { Any, Up, Down, Killed };

/// exp(−q·T − Σ p_j l_j − L) restricted to the selected exit kind.
struct Functional {
  double q = 0.0;
  /// One weight per recorded level (missing entries count as 0).
  std::vector<double> p;
  bool use_weighted_occupation = false;
  bool use_window_estimator = false;
  Selector select = Selector::Any;
  /// Extra event restriction, e.g. {l(a) > t}.
  std::function<bool(const PathRecord&)> filter;
  /// Average over the paths picked by `select` only (a conditional
  /// expectation) instead of over all paths with the indicator. `filter`
  /// always acts as an indicator.
  bool conditional = false;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_used = 0;
};

/// Throws EstimationError on fewer than 100 records or an empty selection.
Estimate empirical_transform(const McEnsemble& ens, const Functional& f);

struct RichardsonResult {
  double mean_eps = 0.0;
  double mean_half = 0.0;
  /// 2 m(ε/2) − m(ε).
  double extrapolated = 0.0;
  /// m(ε) − m(ε/2): first-order bias of the ε/2 estimate.
  double bias = 0.0;
  double std_error = 0.0;
  bool flagged = false;
};

/// Window local-time mean at levels[level] over all paths, extrapolated in ε.
/// The two ensembles must share seed, paths, step and corridor, with the
/// second window half the first; otherwise ConsistencyError.
RichardsonResult richardson_epsilon(const McEnsemble& at_eps, const McEnsemble& at_half, std::size_t level = 0);

/// Thread count from SNLT_THREADS or the hardware.
unsigned default_threads();

}  // namespace snlt

#endif  // SNLT_MC_ORACLE_HPP
