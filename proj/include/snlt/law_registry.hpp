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
#ifndef SNLT_LAW_REGISTRY_HPP
#define SNLT_LAW_REGISTRY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "snlt/levy_model.hpp"
#include "snlt/mc_oracle.hpp"

namespace snlt {

/// String key/value parameters with typed access. Lists are comma separated
/// ("levels=1,2").
class Params {
 public:
  Params() = default;
  /// Parses "key=value".
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  const std::map<std::string, std::string>& items() const noexcept { return kv_; }

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::vector<double> list(const std::string& key) const;
  /// Throws ParseError naming the first key not in `allowed`.
  void require_only(const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> kv_;
};

/// A table: labelled rows of doubles under named columns, plus free notes.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;

  void add_row(std::string label, std::vector<double> values);
};

struct LawInfo {
  std::string id;
  std::string keys;
  std::string summary;
};

const std::vector<LawInfo>& law_list();

/// One row labelled with the law id; columns are the law's named outputs.
Table evaluate_law(const std::string& id, const LevyModel& model, const Params& params);

/// Runs the Monte Carlo oracle for a law and returns rows
/// (quantity; analytic, mc_mean, mc_stderr, z_score). Simulation settings come
/// from n_paths, dt, seed, eps, t_max, threads in params.
Table mc_verify(const std::string& id, const LevyModel& model, const Params& params);

/// Law ids that mc_verify accepts.
std::vector<std::string> mc_law_ids();

}  // namespace snlt

#endif  // SNLT_LAW_REGISTRY_HPP
