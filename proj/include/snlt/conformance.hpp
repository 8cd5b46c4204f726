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
#ifndef SNLT_CONFORMANCE_HPP
#define SNLT_CONFORMANCE_HPP

#include <string>
#include <vector>

namespace snlt {

struct Gate {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  /// true: pass when value >= bound; false: pass when value <= bound.
  bool at_least = false;

  bool passed() const { return at_least ? value >= bound : value <= bound; }
};

struct Criterion {
  int number = 0;
  std::string title;
  std::vector<Gate> gates;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string error;

  bool passed() const;
};

struct ConformanceOptions {
  /// Fewer random instances and smaller Monte Carlo ensembles.
  bool quick = false;
  unsigned threads = 0;
  /// Run only these criteria (1..8); empty runs all.
  std::vector<int> only;
};

Criterion run_criterion(int number, const ConformanceOptions& opt);
std::vector<Criterion> run_conformance(const ConformanceOptions& opt);

}  // namespace snlt

#endif  // SNLT_CONFORMANCE_HPP
