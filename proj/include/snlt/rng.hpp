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
#ifndef SNLT_RNG_HPP
#define SNLT_RNG_HPP

#include <array>
#include <cstdint>

namespace snlt {

/// Philox4x32-10 counter-based generator. The key is the ensemble seed and the
/// upper half of the counter is the stream (path) index, so every path owns an
/// independent, reproducible stream regardless of thread scheduling.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }
  result_type operator()();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// The raw bijection, exposed for known-answer tests.
  static Block encrypt(Block ctr, Key key);

 private:
  Block ctr_{};
  Key key_{};
  Block buf_{};
  int used_ = 4;
};

}  // namespace snlt

#endif  // SNLT_RNG_HPP
