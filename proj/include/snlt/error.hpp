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
#ifndef SNLT_ERROR_HPP
#define SNLT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace snlt {

// Mirrors snlt_status in snlt.h; values are part of the C ABI.
enum class ErrorCode : int {
  Ok = 0,
  Domain = 1,        // argument outside the mathematical domain
  InvalidModel = 2,  // parameterization violates a model invariant
  Solver = 3,        // iterative solver failed to converge
  Numeric = 4,       // inversion / quadrature precision failure
  Overflow = 5,      // result not representable; use the log-domain API
  Degenerate = 6,    // zero denominator from a degenerate geometry
  Consistency = 7,   // two evaluation routes disagree beyond tolerance
  Estimation = 8,    // Monte Carlo estimator has no usable samples
  Parse = 9,         // malformed model file, weight descriptor or parameter
  Existence = 10,    // no permanental law for this kernel/weights pair
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};

class InvalidModelError : public Error {
 public:
  explicit InvalidModelError(const std::string& w) : Error(ErrorCode::InvalidModel, w) {}
};

class SolverError : public Error {
 public:
  SolverError(const std::string& w, double lo, double hi)
      : Error(ErrorCode::Solver, w), lo_(lo), hi_(hi) {}
  // Last bracket held when the iteration cap was hit.
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& w) : Error(ErrorCode::Numeric, w) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& w) : Error(ErrorCode::Overflow, w) {}
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& w) : Error(ErrorCode::Degenerate, w) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& w) : Error(ErrorCode::Consistency, w) {}
};

class EstimationError : public Error {
 public:
  explicit EstimationError(const std::string& w) : Error(ErrorCode::Estimation, w) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& w) : Error(ErrorCode::Parse, w) {}
};

class ExistenceError : public Error {
 public:
  ExistenceError(const std::string& w, double det) : Error(ErrorCode::Existence, w), det_(det) {}
  double determinant() const noexcept { return det_; }

 private:
  double det_;
};

// Throws OverflowError when v is not finite.
double check_finite(double v, const char* what);

}  // namespace snlt

#endif  // SNLT_ERROR_HPP
