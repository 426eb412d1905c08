// Copyright 2026 The cmera Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace cmera {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (x <= 0 for K_n,
/// a circle-only query on the line, non-positive P(k) or Q(k), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Image-sum truncation would need more images than the policy allows, or no
/// decay certificate is available.
class PolicyError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// ODE step too large for the stability bound |ds * g| <= 1/2.
class StepControlError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Coincident-point request on a UV-divergent correlator.
class UvDivergence : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// A theorem's hypothesis does not hold for the supplied data (e.g. the
/// reference correlator changes sign inside the window).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Short %g rendering of a number for error messages.
inline std::string describe(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace cmera
