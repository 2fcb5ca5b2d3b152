// Copyright 2026 The bichrom Authors
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

#include <stdexcept>
#include <string>

namespace bichrom {

enum class NumericalErrc {
  degenerate_drive,
  step_underflow,
  state_invalid,
  no_convergence,
  non_unique_steady_state,
  tail_not_converged,
  eigensolver_failure,
};

const char* to_string(NumericalErrc code);

// Raised when a numerical procedure cannot produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(NumericalErrc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  NumericalErrc code() const noexcept { return code_; }

 private:
  NumericalErrc code_;
};

// Raised when an argument violates a documented precondition
// (negative amplitudes, mismatched grids, windows outside a trace, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bichrom
