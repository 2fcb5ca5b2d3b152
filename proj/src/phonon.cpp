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

#include "bichrom/phonon.hpp"

#include <cmath>

#include "bichrom/error.hpp"
#include "bichrom/units.hpp"

namespace bichrom {

void PhononParams::validate() const {
  if (!(alpha >= 0.0)) throw DomainError("phonon alpha must be >= 0");
  if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");
  if (!(omega_b > 0.0)) throw DomainError("phonon cutoff must be > 0");
}

double dephasing_rate(const PhononParams& ph, double omega_rabi_ueV) {
  ph.validate();
  const double thermal = units::kB * ph.temperature / units::hbar;  // rad/ps
  const double rabi = omega_rabi_ueV / units::hbar;
  return units::angular_to_energy(units::pi * thermal * ph.alpha * rabi * rabi);
}

double spectral_function(double omega_ueV, const PhononParams& ph) {
  ph.validate();
  if (omega_ueV <= 0.0) return 0.0;
  const double w = omega_ueV / units::hbar;
  const double wb = ph.omega_b / units::hbar;
  return ph.alpha * w * w * w * std::exp(-w * w / (2.0 * wb * wb));
}

}  // namespace bichrom
