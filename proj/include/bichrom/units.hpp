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

// Unit system: energies in ueV, times in ps. Angular frequencies (rad/ps)
// are obtained by dividing an energy by hbar.

namespace bichrom {

struct UnitSystem {
  double hbar;  // ueV ps
  double kB;    // ueV / K
};

inline constexpr UnitSystem kUnits{658.2119569, 86.17333262};

namespace units {

inline constexpr double hbar = kUnits.hbar;
inline constexpr double kB = kUnits.kB;
inline constexpr double pi = 3.14159265358979323846;

constexpr double energy_to_angular(double energy_ueV) { return energy_ueV / hbar; }
constexpr double angular_to_energy(double omega_per_ps) { return omega_per_ps * hbar; }

}  // namespace units
}  // namespace bichrom
