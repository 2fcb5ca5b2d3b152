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

// Phonon-induced pure dephasing for a resonantly driven dot, and the
// super-ohmic phonon spectral function J(w) = alpha w^3 exp(-w^2 / 2 w_b^2).

namespace bichrom {

struct PhononParams {
  double alpha = 0.1;        // coupling strength, ps^2
  double temperature = 4.2;  // K
  double omega_b = 900.0;    // cutoff, ueV

  void validate() const;
};

/// gamma'_ph = pi kB T alpha Omega^2, returned in ueV. For two drives the
/// caller picks the effective Rabi energy; max(Omega_1, Omega_2) is the
/// conservative choice.
double dephasing_rate(const PhononParams& ph, double omega_rabi_ueV);

/// J(w) in 1/ps for w given in ueV (converted to rad/ps internally).
/// Zero for w <= 0.
double spectral_function(double omega_ueV, const PhononParams& ph);

}  // namespace bichrom
