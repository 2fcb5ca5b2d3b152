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

#include "bichrom/core.hpp"

#include <cmath>

namespace bichrom {

const char* to_string(NumericalErrc code) {
  switch (code) {
    case NumericalErrc::degenerate_drive: return "degenerate-frequency drive";
    case NumericalErrc::step_underflow: return "step-size underflow";
    case NumericalErrc::state_invalid: return "state invalid";
    case NumericalErrc::no_convergence: return "no convergence";
    case NumericalErrc::non_unique_steady_state: return "non-unique steady state";
    case NumericalErrc::tail_not_converged: return "tail not converged";
    case NumericalErrc::eigensolver_failure: return "eigensolver failure";
  }
  return "numerical error";
}

void DriveParams::validate() const {
  for (double v : {omega1, omega2, delta1, delta2, phi, frame_origin}) {
    if (!std::isfinite(v)) throw DomainError("drive parameters must be finite");
  }
  if (omega1 < 0.0) throw DomainError("omega1 must be >= 0");
  if (omega2 < 0.0) throw DomainError("omega2 must be >= 0");
}

void DissipationParams::validate() const {
  if (!std::isfinite(gamma) || gamma < 0.0) throw DomainError("gamma must be >= 0");
  if (!std::isfinite(gamma_prime) || gamma_prime < 0.0)
    throw DomainError("gamma_prime must be >= 0");
}

double drive_period(const DriveParams& p) {
  const double beat = p.beat();
  if (beat == 0.0) {
    throw NumericalError(NumericalErrc::degenerate_drive,
                         "delta1 == delta2, the Hamiltonian is time independent");
  }
  return 2.0 * units::pi * units::hbar / std::abs(beat);
}

DerivedQuantities derived_quantities(const DriveParams& p) {
  DerivedQuantities q{p.beat(), std::nullopt, drive_period(p)};
  if (p.omega1 > 0.0) q.alpha_c = p.omega2 / p.omega1;
  return q;
}

double min_eigenvalue(const Operator2& rho) {
  const double a = rho(0, 0).real();
  const double c = rho(1, 1).real();
  const Complex b = 0.5 * (rho(0, 1) + std::conj(rho(1, 0)));
  const double half_gap = std::hypot(0.5 * (a - c), std::abs(b));
  return 0.5 * (a + c) - half_gap;
}

bool is_density_matrix(const Operator2& rho, const DensityTolerances& tol) {
  if (!rho.allFinite()) return false;
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if (hermiticity_defect(rho) > tol.hermitian * scale) return false;
  if (std::abs(rho.trace() - 1.0) > tol.trace) return false;
  return min_eigenvalue(rho) >= -tol.positivity;
}

}  // namespace bichrom
