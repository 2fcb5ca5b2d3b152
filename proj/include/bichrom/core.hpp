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

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "bichrom/error.hpp"
#include "bichrom/units.hpp"

namespace bichrom {

using Complex = std::complex<double>;

// Basis ordering is (x, g) everywhere: index 0 is the exciton, 1 the ground state.
inline constexpr int kX = 0;
inline constexpr int kG = 1;

template <typename Scalar>
using Operator2T = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
using Operator2 = Operator2T<double>;

// A 2x2 Hermitian, unit-trace, positive operator. Validity is checked with
// is_density_matrix rather than enforced by the type.
using DensityMatrix2 = Operator2;

/// Two coherent drives in the frame rotating at the first laser frequency.
/// All energies in ueV; phi in radians.
struct DriveParams {
  double omega1 = 0.0;  // Rabi energy of drive 1
  double omega2 = 0.0;  // Rabi energy of drive 2
  double delta1 = 0.0;  // omega_x - omega_1
  double delta2 = 0.0;  // omega_x - omega_2
  double phi = 0.0;     // relative phase of drive 2
  double frame_origin = 0.0;  // absolute omega_1, metadata only

  // Beat frequency omega_2 - omega_1 = delta1 - delta2.
  double beat() const { return delta1 - delta2; }
  double exciton_energy() const { return frame_origin + delta1; }

  void validate() const;
};

struct DissipationParams {
  double gamma = 0.0;        // radiative decay
  double gamma_prime = 0.0;  // pure dephasing

  void validate() const;
};

struct DerivedQuantities {
  double beat;                    // ueV
  std::optional<double> alpha_c;  // empty when omega1 == 0
  double period;                  // ps
};

// Throws NumericalError(degenerate_drive) when the two drives share a
// frequency; such drives have no finite period and take the stationary path.
DerivedQuantities derived_quantities(const DriveParams& p);

double drive_period(const DriveParams& p);

inline double energy_to_angular(double energy_ueV) { return units::energy_to_angular(energy_ueV); }

template <typename Scalar = double>
Operator2T<Scalar> sigma_minus() {
  Operator2T<Scalar> s = Operator2T<Scalar>::Zero();
  s(kG, kX) = 1;
  return s;
}

template <typename Scalar = double>
Operator2T<Scalar> sigma_plus() {
  return sigma_minus<Scalar>().adjoint();
}

template <typename Scalar = double>
Operator2T<Scalar> excited_projector() {
  Operator2T<Scalar> s = Operator2T<Scalar>::Zero();
  s(kX, kX) = 1;
  return s;
}

inline DensityMatrix2 ground_state() {
  DensityMatrix2 rho = DensityMatrix2::Zero();
  rho(kG, kG) = 1.0;
  return rho;
}

inline DensityMatrix2 excited_state() {
  DensityMatrix2 rho = DensityMatrix2::Zero();
  rho(kX, kX) = 1.0;
  return rho;
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Smallest eigenvalue of the Hermitian part of a 2x2 operator.
double min_eigenvalue(const Operator2& rho);

struct DensityTolerances {
  double hermitian = 1e-12;  // relative to the largest element
  double trace = 1e-10;
  double positivity = 1e-9;
};

bool is_density_matrix(const Operator2& rho, const DensityTolerances& tol = {});

}  // namespace bichrom
