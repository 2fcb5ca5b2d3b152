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

// Time-dependent Hamiltonian, Lindblad generator and propagation of the
// emitter density matrix. Density matrices are vectorized column-major in
// the (x, g) basis: vec(rho) = (rho_xx, rho_gx, rho_xg, rho_gg).

#include <cstddef>
#include <vector>

#include "bichrom/core.hpp"

namespace bichrom {

template <typename Scalar>
using Superoperator4T = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
using Superoperator4 = Superoperator4T<double>;
using Vector4 = Eigen::Matrix<Complex, 4, 1>;

inline Vector4 vectorize(const Operator2& m) {
  return Eigen::Map<const Vector4>(m.data());
}

inline Operator2 unvectorize(const Vector4& v) {
  return Eigen::Map<const Operator2>(v.data());
}

struct PropagatorConfig {
  double step_max = 0.0;  // ps; 0 selects the automatic bound
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double transient_factor = 20.0;  // burn-in length in units of hbar/gamma
  double ss_tol = 1e-10;           // periodicity tolerance, max-element norm
  int period_samples = 32;         // K samples of the converged cycle
  int max_periods = 10000;
};

/// H(t) in ueV for the rotating frame of drive 1.
Operator2 hamiltonian_at(double t_ps, const DriveParams& p);

/// Generator of d vec(rho)/dt in rad/ps.
Superoperator4 liouvillian_at(double t_ps, const DriveParams& p, const DissipationParams& d);

/// Time-independent dissipative part of the generator (rad/ps).
Superoperator4 dissipator(const DissipationParams& d);

/// -i[H, .]/hbar as a superoperator.
Superoperator4 commutator_generator(const Operator2& h_ueV);

/// Step cap obeying step <= T/200 (for a periodic drive) and
/// step <= 0.01 hbar / (largest energy scale); a smaller user value wins.
double effective_step_max(const DriveParams& p, const DissipationParams& d,
                          const PropagatorConfig& cfg);

struct PropagationStats {
  std::size_t steps = 0;
  double max_hermiticity_defect = 0.0;  // before each projection
  double max_correction = 0.0;          // largest applied Hermitian/trace fix
};

/// Density matrix at t1 starting from rho0 at t0. The state is re-Hermitized
/// and trace-renormalized after every accepted step; a correction larger than
/// 1e-8 is treated as an invalid state.
DensityMatrix2 propagate(const DensityMatrix2& rho0, double t0, double t1, const DriveParams& p,
                         const DissipationParams& d, const PropagatorConfig& cfg,
                         PropagationStats* stats = nullptr);

/// Propagates an arbitrary (not necessarily Hermitian) vectorized operator,
/// with no projection. Used for quantum-regression initial conditions.
Vector4 propagate_vector(const Vector4& v0, double t0, double t1, const DriveParams& p,
                         const DissipationParams& d, const PropagatorConfig& cfg);

/// The 4x4 transfer matrix of the master equation from t0 to t1.
Superoperator4 transfer_matrix(double t0, double t1, const DriveParams& p,
                               const DissipationParams& d, const PropagatorConfig& cfg);

/// Transfer matrices over consecutive equal slices of one drive period,
/// starting at phase origin t0. For a degenerate drive (beat == 0) the
/// generator is constant and `period` is simply the slice length times the
/// slice count.
class PeriodicPropagator {
 public:
  PeriodicPropagator(const DriveParams& p, const DissipationParams& d,
                     const PropagatorConfig& cfg, double t0, double period, std::size_t slices);

  std::size_t slices() const { return steps_.size(); }
  double slice_length() const { return period_ / static_cast<double>(steps_.size()); }
  double period() const { return period_; }
  double origin() const { return t0_; }

  // Transfer matrix of slice i (taken modulo the slice count).
  const Superoperator4& slice(std::size_t i) const { return steps_[i % steps_.size()]; }
  const Superoperator4& monodromy() const { return monodromy_; }

 private:
  double t0_;
  double period_;
  std::vector<Superoperator4> steps_;
  Superoperator4 monodromy_;
};

/// Project onto the Hermitian unit-trace set. Returns the size of the
/// correction that was applied (max element change).
double project_density_matrix(Operator2& rho);

struct PeriodicSteadyState {
  double origin = 0.0;  // time of samples[0]
  double period = 0.0;
  std::vector<DensityMatrix2> samples;  // evenly spaced over one period
  int periods_iterated = 0;

  double sample_time(std::size_t k) const {
    return origin + period * static_cast<double>(k) / static_cast<double>(samples.size());
  }
};

/// Converged periodic cycle of a bichromatic drive. Starts in |g><g|, burns
/// in for transient_factor*hbar/gamma, then iterates whole periods until two
/// consecutive cycles differ by less than ss_tol.
PeriodicSteadyState periodic_steady_state(const DriveParams& p, const DissipationParams& d,
                                          const PropagatorConfig& cfg, double t0 = 0.0);

/// Same, reusing precomputed slices; the returned cycle holds one sample
/// every `stride` slices.
PeriodicSteadyState periodic_steady_state(const PeriodicPropagator& prop,
                                          const DissipationParams& d,
                                          const PropagatorConfig& cfg, std::size_t stride);

/// Stationary state of a degenerate (beat == 0) drive, from the null space
/// of the constant generator.
DensityMatrix2 stationary_state(const DriveParams& p, const DissipationParams& d);

}  // namespace bichrom
