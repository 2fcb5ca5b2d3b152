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

#include "bichrom/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bichrom/dormand_prince.hpp"

namespace bichrom {
namespace {

constexpr double kCorrectionCap = 1e-8;
constexpr double kPositivityFloor = -1e-6;

template <typename A, typename B>
Superoperator4 kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  Superoperator4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Superoperator4 lindblad_term(const Operator2& a) {
  const Operator2 ada = a.adjoint() * a;
  const Operator2 id = Operator2::Identity();
  return 2.0 * kron(a.conjugate(), a) - kron(id, ada) - kron(ada.transpose(), id);
}

StepControl<double> step_control(const DriveParams& p, const DissipationParams& d,
                                 const PropagatorConfig& cfg) {
  return {effective_step_max(p, d, cfg), cfg.rel_tol, cfg.abs_tol, 1e-8};
}

}  // namespace

Operator2 hamiltonian_at(double t_ps, const DriveParams& p) {
  const double phase = p.beat() * t_ps / units::hbar + p.phi;
  const Complex coupling = 0.5 * (p.omega1 + p.omega2 * std::polar(1.0, -phase));
  Operator2 h;
  h << p.delta1, coupling, std::conj(coupling), 0.0;
  return h;
}

Superoperator4 commutator_generator(const Operator2& h_ueV) {
  const Operator2 id = Operator2::Identity();
  const Complex minus_i_over_hbar(0.0, -1.0 / units::hbar);
  return minus_i_over_hbar * (kron(id, h_ueV) - kron(h_ueV.transpose(), id));
}

Superoperator4 dissipator(const DissipationParams& d) {
  return (0.5 * d.gamma / units::hbar) * lindblad_term(sigma_minus()) +
         (0.5 * d.gamma_prime / units::hbar) * lindblad_term(excited_projector());
}

Superoperator4 liouvillian_at(double t_ps, const DriveParams& p, const DissipationParams& d) {
  return commutator_generator(hamiltonian_at(t_ps, p)) + dissipator(d);
}

double effective_step_max(const DriveParams& p, const DissipationParams& d,
                          const PropagatorConfig& cfg) {
  double cap = cfg.step_max > 0.0 ? cfg.step_max : std::numeric_limits<double>::infinity();
  if (p.beat() != 0.0) cap = std::min(cap, drive_period(p) / 200.0);
  const double scale = std::max({p.omega1, p.omega2, std::abs(p.delta1), std::abs(p.delta2),
                                 d.gamma, d.gamma_prime});
  if (scale > 0.0) cap = std::min(cap, 0.01 * units::hbar / scale);
  return cap;
}

double project_density_matrix(Operator2& rho) {
  const Operator2 hermitian = 0.5 * (rho + rho.adjoint());
  double correction = (hermitian - rho).cwiseAbs().maxCoeff();
  const double tr = hermitian.trace().real();
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw NumericalError(NumericalErrc::state_invalid, "non-positive trace");
  }
  rho = hermitian / tr;
  correction = std::max(correction, std::abs(tr - 1.0) * hermitian.cwiseAbs().maxCoeff());
  return correction;
}

DensityMatrix2 propagate(const DensityMatrix2& rho0, double t0, double t1, const DriveParams& p,
                         const DissipationParams& d, const PropagatorConfig& cfg,
                         PropagationStats* stats) {
  const Superoperator4 diss = dissipator(d);
  auto rhs = [&](double t, const Vector4& v) -> Vector4 {
    return (commutator_generator(hamiltonian_at(t, p)) + diss) * v;
  };
  PropagationStats local;
  auto project = [&](double t, Vector4& v) {
    Operator2 rho = unvectorize(v);
    local.max_hermiticity_defect = std::max(local.max_hermiticity_defect, hermiticity_defect(rho));
    const double correction = project_density_matrix(rho);
    local.max_correction = std::max(local.max_correction, correction);
    if (correction > kCorrectionCap) {
      throw NumericalError(NumericalErrc::state_invalid,
                           "projection correction " + std::to_string(correction) + " at t = " +
                               std::to_string(t) + " ps");
    }
    v = vectorize(rho);
  };

  Vector4 v = vectorize(rho0);
  const auto integ = integrate_dopri5(rhs, v, t0, t1, step_control(p, d, cfg), project);
  local.steps = integ.accepted;
  if (stats) *stats = local;

  const DensityMatrix2 rho = unvectorize(v);
  if (min_eigenvalue(rho) < kPositivityFloor) {
    throw NumericalError(NumericalErrc::state_invalid,
                         "negative eigenvalue " + std::to_string(min_eigenvalue(rho)));
  }
  return rho;
}

Vector4 propagate_vector(const Vector4& v0, double t0, double t1, const DriveParams& p,
                         const DissipationParams& d, const PropagatorConfig& cfg) {
  const Superoperator4 diss = dissipator(d);
  auto rhs = [&](double t, const Vector4& v) -> Vector4 {
    return (commutator_generator(hamiltonian_at(t, p)) + diss) * v;
  };
  Vector4 v = v0;
  integrate_dopri5(rhs, v, t0, t1, step_control(p, d, cfg));
  return v;
}

Superoperator4 transfer_matrix(double t0, double t1, const DriveParams& p,
                               const DissipationParams& d, const PropagatorConfig& cfg) {
  const Superoperator4 diss = dissipator(d);
  auto rhs = [&](double t, const Superoperator4& m) -> Superoperator4 {
    return (commutator_generator(hamiltonian_at(t, p)) + diss) * m;
  };
  Superoperator4 m = Superoperator4::Identity();
  integrate_dopri5(rhs, m, t0, t1, step_control(p, d, cfg));
  return m;
}

PeriodicPropagator::PeriodicPropagator(const DriveParams& p, const DissipationParams& d,
                                       const PropagatorConfig& cfg, double t0, double period,
                                       std::size_t slices)
    : t0_(t0), period_(period) {
  if (slices == 0 || !(period > 0.0)) throw DomainError("PeriodicPropagator: empty period");
  steps_.reserve(slices);
  const double n = static_cast<double>(slices);
  if (p.beat() == 0.0) {
    // Constant generator: every slice is the same map.
    steps_.assign(slices, transfer_matrix(t0, t0 + period / n, p, d, cfg));
  } else {
    for (std::size_t i = 0; i < slices; ++i) {
      const double a = t0 + period * static_cast<double>(i) / n;
      const double b = t0 + period * static_cast<double>(i + 1) / n;
      steps_.push_back(transfer_matrix(a, b, p, d, cfg));
    }
  }
  monodromy_ = Superoperator4::Identity();
  for (const auto& s : steps_) monodromy_ = (s * monodromy_).eval();
}

PeriodicSteadyState periodic_steady_state(const PeriodicPropagator& prop,
                                          const DissipationParams& d,
                                          const PropagatorConfig& cfg, std::size_t stride) {
  if (!(d.gamma > 0.0)) throw DomainError("periodic steady state requires gamma > 0");
  if (stride == 0 || prop.slices() % stride != 0) {
    throw DomainError("sample stride must divide the slice count");
  }

  auto apply = [](const Superoperator4& m, Operator2& rho) {
    rho = unvectorize(m * vectorize(rho));
    if (project_density_matrix(rho) > kCorrectionCap) {
      throw NumericalError(NumericalErrc::state_invalid, "cycle map drifted off the trace-1 set");
    }
  };

  Operator2 rho = ground_state();
  const double burn_in = cfg.transient_factor * units::hbar / d.gamma;
  const auto burn_periods = static_cast<long>(std::ceil(burn_in / prop.period()));
  for (long n = 0; n < burn_periods; ++n) apply(prop.monodromy(), rho);

  PeriodicSteadyState out;
  out.origin = prop.origin();
  out.period = prop.period();
  bool converged = false;
  for (int n = 0; n < cfg.max_periods; ++n) {
    Operator2 next = rho;
    apply(prop.monodromy(), next);
    const double change = (next - rho).cwiseAbs().maxCoeff();
    rho = next;
    ++out.periods_iterated;
    if (change < cfg.ss_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError(NumericalErrc::no_convergence,
                         "periodic cycle not reached after " + std::to_string(cfg.max_periods) +
                             " periods");
  }

  const std::size_t count = prop.slices() / stride;
  out.samples.reserve(count);
  for (std::size_t i = 0; i < prop.slices(); ++i) {
    if (i % stride == 0) out.samples.push_back(rho);
    rho = unvectorize(prop.slice(i) * vectorize(rho));
    project_density_matrix(rho);
  }
  return out;
}

PeriodicSteadyState periodic_steady_state(const DriveParams& p, const DissipationParams& d,
                                          const PropagatorConfig& cfg, double t0) {
  if (cfg.period_samples < 1) throw DomainError("period_samples must be >= 1");
  const double period = drive_period(p);
  const PeriodicPropagator prop(p, d, cfg, t0, period,
                                static_cast<std::size_t>(cfg.period_samples));
  return periodic_steady_state(prop, d, cfg, 1);
}

DensityMatrix2 stationary_state(const DriveParams& p, const DissipationParams& d) {
  if (p.beat() != 0.0) throw DomainError("stationary_state requires delta1 == delta2");
  const Superoperator4 l = liouvillian_at(0.0, p, d);
  const Eigen::JacobiSVD<Superoperator4> svd(l, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  const double threshold = 1e-9 * std::max(sv(0), std::numeric_limits<double>::min());
  const auto null_dim = (sv.array() <= threshold).count();
  if (sv(0) == 0.0 || null_dim > 1) {
    throw NumericalError(NumericalErrc::non_unique_steady_state,
                         "generator null space has dimension " +
                             std::to_string(sv(0) == 0.0 ? 4 : null_dim));
  }
  Operator2 rho = unvectorize(svd.matrixV().col(3));
  rho /= rho.trace();
  project_density_matrix(rho);
  return rho;
}

}  // namespace bichrom
