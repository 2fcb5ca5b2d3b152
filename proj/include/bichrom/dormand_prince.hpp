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

// Dormand-Prince 5(4) embedded Runge-Kutta pair for Eigen-valued ODEs
// y' = f(t, y). The state may be any dense Eigen vector or matrix type.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "bichrom/error.hpp"

namespace bichrom {

template <typename Scalar = double>
struct StepControl {
  Scalar step_max;
  Scalar rel_tol = Scalar(1e-10);
  Scalar abs_tol = Scalar(1e-12);
  Scalar step_min = Scalar(1e-8);
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace detail {

template <typename Scalar>
struct DormandPrinceTableau {
  static constexpr Scalar c2 = Scalar(1) / 5, c3 = Scalar(3) / 10, c4 = Scalar(4) / 5,
                          c5 = Scalar(8) / 9;
  static constexpr Scalar a21 = Scalar(1) / 5;
  static constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
  static constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
  static constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187,
                          a53 = Scalar(64448) / 6561, a54 = Scalar(-212) / 729;
  static constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33,
                          a63 = Scalar(46732) / 5247, a64 = Scalar(49) / 176,
                          a65 = Scalar(-5103) / 18656;
  static constexpr Scalar b1 = Scalar(35) / 384, b3 = Scalar(500) / 1113, b4 = Scalar(125) / 192,
                          b5 = Scalar(-2187) / 6784, b6 = Scalar(11) / 84;
  // Difference between the 5th- and 4th-order weights.
  static constexpr Scalar e1 = Scalar(71) / 57600, e3 = Scalar(-71) / 16695,
                          e4 = Scalar(71) / 1920, e5 = Scalar(-17253) / 339200,
                          e6 = Scalar(22) / 525, e7 = Scalar(-1) / 40;
};

}  // namespace detail

/// Integrates y from t0 to t1 in place. Steps never exceed ctl.step_max; the
/// final step is shortened to land on t1 exactly. post_step(t, y) runs after
/// every accepted step and may project the state (e.g. re-Hermitize).
///
/// Throws NumericalError(step_underflow) when the controller asks for a
/// step below ctl.step_min.
template <typename State, typename Rhs, typename PostStep, typename Scalar = double>
IntegrationStats integrate_dopri5(Rhs&& rhs, State& y, Scalar t0, Scalar t1,
                                  const StepControl<Scalar>& ctl, PostStep&& post_step) {
  using T = detail::DormandPrinceTableau<Scalar>;
  IntegrationStats stats;
  if (!(t1 >= t0)) throw DomainError("integrate_dopri5: t1 < t0");

  Scalar t = t0;
  Scalar h = std::min(ctl.step_max, t1 - t0);
  const Scalar span_eps = Scalar(1e-13) * std::max(std::abs(t0), std::abs(t1));

  while (t1 - t > span_eps) {
    const Scalar remaining = t1 - t;
    const bool tail_step = remaining <= ctl.step_min;
    h = std::min({h, ctl.step_max, remaining});
    // Avoid leaving a sliver shorter than the minimum step behind.
    if (!tail_step && remaining - h < ctl.step_min) h = remaining;

    const State k1 = rhs(t, y);
    const State k2 = rhs(t + T::c2 * h, State(y + h * (T::a21 * k1)));
    const State k3 = rhs(t + T::c3 * h, State(y + h * (T::a31 * k1 + T::a32 * k2)));
    const State k4 =
        rhs(t + T::c4 * h, State(y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3)));
    const State k5 = rhs(t + T::c5 * h, State(y + h * (T::a51 * k1 + T::a52 * k2 +
                                                      T::a53 * k3 + T::a54 * k4)));
    const State k6 = rhs(t + h, State(y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 +
                                               T::a64 * k4 + T::a65 * k5)));
    State y_new =
        y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
    const State k7 = rhs(t + h, y_new);
    const State err_vec = h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 +
                               T::e6 * k6 + T::e7 * k7);

    const auto scale =
        (ctl.abs_tol + ctl.rel_tol * y.array().abs().max(y_new.array().abs())).eval();
    const Scalar err = (err_vec.array().abs() / scale).maxCoeff();

    if (err <= Scalar(1) || tail_step) {
      t = (h == remaining) ? t1 : t + h;
      y = std::move(y_new);
      post_step(t, y);
      ++stats.accepted;
      const Scalar grow =
          err > 0 ? std::clamp(Scalar(0.9) * std::pow(err, Scalar(-0.2)), Scalar(0.2), Scalar(5))
                  : Scalar(5);
      h = std::min(ctl.step_max, h * grow);
    } else {
      ++stats.rejected;
      h *= std::max(Scalar(0.2), Scalar(0.9) * std::pow(err, Scalar(-0.2)));
      if (h < ctl.step_min) {
        throw NumericalError(NumericalErrc::step_underflow,
                             "controller requested step " + std::to_string(h) + " ps at t = " +
                                 std::to_string(t) + " ps");
      }
    }
  }
  return stats;
}

template <typename State, typename Rhs, typename Scalar = double>
IntegrationStats integrate_dopri5(Rhs&& rhs, State& y, Scalar t0, Scalar t1,
                                  const StepControl<Scalar>& ctl) {
  return integrate_dopri5(std::forward<Rhs>(rhs), y, t0, t1, ctl, [](Scalar, State&) {});
}

}  // namespace bichrom
