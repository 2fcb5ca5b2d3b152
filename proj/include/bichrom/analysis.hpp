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

// Peak extraction, spectral weights, mirror-symmetry residuals and
// instrument broadening on sampled spectra.

#include <vector>

#include "bichrom/spectrum.hpp"

namespace bichrom {

struct Peak {
  double center = 0.0;  // ueV, parabolic refinement
  double height = 0.0;
  double fwhm = 0.0;    // ueV, full width at half prominence
  double weight = 0.0;  // trapezoid area between the peak's bases
  double prominence = 0.0;
};

/// Local maxima whose prominence is at least min_prominence * max(trace).
/// Peaks on the first or last sample are not reported.
std::vector<Peak> find_peaks(const SpectrumTrace& trace, double min_prominence = 0.01);

/// Integral of the piecewise-linear trace over [center - half_window,
/// center + half_window]. Throws DomainError("window out of range").
double peak_weight(const SpectrumTrace& trace, double center, double half_window);
double peak_weight(const std::vector<double>& omega, const std::vector<double>& values,
                   double center, double half_window);

/// max |A(w) - B(-w)| / max A. B must be sampled on the negated grid of A.
double mirror_residual(const SpectrumTrace& a, const SpectrumTrace& b);

/// Discrete convolution with a unit-area Lorentzian. Each source column of the
/// kernel is renormalized over the finite grid, so total area is preserved.
SpectrumTrace convolve_lorentzian(const SpectrumTrace& trace, double fwhm);

/// Spectrometer resolution of the reference experiment, ueV.
inline constexpr double kInstrumentFwhm = 1.24;

}  // namespace bichrom
