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

#include "bichrom/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "bichrom/error.hpp"
#include "bichrom/units.hpp"

namespace bichrom {
namespace {

double grid_step(const std::vector<double>& x) {
  if (x.size() < 2) throw DomainError("trace needs at least two samples");
  const double step = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  if (!(step > 0.0)) throw DomainError("grid must be increasing");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i] - x[i - 1] - step) > 1e-6 * step) throw DomainError("grid not uniform");
  }
  return step;
}

double interp(const std::vector<double>& x, const std::vector<double>& y, double at) {
  auto it = std::upper_bound(x.begin(), x.end(), at);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  i = std::min(i, x.size() - 2);
  const double f = (at - x[i]) / (x[i + 1] - x[i]);
  return y[i] + f * (y[i + 1] - y[i]);
}

// Linear interpolation of the abscissa where y crosses `level` between i and j.
double crossing(const std::vector<double>& x, const std::vector<double>& y, std::size_t i,
                std::size_t j, double level) {
  const double dy = y[j] - y[i];
  if (dy == 0.0) return x[i];
  return x[i] + (level - y[i]) / dy * (x[j] - x[i]);
}

}  // namespace

std::vector<Peak> find_peaks(const SpectrumTrace& trace, double min_prominence) {
  const auto& x = trace.omega_rel;
  const auto& y = trace.values;
  std::vector<Peak> peaks;
  if (y.size() < 3 || x.size() != y.size()) return peaks;
  grid_step(x);

  const double ymax = *std::max_element(y.begin(), y.end());
  if (!(ymax > 0.0)) return peaks;
  const double threshold = min_prominence * ymax;
  const std::size_t n = y.size();

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1])) continue;
    // Plateaus: take the first sample and require a strict drop afterwards.
    std::size_t r = i + 1;
    while (r < n && y[r] == y[i]) ++r;
    if (r == n || !(y[r] < y[i])) continue;

    // Bases: lowest point on each side before reaching higher ground.
    std::size_t lb = i;
    for (std::size_t k = i; k-- > 0;) {
      if (y[k] > y[i]) break;
      if (y[k] < y[lb]) lb = k;
    }
    std::size_t rb = i;
    for (std::size_t k = i + 1; k < n; ++k) {
      if (y[k] > y[i]) break;
      if (y[k] < y[rb]) rb = k;
    }
    const double base = std::max(y[lb], y[rb]);
    const double prominence = y[i] - base;
    if (prominence < threshold || !(prominence > 0.0)) continue;

    Peak pk;
    pk.prominence = prominence;
    const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
    const double curv = y0 - 2.0 * y1 + y2;
    double offset = curv < 0.0 ? 0.5 * (y0 - y2) / curv : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    const double step = x[i + 1] - x[i];
    pk.center = x[i] + offset * step;
    pk.height = y1 - 0.25 * (y0 - y2) * offset;

    const double level = y[i] - 0.5 * prominence;
    std::size_t a = i;
    while (a > lb && y[a] > level) --a;
    std::size_t b = i;
    while (b < rb && y[b] > level) ++b;
    const double left = y[a] > level ? x[a] : crossing(x, y, a, a + 1, level);
    const double right = y[b] > level ? x[b] : crossing(x, y, b - 1, b, level);
    pk.fwhm = right - left;

    double w = 0.0;
    for (std::size_t k = lb; k < rb; ++k) w += 0.5 * (y[k] + y[k + 1]) * (x[k + 1] - x[k]);
    pk.weight = w;
    if (pk.fwhm > 0.0 && pk.weight > 0.0) peaks.push_back(pk);
    i = r - 1;
  }
  return peaks;
}

double peak_weight(const std::vector<double>& x, const std::vector<double>& y, double center,
                   double half_window) {
  if (x.size() < 2 || x.size() != y.size()) throw DomainError("malformed trace");
  if (!(half_window >= 0.0)) throw DomainError("half window must be >= 0");
  const double lo = center - half_window;
  const double hi = center + half_window;
  const double slack = 1e-9 * std::max(1.0, std::abs(x.back() - x.front()));
  if (lo < x.front() - slack || hi > x.back() + slack) throw DomainError("window out of range");
  if (hi <= lo) return 0.0;

  // Nodes: window ends plus every grid point strictly inside.
  double area = 0.0;
  double px = lo, py = interp(x, y, lo);
  auto first = std::upper_bound(x.begin(), x.end(), lo);
  for (auto it = first; it != x.end() && *it < hi; ++it) {
    const std::size_t k = static_cast<std::size_t>(it - x.begin());
    area += 0.5 * (py + y[k]) * (x[k] - px);
    px = x[k];
    py = y[k];
  }
  area += 0.5 * (py + interp(x, y, hi)) * (hi - px);
  return area;
}

double peak_weight(const SpectrumTrace& trace, double center, double half_window) {
  return peak_weight(trace.omega_rel, trace.values, center, half_window);
}

double mirror_residual(const SpectrumTrace& a, const SpectrumTrace& b) {
  const std::size_t n = a.size();
  if (n == 0 || n != b.size() || a.omega_rel.size() != n || b.omega_rel.size() != n) {
    throw DomainError("grid mismatch");
  }
  double scale = 0.0;
  for (double w : a.omega_rel) scale = std::max(scale, std::abs(w));
  const double tol = 1e-9 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a.omega_rel[i] + b.omega_rel[n - 1 - i]) > tol) throw DomainError("grid mismatch");
  }
  double amax = 0.0, dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    amax = std::max(amax, a.values[i]);
    dev = std::max(dev, std::abs(a.values[i] - b.values[n - 1 - i]));
  }
  return amax > 0.0 ? dev / amax : dev;
}

SpectrumTrace convolve_lorentzian(const SpectrumTrace& trace, double fwhm) {
  if (!(fwhm > 0.0)) throw DomainError("fwhm must be > 0");
  const auto& x = trace.omega_rel;
  const double step = grid_step(x);
  if (!(step < 0.25 * fwhm)) throw DomainError("grid too coarse");

  const std::size_t n = x.size();
  const double hw = 0.5 * fwhm;
  auto kernel = [hw](double d) { return hw / (units::pi * (d * d + hw * hw)); };

  SpectrumTrace out = trace;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (trace.values[j] == 0.0) continue;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = kernel(x[i] - x[j]);
      norm += column[i];
    }
    const double s = trace.values[j] / norm;
    for (std::size_t i = 0; i < n; ++i) out.values[i] += s * column[i];
  }
  return out;
}

}  // namespace bichrom
