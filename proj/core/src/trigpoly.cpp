// Copyright (c) 2026 The phasemod authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phasemod/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fft.hpp"
#include "phasemod/errors.hpp"
#include "phasemod/grid.hpp"

namespace phasemod {
namespace {

// exp(-i n s_0) with s_0 = -pi + pi/m, split so the large multiple of pi is
// exact.
cplx grid_shift(long n, std::size_t m) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(1.0, -static_cast<double>(n) * kPi / static_cast<double>(m));
}

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidParameter(std::string(what) + ": non-finite coefficient");
  }
}

}  // namespace

TrigSeries::TrigSeries(std::vector<double> cosines, std::vector<double> sines)
    : a(std::move(cosines)), b(std::move(sines)) {
  if (a.empty() || a.size() != b.size()) {
    throw InvalidParameter("TrigSeries: a and b must be non-empty and of equal length");
  }
  require_finite(a, "TrigSeries");
  require_finite(b, "TrigSeries");
  if (b[0] != 0.0) throw InvalidParameter("TrigSeries: b[0] must be zero");
}

cplx TrigSeries::operator()(double s) const {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double x = static_cast<double>(n) * s;
    re += a[n] * std::cos(x);
    im += b[n] * std::sin(x);
  }
  return {re, im};
}

cplx HelicitySeries::operator()(double s) const {
  cplx sum = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) sum += c[m] * std::polar(1.0, static_cast<double>(m) * s);
  return sum;
}

cplx HelicitySeries::polynomial(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<double> SampledSignal::grid() const { return offset_grid(values.size()); }

CosineSineSeries real_fourier(std::span<const double> samples, int n_max) {
  const std::size_t m = samples.size();
  if (n_max < 0 || 2 * static_cast<std::size_t>(n_max) >= m) {
    throw InvalidParameter("real_fourier: n_max " + std::to_string(n_max) + " not below Nyquist of grid " +
                           std::to_string(m));
  }
  const auto spectrum = detail::rfft(samples);
  CosineSineSeries out{std::vector<double>(n_max + 1), std::vector<double>(n_max + 1)};
  const double inv_m = 1.0 / static_cast<double>(m);
  out.cos[0] = spectrum[0].real() * inv_m;
  for (int n = 1; n <= n_max; ++n) {
    const cplx f = spectrum[n] * inv_m * grid_shift(n, m);
    out.cos[n] = 2.0 * f.real();
    out.sin[n] = -2.0 * f.imag();
  }
  return out;
}

TrigSeries analyze(const SampledSignal& signal, int n_max) {
  if (n_max < 0) throw InvalidParameter("analyze: n_max must be non-negative");
  const std::size_t m = signal.size();
  require_grid(m, 4 * static_cast<std::size_t>(n_max) + 4, "analyze");

  const auto spectrum = detail::fft_forward(signal.values);
  const double inv_m = 1.0 / static_cast<double>(m);
  auto coefficient = [&](long n) {
    const std::size_t idx = n >= 0 ? static_cast<std::size_t>(n) : m - static_cast<std::size_t>(-n);
    return spectrum[idx] * inv_m * grid_shift(n, m);
  };

  std::vector<double> a(n_max + 1);
  std::vector<double> b(n_max + 1, 0.0);
  double worst = 0.0;
  const cplx f0 = coefficient(0);
  a[0] = f0.real();
  worst = std::abs(f0.imag());
  for (int n = 1; n <= n_max; ++n) {
    const cplx plus = coefficient(n);
    const cplx minus = coefficient(-n);
    const cplx an = plus + minus;
    const cplx bn = plus - minus;
    a[n] = an.real();
    b[n] = bn.real();
    worst = std::max({worst, std::abs(an.imag()), std::abs(bn.imag())});
  }
  if (worst > kRealityTolerance) {
    throw SymmetryError("analyze: coefficients have imaginary residue " + std::to_string(worst) +
                        "; samples do not satisfy phi*(s) = phi(-s)");
  }
  return TrigSeries(std::move(a), std::move(b));
}

SampledSignal synthesize(const TrigSeries& series, std::size_t m_samples, std::optional<int> fejer_order) {
  require_grid(m_samples, 4 * static_cast<std::size_t>(series.n_max()) + 4, "synthesize");
  if (fejer_order && *fejer_order < 0) throw InvalidParameter("synthesize: fejer_order must be non-negative");

  std::vector<double> weight(series.a.size(), 1.0);
  if (fejer_order) {
    const double denom = static_cast<double>(*fejer_order) + 1.0;
    for (std::size_t n = 0; n < weight.size(); ++n) {
      weight[n] = n <= static_cast<std::size_t>(*fejer_order) ? 1.0 - static_cast<double>(n) / denom : 0.0;
    }
  }
  SampledSignal out;
  out.values.resize(m_samples);
  for (std::size_t j = 0; j < m_samples; ++j) {
    const double s = grid_point(j, m_samples);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 0; n < weight.size(); ++n) {
      if (weight[n] == 0.0) continue;
      const double x = static_cast<double>(n) * s;
      re += weight[n] * series.a[n] * std::cos(x);
      im += weight[n] * series.b[n] * std::sin(x);
    }
    out.values[j] = {re, im};
  }
  return out;
}

HelicitySeries to_helicity(const TrigSeries& series) {
  const int n = series.n_max();
  HelicitySeries out;
  out.c.assign(2 * static_cast<std::size_t>(n) + 1, 0.0);
  for (int m = 0; m < n; ++m) out.c[m] = 0.5 * (series.a[n - m] - series.b[n - m]);
  out.c[n] = series.a[0];
  for (int m = n + 1; m <= 2 * n; ++m) out.c[m] = 0.5 * (series.a[m - n] + series.b[m - n]);
  return out;
}

RootCheck root_check(const HelicitySeries& series, double tolerance) {
  RootCheck out;
  out.roots = polynomial_roots(series.c);
  out.pass = true;
  out.min_modulus = std::numeric_limits<double>::infinity();
  for (const cplx& z : out.roots) {
    out.min_modulus = std::min(out.min_modulus, std::abs(z));
    if (std::abs(z) < 1.0 - tolerance) out.pass = false;
  }
  return out;
}

}  // namespace phasemod
