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

#pragma once

// Trigonometric polynomials
//
//   phi(s) = sum_{n=0}^{N} a_n cos(ns) + i sum_{n=0}^{N} b_n sin(ns)
//
// with real a_n, b_n (equivalently phi*(s) = phi(-s)), their sampled form on
// the offset grid, and the positive-frequency ("helicity") form
//
//   chi(s) = e^{iNs} phi(s) = sum_{m=0}^{2N} c_m e^{ims}.
//
// The zeros of chi, viewed as a polynomial in z = e^{is}, decide whether
// log(chi/c_0) has a one-sided Fourier expansion: every zero must satisfy
// |z| >= 1 (Im s <= 0).

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "phasemod/grid.hpp"

namespace phasemod {

using cplx = std::complex<double>;

struct TrigSeries {
  std::vector<double> a;  ///< cosine coefficients a_0 .. a_N
  std::vector<double> b;  ///< sine coefficients, b_0 == 0

  TrigSeries() = default;
  /// Validates: equal lengths, finite entries, b[0] == 0.
  TrigSeries(std::vector<double> cosines, std::vector<double> sines);

  int n_max() const noexcept { return static_cast<int>(a.size()) - 1; }
  cplx operator()(double s) const;
};

struct HelicitySeries {
  std::vector<double> c;  ///< c_0 .. c_{2N}

  /// sum_m c_m e^{ims}
  cplx operator()(double s) const;
  /// sum_m c_m z^m
  cplx polynomial(cplx z) const;
};

/// Complex samples of a 2 pi periodic function on the offset grid.
struct SampledSignal {
  std::vector<cplx> values;

  std::size_t size() const noexcept { return values.size(); }
  std::vector<double> grid() const;

  template <class F>
  static SampledSignal sample(F&& f, std::size_t m);
};

/// Real Fourier series f(s) = cos[0] + sum_n (cos[n] cos(ns) + sin[n] sin(ns)).
/// sin[0] is always zero.
struct CosineSineSeries {
  std::vector<double> cos;
  std::vector<double> sin;
};

/// Fourier coefficients of real samples on the offset grid, n = 0 .. n_max.
CosineSineSeries real_fourier(std::span<const double> samples, int n_max);

/// Absolute tolerance on the imaginary residue of extracted a_n, b_n.
inline constexpr double kRealityTolerance = 1e-10;

/// Extracts a_n, b_n from samples. Requires m >= 4 n_max + 4; throws
/// SymmetryError when the coefficients are not real to kRealityTolerance.
TrigSeries analyze(const SampledSignal& signal, int n_max);

/// Evaluates the series on the m-point offset grid. With `fejer_order` = K
/// the result is the Cesaro mean (S_0 + ... + S_K) / (K + 1) of the partial
/// sums instead of the full sum.
SampledSignal synthesize(const TrigSeries& series, std::size_t m_samples,
                         std::optional<int> fejer_order = std::nullopt);

/// c_m = (a_{N-m} - b_{N-m})/2 for m < N, c_N = a_0,
/// c_m = (a_{m-N} + b_{m-N})/2 for m > N.
HelicitySeries to_helicity(const TrigSeries& series);

/// A zero of chi on the real s axis (|z| = 1).
struct UnitCircleZero {
  double angle = 0.0;    ///< position in s, in (-pi, pi]
  int multiplicity = 1;
};

inline constexpr double kRootTolerance = 1e-9;

struct RootCheck {
  std::vector<cplx> roots;
  bool pass = false;          ///< every |z| >= 1 - tolerance
  double min_modulus = 0.0;
};

/// Roots of sum_m c_m z^m from companion-matrix eigenvalues (polished), and
/// the |z| >= 1 test. Throws InvalidParameter for the zero polynomial.
RootCheck root_check(const HelicitySeries& series, double tolerance = kRootTolerance);

/// Roots of sum_k coeffs[k] z^k. Trailing (high order) coefficients below
/// 1e-13 of the largest are trimmed; clustered eigenvalues are polished as a
/// single multiple root.
std::vector<cplx> polynomial_roots(std::span<const double> ascending);

/// Groups roots lying on the unit circle (within `tolerance` in modulus)
/// into zeros of chi on the real axis, sorted by angle.
std::vector<UnitCircleZero> unit_circle_zeros(std::span<const cplx> roots, double tolerance = 1e-7);

template <class F>
SampledSignal SampledSignal::sample(F&& f, std::size_t m) {
  SampledSignal out;
  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.values[j] = f(grid_point(j, m));
  }
  return out;
}

}  // namespace phasemod
