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

// Periodic principal-value Hilbert transform and the phase / log-modulus
// reciprocity built on it.
//
// For a 2 pi periodic f the transform used throughout is
//
//   H[f](s) = P int_{-inf}^{inf} f(s') / (s' - s) ds'
//           = P int_{-pi}^{pi} f(s') * (1/2) cot((s' - s)/2) ds',
//
// so that H[cos ns] = -pi sin ns and H[sin ns] = pi cos ns. When
// log(chi/c0) = sum_{n>0} A_n e^{ins} has only positive frequencies,
//
//   arg(chi/c0)      = -(1/pi) H[ log|chi/c0| ]
//   log|chi/c0|      = +(1/pi) H[ arg(chi/c0) ].

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "phasemod/grid.hpp"
#include "phasemod/trigpoly.hpp"

namespace phasemod {

enum class HilbertMethod {
  series,      ///< Fourier multiplier i pi sign(n)
  quadrature,  ///< alternating-point trapezoid rule on the cot kernel
};

std::string_view to_string(HilbertMethod method);
/// Accepts "series" or "quadrature"; throws InvalidParameter otherwise.
HilbertMethod parse_method(std::string_view name);

/// H[f] at the grid points of `samples` (offset grid). With `fejer`, the
/// series method damps harmonic n by 1 - |n|/(m/2).
std::vector<double> periodic_hilbert(std::span<const double> samples, HilbertMethod method = HilbertMethod::series,
                                     bool fejer = false);

/// sum_z m_z log|2 sin((s - theta_z)/2)|: the log-modulus carried by zeros of
/// chi on the real axis.
std::vector<double> singular_log_modulus(std::span<const UnitCircleZero> zeros, std::size_t m);

/// sum_z m_z ((s - theta_z) mod 2 pi - pi)/2: the matching phase, a
/// sawtooth jumping by -pi m_z at each zero.
std::vector<double> singular_phase(std::span<const UnitCircleZero> zeros, std::size_t m);

inline constexpr double kLogModulusFloor = -30.0;

struct ReconstructionOptions {
  HilbertMethod method = HilbertMethod::series;
  bool fejer = false;
  /// Known real-axis zeros. Their exact conjugate pair is split off before
  /// transforming, which removes the O(1/m) aliasing of the log singularity.
  std::vector<UnitCircleZero> zeros;
  double log_floor = kLogModulusFloor;
  /// Largest |mean| of the input log-modulus accepted by phase_from_modulus.
  double max_mean_offset = std::numeric_limits<double>::infinity();
  /// Largest endpoint mismatch (rad) of a phase accepted by
  /// modulus_from_phase before it is rejected as trended.
  double trend_tolerance = kPi;
};

struct PhaseFromModulus {
  std::vector<double> phase;
  double removed_mean = 0.0;  ///< estimates log c0 when the input is log|chi|
};

/// arg(chi/c0) from log|chi/c0| samples (mean removed first).
PhaseFromModulus phase_from_modulus(std::span<const double> log_modulus, const ReconstructionOptions& options = {});

/// log|chi/c0| from unwrapped arg(chi/c0) samples. Throws TrendError if the
/// phase does not return to its starting value over the period.
std::vector<double> modulus_from_phase(std::span<const double> phase, const ReconstructionOptions& options = {});

struct PhaseJump {
  std::size_t cell = 0;  ///< jump lies between samples cell and cell+1
  double size = 0.0;
};

struct ZeroCell {
  std::size_t cell = 0;
  int weight = 1;  ///< zero multiplicity
};

struct Unwrapped {
  std::vector<double> phase;
  std::vector<PhaseJump> jumps;
};

/// Removes 2 pi wraps (steps larger than `jump_tolerance`, never below pi).
/// If `zero_cells` is given, the winding over the closed period is cancelled
/// by genuine jumps (multiples of 2 pi, shared by weight) placed at those
/// cells, which is how a phase passing through zeros of even order is made
/// periodic. The result is shifted by a multiple of 2 pi so the sample at
/// m/2 lies in (-pi, pi].
Unwrapped unwrap(std::span<const double> raw, double jump_tolerance = kPi,
                 std::span<const ZeroCell> zero_cells = {});

/// Cells holding the given real-axis zeros on an m-point grid.
std::vector<ZeroCell> zero_cells(std::span<const UnitCircleZero> zeros, std::size_t m);

/// Cells next to deep local minima of a sampled log-modulus: sample value
/// more than `depth` below the median.
std::vector<ZeroCell> detect_zero_cells(std::span<const double> log_modulus, double depth = 6.0);

/// Coefficients of log(chi/c0) = sum A_n cos(ns) + i sum B_n sin(ns).
struct ConjugateCoefficients {
  std::vector<double> A;  ///< A_0 .. A_nmax
  std::vector<double> B;  ///< B_0 (always 0) .. B_nmax

  int n_max() const noexcept { return static_cast<int>(A.size()) - 1; }
};

/// From samples of chi: A_n from the cosine series of log|chi/c0|, B_n from
/// the sine series of the unwrapped arg(chi/c0). Zeros on the real axis are
/// handled analytically when listed.
ConjugateCoefficients log_coefficients(const SampledSignal& chi, double c0, int n_max,
                                       std::span<const UnitCircleZero> zeros = {});

/// From a helicity series: roots are found first and log(chi/c0) is
/// evaluated as sum_j log(1 - z/z_j), which keeps full relative accuracy
/// next to the zeros.
ConjugateCoefficients log_coefficients(const HelicitySeries& chi, int n_max, std::size_t grid_size);

inline constexpr double kDiscrepancyFloor = 1e-9;

struct EqualityReport {
  std::vector<double> discrepancy;  ///< index n = 1 .. n_max (index 0 unused)
  double max_discrepancy = 0.0;
  int worst_n = 0;
  double a0 = 0.0;
};

/// |A_n - B_n| / max(|A_n|, floor) for n = 1 .. n_max.
EqualityReport coefficient_equality_check(const ConjugateCoefficients& coeffs, int n_max,
                                          double floor = kDiscrepancyFloor);

}  // namespace phasemod
