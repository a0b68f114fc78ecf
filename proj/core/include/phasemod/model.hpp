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

// Driven two-level system
//
//   i dPsi/dt = H(t) Psi,   H(t) = (G/2) [[-cos wt, sin wt], [sin wt, cos wt]],
//
// in the dimensionless time s = w t / 2 (period 2 pi in s, w = 1 inside the
// library). With g = G/w and k = K/w = sqrt(g^2 + 1)/2 the amplitude with
// the dynamic phase removed is
//
//   phi1(s) = cos(2ks) cos(s) + sin(2ks) sin(s) / (2k) - i (g/2k) sin(2ks) cos(s).
//
// phi1 is the lower component of Psi; the state starts at Psi(0) = (0, 1).

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phasemod/hilbert.hpp"
#include "phasemod/trigpoly.hpp"

namespace phasemod {

inline constexpr double kCyclicTolerance = 1e-9;

struct ModelParams {
  double g = 0.0;      ///< G / w
  double omega = 1.0;  ///< w; only converts s to t in outputs
  double k = 0.0;      ///< K / w
  std::optional<int> n_harmonic;  ///< N = 2k + 1 when k is an integer
  bool cyclic = false;

  /// "adiabatic" for k >= 10, "intermediate" for k >= 2, else "non-adiabatic".
  std::string regime() const;
};

/// k = sqrt(g^2 + 1)/2. A k within kCyclicTolerance of an integer is stored
/// as that integer.
ModelParams derive_params(double g, double omega = 1.0);

/// Inverse route: g = sqrt(4k^2 - 1). Requires k > 1/2.
ModelParams params_from_k(double k, double omega = 1.0);

/// phi1(s) and its s-derivative.
cplx braced_amplitude(const ModelParams& p, double s);
cplx braced_amplitude_derivative(const ModelParams& p, double s);

/// Hamiltonian at dimensionless time s (t = 2s), row major.
struct Hamiltonian {
  double h11 = 0.0, h12 = 0.0, h21 = 0.0, h22 = 0.0;
};
Hamiltonian hamiltonian(const ModelParams& p, double s);

struct StateVector {
  cplx first;   ///< upper component
  cplx second;  ///< lower component (phi1)

  double norm() const { return std::sqrt(std::norm(first) + std::norm(second)); }
};

struct ModelSignals {
  std::vector<double> grid;
  std::vector<cplx> phi1;
  std::optional<std::vector<cplx>> chi;      ///< e^{iNs} phi1, cyclic only
  std::optional<HelicitySeries> helicity;    ///< cyclic only
  double c0 = 1.0;
  std::vector<double> log_modulus;           ///< log|phi1 / c0|
  std::vector<double> phase_chi;             ///< unwrapped arg(chi / c0)
  std::vector<double> phase_physical;        ///< unwrapped arg phi1 + g s
  std::vector<UnitCircleZero> zeros;         ///< real-axis zeros (cyclic)
  std::vector<PhaseJump> jumps;
  /// N for cyclic parameters, 2k + 1 otherwise.
  double harmonic = 0.0;
  /// Non-cyclic only: slope removed from phase_chi to make it periodic.
  double removed_trend = 0.0;
};

/// Default log-modulus depth (below the median) used to locate the near
/// zeros of a non-cyclic amplitude.
inline constexpr double kNearZeroDepth = 2.0;

/// Samples the model on the m-point offset grid.
///
/// Cyclic: chi = e^{iNs} phi1 is analysed into its helicity series, whose
/// roots give c0 and the real-axis zeros; the phase is unwrapped with a
/// genuine jump at every zero.
///
/// Non-cyclic: chi is replaced by e^{i(2k+1)s} phi1 on the window, jumps are
/// placed at the near zeros (log-modulus dips deeper than `near_zero_depth`)
/// and the leftover linear trend and mean are removed from phase_chi. c0 is the
/// geometric mean of |phi1|.
ModelSignals evaluate_model(const ModelParams& p, std::size_t m, double near_zero_depth = kNearZeroDepth);

struct Trajectory {
  std::vector<double> s;
  std::vector<StateVector> states;
  double max_norm_drift = 0.0;
  bool drift_warning = false;  ///< drift above 1e-6
};

/// Classic RK4 for dPsi/ds = -2i H(2s) Psi from s_begin to s_end (either
/// direction) with |step| <= `step`. `frozen` holds H at s_begin.
Trajectory integrate_ode(const ModelParams& p, const StateVector& initial, double s_begin, double s_end, double step,
                         bool frozen = false);

/// Upper component obtained from phi1 through the second row of the
/// Schrodinger equation, u = (i/2 phi1' - H22 phi1) / H21. Undefined where
/// sin 2s = 0.
cplx companion_amplitude(const ModelParams& p, double s);

/// Default RK4 step: one ten-thousandth of the period.
inline constexpr double kDefaultStep = kTwoPi * 1e-4;

struct OdeCheck {
  double max_deviation = 0.0;  ///< largest |RK4 - analytic| component
  double max_norm_drift = 0.0;
  std::size_t compared = 0;    ///< trajectory points compared
};

/// Integrates from Psi(0) = (0, 1) over s in [0, 2 pi] and compares with the
/// analytic pair (companion_amplitude, phi1). The upper component is only
/// compared where |sin 2s| >= 0.05, away from the elimination's poles.
OdeCheck ode_cross_check(const ModelParams& p, double step = kDefaultStep);

struct ResidualOptions {
  /// Multiplies the imaginary term of phi1 (1 = the model itself).
  double imaginary_scale = 1.0;
};

/// Builds the companion from phi1 and returns the largest first-row residual
/// |i/2 u' - H11 u - H12 phi1| on the m-point grid. u' is spectral for cyclic
/// parameters and an eighth-order finite difference otherwise.
double solution_residual(const ModelParams& p, std::size_t m, const ResidualOptions& options = {});

/// [1 - (2k - g)] pi. Throws NotCyclicError for non-integer k.
double berry_phase_predicted(const ModelParams& p);

/// Im ln[2(s - pi/2) - sin(2ks) e^{2iks} / k]; NaN where the bracket
/// vanishes.
double near_edge_phase(const ModelParams& p, double s);

}  // namespace phasemod
