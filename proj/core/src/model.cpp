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

#include "phasemod/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fft.hpp"
#include "phasemod/errors.hpp"

namespace phasemod {
namespace {

cplx amplitude(const ModelParams& p, double s, double imaginary_scale) {
  const double c2k = std::cos(2.0 * p.k * s);
  const double s2k = std::sin(2.0 * p.k * s);
  const double re = c2k * std::cos(s) + s2k * std::sin(s) / (2.0 * p.k);
  const double im = -imaginary_scale * (p.g / (2.0 * p.k)) * s2k * std::cos(s);
  return {re, im};
}

cplx amplitude_derivative(const ModelParams& p, double s, double imaginary_scale) {
  const double c2k = std::cos(2.0 * p.k * s);
  const double s2k = std::sin(2.0 * p.k * s);
  const double re = s2k * std::cos(s) * (1.0 / (2.0 * p.k) - 2.0 * p.k);
  const double im = -imaginary_scale * (p.g / (2.0 * p.k)) * (2.0 * p.k * c2k * std::cos(s) - s2k * std::sin(s));
  return {re, im};
}

cplx companion(const ModelParams& p, double s, double imaginary_scale) {
  const Hamiltonian h = hamiltonian(p, s);
  const cplx phi = amplitude(p, s, imaginary_scale);
  const cplx dphi = amplitude_derivative(p, s, imaginary_scale);
  return (cplx(0.0, 0.5) * dphi - h.h22 * phi) / h.h21;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(name) + " must be positive and finite, got " + std::to_string(v));
  }
}

ModelParams finish(double g, double k, double omega) {
  ModelParams p;
  p.g = g;
  p.omega = omega;
  p.k = k;
  const double nearest = std::round(k);
  if (std::abs(k - nearest) < kCyclicTolerance) {
    p.k = nearest;
    p.cyclic = true;
    p.n_harmonic = 2 * static_cast<int>(nearest) + 1;
  }
  return p;
}

StateVector rhs(const Hamiltonian& h, const StateVector& psi) {
  // dPsi/ds = -2i H Psi
  const cplx f = cplx(0.0, -2.0);
  return {f * (h.h11 * psi.first + h.h12 * psi.second), f * (h.h21 * psi.first + h.h22 * psi.second)};
}

StateVector axpy(const StateVector& x, double a, const StateVector& d) {
  return {x.first + a * d.first, x.second + a * d.second};
}

}  // namespace

std::string ModelParams::regime() const {
  if (k >= 10.0) return "adiabatic";
  if (k >= 2.0) return "intermediate";
  return "non-adiabatic";
}

ModelParams derive_params(double g, double omega) {
  require_positive(g, "g");
  require_positive(omega, "omega");
  return finish(g, 0.5 * std::sqrt(g * g + 1.0), omega);
}

ModelParams params_from_k(double k, double omega) {
  require_positive(omega, "omega");
  if (!(k > 0.5) || !std::isfinite(k)) {
    throw InvalidParameter("k must exceed 1/2 (g = sqrt(4k^2 - 1) > 0), got " + std::to_string(k));
  }
  const double nearest = std::round(k);
  if (std::abs(k - nearest) < kCyclicTolerance) k = nearest;
  return finish(std::sqrt(4.0 * k * k - 1.0), k, omega);
}

cplx braced_amplitude(const ModelParams& p, double s) { return amplitude(p, s, 1.0); }

cplx braced_amplitude_derivative(const ModelParams& p, double s) { return amplitude_derivative(p, s, 1.0); }

Hamiltonian hamiltonian(const ModelParams& p, double s) {
  const double half = 0.5 * p.g;
  const double c = std::cos(2.0 * s);
  const double sn = std::sin(2.0 * s);
  return {-half * c, half * sn, half * sn, half * c};
}

cplx companion_amplitude(const ModelParams& p, double s) { return companion(p, s, 1.0); }

ModelSignals evaluate_model(const ModelParams& p, std::size_t m, double near_zero_depth) {
  ModelSignals out;
  out.grid = offset_grid(m);
  out.phi1.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.phi1[j] = braced_amplitude(p, out.grid[j]);

  std::vector<double> raw(m);
  std::vector<ZeroCell> cells;
  if (p.cyclic) {
    const int n = *p.n_harmonic;
    require_grid(m, 4 * static_cast<std::size_t>(n) + 4, "evaluate_model");
    out.harmonic = n;
    out.helicity = to_helicity(analyze(SampledSignal{out.phi1}, n));
    out.c0 = out.helicity->c.front();
    if (!(out.c0 > 0.0)) throw NormalizationError("evaluate_model: c0 is not positive");
    const auto roots = root_check(*out.helicity).roots;
    out.zeros = unit_circle_zeros(roots);
    cells = zero_cells(out.zeros, m);

    out.chi.emplace(m);
    for (std::size_t j = 0; j < m; ++j) (*out.chi)[j] = std::polar(1.0, n * out.grid[j]) * out.phi1[j];
    out.log_modulus.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      out.log_modulus[j] = std::log(std::abs(out.phi1[j]) / out.c0);
      raw[j] = std::arg((*out.chi)[j]);
    }
  } else {
    require_grid(m, 4, "evaluate_model");
    out.harmonic = 2.0 * p.k + 1.0;
    out.log_modulus.resize(m);
    for (std::size_t j = 0; j < m; ++j) out.log_modulus[j] = std::log(std::abs(out.phi1[j]));
    const double log_c0 = mean(out.log_modulus);
    out.c0 = std::exp(log_c0);
    for (double& v : out.log_modulus) v -= log_c0;
    for (std::size_t j = 0; j < m; ++j) raw[j] = wrap_angle(std::arg(out.phi1[j]) + out.harmonic * out.grid[j]);
    cells = detect_zero_cells(out.log_modulus, near_zero_depth);
  }

  auto unwrapped = unwrap(raw, kPi, cells);
  out.jumps = std::move(unwrapped.jumps);
  out.phase_chi = std::move(unwrapped.phase);
  out.phase_physical.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.phase_physical[j] = out.phase_chi[j] + (p.g - out.harmonic) * out.grid[j];

  if (!p.cyclic) {
    out.removed_trend = (out.phase_chi.back() - out.phase_chi.front()) / (out.grid.back() - out.grid.front());
    for (std::size_t j = 0; j < m; ++j) out.phase_chi[j] -= out.removed_trend * out.grid[j];
    const double offset = mean(out.phase_chi);
    for (double& v : out.phase_chi) v -= offset;
  }
  return out;
}

Trajectory integrate_ode(const ModelParams& p, const StateVector& initial, double s_begin, double s_end, double step,
                         bool frozen) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidParameter("integrate_ode: step must be positive");
  const double norm0 = initial.norm();
  if (std::abs(norm0 - 1.0) > 1e-9) throw InvalidParameter("integrate_ode: initial state must be normalised");

  const double span = s_end - s_begin;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(span) / step)));
  const double hs = span / static_cast<double>(n);
  const Hamiltonian fixed = hamiltonian(p, s_begin);
  auto h_at = [&](double s) { return frozen ? fixed : hamiltonian(p, s); };

  Trajectory out;
  out.s.reserve(n + 1);
  out.states.reserve(n + 1);
  StateVector psi = initial;
  out.s.push_back(s_begin);
  out.states.push_back(psi);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s_begin + hs * static_cast<double>(i);
    const Hamiltonian h0 = h_at(s);
    const Hamiltonian hm = h_at(s + 0.5 * hs);
    const Hamiltonian h1 = h_at(s + hs);
    const StateVector k1 = rhs(h0, psi);
    const StateVector k2 = rhs(hm, axpy(psi, 0.5 * hs, k1));
    const StateVector k3 = rhs(hm, axpy(psi, 0.5 * hs, k2));
    const StateVector k4 = rhs(h1, axpy(psi, hs, k3));
    psi.first += hs / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
    psi.second += hs / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
    out.s.push_back(s_begin + hs * static_cast<double>(i + 1));
    out.states.push_back(psi);
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.norm() - norm0));
  }
  out.drift_warning = out.max_norm_drift > 1e-6;
  return out;
}

OdeCheck ode_cross_check(const ModelParams& p, double step) {
  const auto trajectory = integrate_ode(p, {cplx(0.0), cplx(1.0)}, 0.0, kTwoPi, step);
  OdeCheck out;
  out.max_norm_drift = trajectory.max_norm_drift;
  for (std::size_t i = 0; i < trajectory.s.size(); ++i) {
    const double s = trajectory.s[i];
    const StateVector& psi = trajectory.states[i];
    double deviation = std::abs(psi.second - braced_amplitude(p, s));
    if (std::abs(std::sin(2.0 * s)) >= 0.05) {
      deviation = std::max(deviation, std::abs(psi.first - companion_amplitude(p, s)));
    }
    out.max_deviation = std::max(out.max_deviation, deviation);
    ++out.compared;
  }
  return out;
}

double solution_residual(const ModelParams& p, std::size_t m, const ResidualOptions& options) {
  require_grid(m, 8, "solution_residual");
  const double scale = options.imaginary_scale;
  const auto grid = offset_grid(m);
  std::vector<cplx> u(m);
  for (std::size_t j = 0; j < m; ++j) u[j] = companion(p, grid[j], scale);

  std::vector<cplx> du(m);
  if (p.cyclic) {
    auto spectrum = detail::fft_forward(u);
    const auto half = static_cast<long>(m / 2);
    for (std::size_t q = 0; q < m; ++q) {
      const long n = static_cast<long>(q) < half ? static_cast<long>(q) : static_cast<long>(q) - static_cast<long>(m);
      spectrum[q] *= (static_cast<long>(q) == half) ? cplx(0.0) : cplx(0.0, static_cast<double>(n) / m);
    }
    du = detail::fft_backward(spectrum);
  } else {
    // Eighth-order central difference on the analytic companion.
    static constexpr std::array<double, 4> w{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const double h = grid_spacing(m);
    for (std::size_t j = 0; j < m; ++j) {
      cplx acc = 0.0;
      for (std::size_t r = 0; r < w.size(); ++r) {
        const double d = static_cast<double>(r + 1) * h;
        acc += w[r] * (companion(p, grid[j] + d, scale) - companion(p, grid[j] - d, scale));
      }
      du[j] = acc / h;
    }
  }

  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const Hamiltonian h = hamiltonian(p, grid[j]);
    const cplx phi = amplitude(p, grid[j], scale);
    const cplx r = cplx(0.0, 0.5) * du[j] - h.h11 * u[j] - h.h12 * phi;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double berry_phase_predicted(const ModelParams& p) {
  if (!p.cyclic) throw NotCyclicError("berry_phase_predicted: k = " + std::to_string(p.k) + " is not an integer");
  return (1.0 - (2.0 * p.k - p.g)) * kPi;
}

double near_edge_phase(const ModelParams& p, double s) {
  const cplx bracket = 2.0 * (s - 0.5 * kPi) - std::sin(2.0 * p.k * s) * std::polar(1.0, 2.0 * p.k * s) / p.k;
  if (bracket == cplx(0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::arg(bracket);
}

}  // namespace phasemod
