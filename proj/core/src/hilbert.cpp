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

#include "phasemod/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fft.hpp"
#include "phasemod/errors.hpp"

namespace phasemod {
namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidParameter(std::string(what) + ": non-finite input sample");
  }
}

std::vector<double> hilbert_series(std::span<const double> f, bool fejer) {
  const std::size_t m = f.size();
  auto spectrum = detail::rfft(f);
  const std::size_t half = m / 2;
  const double inv_m = 1.0 / static_cast<double>(m);
  spectrum[0] = 0.0;
  for (std::size_t n = 1; n < half; ++n) {
    const double w = fejer ? 1.0 - static_cast<double>(n) / static_cast<double>(half) : 1.0;
    spectrum[n] *= cplx(0.0, kPi * w * inv_m);
  }
  spectrum[half] = 0.0;
  return detail::irfft(spectrum, m);
}

// Trapezoid rule on the nodes an odd number of cells away from the
// evaluation point: spacing 2h, offset h, so the pole is never sampled and
// the rule is exact for harmonics below m/2.
std::vector<double> hilbert_quadrature(std::span<const double> f) {
  const std::size_t m = f.size();
  const double h = grid_spacing(m);
  std::vector<double> kernel(m, 0.0);
  for (std::size_t d = 1; d < m; d += 2) kernel[d] = h / std::tan(0.5 * h * static_cast<double>(d));

  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    const std::size_t first_wrap = m - i;  // d >= first_wrap wraps around
    std::size_t d = 1;
    for (; d < first_wrap; d += 2) acc += kernel[d] * f[i + d];
    for (; d < m; d += 2) acc += kernel[d] * f[i + d - m];
    out[i] = acc;
  }
  return out;
}

}  // namespace

std::string_view to_string(HilbertMethod method) {
  switch (method) {
    case HilbertMethod::series:
      return "series";
    case HilbertMethod::quadrature:
      return "quadrature";
  }
  return "unknown";
}

HilbertMethod parse_method(std::string_view name) {
  if (name == "series") return HilbertMethod::series;
  if (name == "quadrature") return HilbertMethod::quadrature;
  throw InvalidParameter("unknown Hilbert method '" + std::string(name) + "' (expected series|quadrature)");
}

std::vector<double> periodic_hilbert(std::span<const double> samples, HilbertMethod method, bool fejer) {
  require_grid(samples.size(), 4, "periodic_hilbert");
  require_finite(samples, "periodic_hilbert");
  if (method == HilbertMethod::quadrature) return hilbert_quadrature(samples);
  return hilbert_series(samples, fejer);
}

std::vector<double> singular_log_modulus(std::span<const UnitCircleZero> zeros, std::size_t m) {
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double s = grid_point(j, m);
    for (const auto& z : zeros) out[j] += z.multiplicity * std::log(std::abs(2.0 * std::sin(0.5 * (s - z.angle))));
  }
  return out;
}

std::vector<double> singular_phase(std::span<const UnitCircleZero> zeros, std::size_t m) {
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double s = grid_point(j, m);
    for (const auto& z : zeros) {
      double x = std::fmod(s - z.angle, kTwoPi);
      if (x < 0.0) x += kTwoPi;
      out[j] += z.multiplicity * 0.5 * (x - kPi);
    }
  }
  return out;
}

PhaseFromModulus phase_from_modulus(std::span<const double> log_modulus, const ReconstructionOptions& options) {
  const std::size_t m = log_modulus.size();
  require_grid(m, 4, "phase_from_modulus");
  const auto sing_mod = singular_log_modulus(options.zeros, m);
  const auto sing_phase = singular_phase(options.zeros, m);

  std::vector<double> regular(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double v = std::isnan(log_modulus[j]) ? log_modulus[j] : std::max(log_modulus[j], options.log_floor);
    regular[j] = v - sing_mod[j];
  }
  require_finite(regular, "phase_from_modulus");

  PhaseFromModulus out;
  out.removed_mean = mean(regular);
  if (std::abs(out.removed_mean) > options.max_mean_offset) {
    throw NormalizationError("phase_from_modulus: log-modulus mean " + std::to_string(out.removed_mean) +
                             " exceeds bound " + std::to_string(options.max_mean_offset) + "; c0 is inconsistent");
  }
  for (double& v : regular) v -= out.removed_mean;

  auto transformed = periodic_hilbert(regular, options.method, options.fejer);
  out.phase.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.phase[j] = -transformed[j] / kPi + sing_phase[j];
  return out;
}

std::vector<double> modulus_from_phase(std::span<const double> phase, const ReconstructionOptions& options) {
  const std::size_t m = phase.size();
  require_grid(m, 4, "modulus_from_phase");
  require_finite(phase, "modulus_from_phase");
  const auto sing_mod = singular_log_modulus(options.zeros, m);
  const auto sing_phase = singular_phase(options.zeros, m);

  std::vector<double> regular(m);
  for (std::size_t j = 0; j < m; ++j) regular[j] = phase[j] - sing_phase[j];

  const double mismatch = regular[m - 1] - regular[0];
  if (std::abs(mismatch) > options.trend_tolerance) {
    throw TrendError("modulus_from_phase: phase changes by " + std::to_string(mismatch) +
                     " rad over the period (linear trend); remove it before transforming");
  }

  auto transformed = periodic_hilbert(regular, options.method, options.fejer);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = transformed[j] / kPi + sing_mod[j];
  return out;
}

Unwrapped unwrap(std::span<const double> raw, double jump_tolerance, std::span<const ZeroCell> zero_cells) {
  Unwrapped out;
  const std::size_t m = raw.size();
  if (m == 0) return out;
  const double tol = std::max(jump_tolerance, kPi);
  auto step = [tol](double d) { return std::abs(d) > tol ? wrap_angle(d) : d; };

  out.phase.resize(m);
  out.phase[0] = raw[0];
  for (std::size_t j = 1; j < m; ++j) out.phase[j] = out.phase[j - 1] + step(raw[j] - raw[j - 1]);

  if (!zero_cells.empty()) {
    const double winding = out.phase[m - 1] - out.phase[0] + step(raw[0] - raw[m - 1]);
    const long turns = std::lround(winding / kTwoPi);
    if (turns != 0) {
      const double total_weight = std::accumulate(zero_cells.begin(), zero_cells.end(), 0.0,
                                                  [](double acc, const ZeroCell& z) { return acc + z.weight; });
      // Largest-remainder split of -turns over the cells, by weight.
      std::vector<long> share(zero_cells.size());
      std::vector<std::pair<double, std::size_t>> remainder;
      long assigned = 0;
      for (std::size_t i = 0; i < zero_cells.size(); ++i) {
        const double exact = -static_cast<double>(turns) * zero_cells[i].weight / total_weight;
        share[i] = static_cast<long>(std::trunc(exact));
        assigned += share[i];
        remainder.emplace_back(std::abs(exact - static_cast<double>(share[i])), i);
      }
      std::stable_sort(remainder.begin(), remainder.end(),
                       [](const auto& l, const auto& r) { return l.first > r.first; });
      const long sign = turns > 0 ? -1 : 1;
      for (std::size_t r = 0; assigned != -turns && r < remainder.size(); ++r) {
        share[remainder[r].second] += sign;
        assigned += sign;
      }
      for (std::size_t i = 0; i < zero_cells.size(); ++i) {
        if (share[i] == 0) continue;
        const double size = kTwoPi * static_cast<double>(share[i]);
        for (std::size_t j = zero_cells[i].cell + 1; j < m; ++j) out.phase[j] += size;
        out.jumps.push_back({zero_cells[i].cell, size});
      }
      std::sort(out.jumps.begin(), out.jumps.end(), [](const auto& l, const auto& r) { return l.cell < r.cell; });
    }
  }

  const std::size_t anchor = m / 2;
  const double shift = kTwoPi * std::round((wrap_angle(raw[anchor]) - out.phase[anchor]) / kTwoPi);
  if (shift != 0.0) {
    for (double& p : out.phase) p += shift;
  }
  return out;
}

std::vector<ZeroCell> zero_cells(std::span<const UnitCircleZero> zeros, std::size_t m) {
  std::vector<ZeroCell> out;
  out.reserve(zeros.size());
  for (const auto& z : zeros) out.push_back({cell_of(z.angle, m), z.multiplicity});
  return out;
}

std::vector<ZeroCell> detect_zero_cells(std::span<const double> log_modulus, double depth) {
  const std::size_t m = log_modulus.size();
  std::vector<ZeroCell> out;
  if (m < 3) return out;
  std::vector<double> sorted(log_modulus.begin(), log_modulus.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(m / 2), sorted.end());
  const double threshold = sorted[m / 2] - depth;
  for (std::size_t j = 0; j < m; ++j) {
    const double prev = log_modulus[(j + m - 1) % m];
    const double next = log_modulus[(j + 1) % m];
    const double v = log_modulus[j];
    if (v < prev && v <= next && v < threshold) {
      const std::size_t cell = next <= prev ? j : (j + m - 1) % m;
      out.push_back({cell, 1});
    }
  }
  return out;
}

ConjugateCoefficients log_coefficients(const SampledSignal& chi, double c0, int n_max,
                                       std::span<const UnitCircleZero> zeros) {
  if (!(c0 > 0.0)) throw NormalizationError("log_coefficients: c0 must be positive, got " + std::to_string(c0));
  if (n_max < 0) throw InvalidParameter("log_coefficients: n_max must be non-negative");
  const std::size_t m = chi.size();
  require_grid(m, 4 * static_cast<std::size_t>(n_max) + 4, "log_coefficients");

  const auto sing_mod = singular_log_modulus(zeros, m);
  const auto sing_phase = singular_phase(zeros, m);
  std::vector<double> log_mod(m);
  std::vector<double> raw_phase(m);
  for (std::size_t j = 0; j < m; ++j) {
    const cplx ratio = chi.values[j] / c0;
    log_mod[j] = std::log(std::abs(ratio)) - sing_mod[j];
    raw_phase[j] = wrap_angle(std::arg(ratio) - sing_phase[j]);
  }
  require_finite(log_mod, "log_coefficients");
  const auto phase = unwrap(raw_phase).phase;

  const auto mod_series = real_fourier(log_mod, n_max);
  const auto phase_series = real_fourier(phase, n_max);
  ConjugateCoefficients out{mod_series.cos, phase_series.sin};
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& z : zeros) {
      const double sing = -z.multiplicity * std::cos(n * z.angle) / n;
      out.A[n] += sing;
      out.B[n] += sing;
    }
  }
  out.B[0] = 0.0;
  return out;
}

ConjugateCoefficients log_coefficients(const HelicitySeries& chi, int n_max, std::size_t grid_size) {
  if (chi.c.empty() || !(chi.c[0] > 0.0)) {
    throw NormalizationError("log_coefficients: c0 must be positive");
  }
  if (n_max < 0) throw InvalidParameter("log_coefficients: n_max must be non-negative");
  require_grid(grid_size, 4 * static_cast<std::size_t>(n_max) + 4, "log_coefficients");

  const auto roots = polynomial_roots(chi.c);
  const auto zeros = unit_circle_zeros(roots);
  std::vector<cplx> off_circle;
  for (const cplx& r : roots) {
    if (std::abs(std::abs(r) - 1.0) > 1e-7) off_circle.push_back(r);
  }

  std::vector<double> log_mod(grid_size, 0.0);
  std::vector<double> phase(grid_size, 0.0);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const cplx z = std::polar(1.0, grid_point(j, grid_size));
    for (const cplx& r : off_circle) {
      const cplx factor = 1.0 - z / r;
      log_mod[j] += std::log(std::abs(factor));
      phase[j] += std::arg(factor);
    }
  }

  const auto mod_series = real_fourier(log_mod, n_max);
  const auto phase_series = real_fourier(phase, n_max);
  ConjugateCoefficients out{mod_series.cos, phase_series.sin};
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& z : zeros) {
      const double sing = -z.multiplicity * std::cos(n * z.angle) / n;
      out.A[n] += sing;
      out.B[n] += sing;
    }
  }
  out.B[0] = 0.0;
  return out;
}

EqualityReport coefficient_equality_check(const ConjugateCoefficients& coeffs, int n_max, double floor) {
  if (n_max < 0 || n_max > coeffs.n_max() || coeffs.B.size() != coeffs.A.size()) {
    throw InvalidParameter("coefficient_equality_check: n_max exceeds available coefficients");
  }
  EqualityReport out;
  out.a0 = coeffs.A.empty() ? 0.0 : coeffs.A[0];
  out.discrepancy.assign(n_max + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double d = std::abs(coeffs.A[n] - coeffs.B[n]) / std::max(std::abs(coeffs.A[n]), floor);
    out.discrepancy[n] = d;
    if (out.worst_n == 0 || d > out.max_discrepancy) {
      out.max_discrepancy = d;
      out.worst_n = n;
    }
  }
  return out;
}

}  // namespace phasemod
