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

#include "phasemod/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "phasemod/errors.hpp"

namespace phasemod {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double lagrange4(std::span<const double> grid, std::span<const double> values, double x) {
  const std::size_t m = grid.size();
  const double h = grid[1] - grid[0];
  auto j = static_cast<long>(std::floor((x - grid[0]) / h)) - 1;
  j = std::clamp<long>(j, 0, static_cast<long>(m) - 4);
  double acc = 0.0;
  for (long a = j; a < j + 4; ++a) {
    double w = 1.0;
    for (long b = j; b < j + 4; ++b) {
      if (b != a) w *= (x - grid[b]) / (grid[a] - grid[b]);
    }
    acc += w * values[a];
  }
  return acc;
}

std::vector<std::size_t> local_maxima(std::span<const double> y) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j + 1 < y.size(); ++j) {
    if (y[j] > y[j - 1] && y[j] >= y[j + 1]) out.push_back(j);
  }
  return out;
}

std::size_t coefficient_count(std::size_t grid_size) {
  return std::min<std::size_t>(kDefaultCoefficientCount, (grid_size - 4) / 4);
}

HelicitySeries model_helicity(const ModelParams& params) {
  if (!params.cyclic) throw NotCyclicError("k = " + std::to_string(params.k) + " is not an integer");
  const int n = *params.n_harmonic;
  const auto samples =
      SampledSignal::sample([&](double s) { return braced_amplitude(params, s); }, 4 * static_cast<std::size_t>(n) + 4);
  return to_helicity(analyze(samples, n));
}

}  // namespace

ErrorStats excluded_error(std::span<const double> a, std::span<const double> b, std::span<const double> grid,
                          std::span<const double> centres, double half_width) {
  if (a.size() != b.size() || a.size() != grid.size()) {
    throw InvalidParameter("excluded_error: arrays differ in length");
  }
  ErrorStats out;
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const bool excluded = std::any_of(centres.begin(), centres.end(), [&](double c) {
      return std::abs(wrap_angle(grid[j] - c)) <= half_width;
    });
    if (excluded) continue;
    const double e = std::abs(a[j] - b[j]);
    sum += e * e;
    out.max = std::max(out.max, e);
    ++out.count;
  }
  if (out.count > 0) out.rms = std::sqrt(sum / static_cast<double>(out.count));
  return out;
}

double measure_berry_phase(std::span<const double> grid, std::span<const double> phase, const BerryOptions& options) {
  if (grid.size() != phase.size() || grid.size() < 8) {
    throw InvalidParameter("measure_berry_phase: grid and phase must have equal length >= 8");
  }
  const double h = grid[1] - grid[0];
  const double floor = options.min_cells * h;
  if (!(options.epsilon > 0.0) || options.epsilon >= 0.5 * kPi) {
    throw InvalidParameter("measure_berry_phase: epsilon must lie in (0, pi/2)");
  }
  if (options.epsilon < floor) {
    throw InvalidParameter("measure_berry_phase: epsilon is below " + std::to_string(options.min_cells) +
                           " grid cells; refine the grid");
  }
  auto delta = [&](double e) {
    return lagrange4(grid, phase, 0.5 * kPi - e) - lagrange4(grid, phase, -0.5 * kPi + e);
  };

  double eps = options.epsilon;
  double previous_delta = delta(eps);
  double previous_estimate = kNaN;
  while (0.5 * eps >= floor) {
    eps *= 0.5;
    const double d = delta(eps);
    const double estimate = 2.0 * d - previous_delta;
    if (std::isfinite(previous_estimate) && std::abs(estimate - previous_estimate) < options.tolerance) {
      return estimate;
    }
    previous_estimate = estimate;
    previous_delta = d;
  }
  return std::isfinite(previous_estimate) ? previous_estimate : previous_delta;
}

double measure_berry_phase(const ModelSignals& signals, const BerryOptions& options) {
  if (!signals.chi) throw NotCyclicError("measure_berry_phase: signals are not cyclic");
  return measure_berry_phase(signals.grid, signals.phase_physical, options);
}

std::vector<double> high_pass(std::span<const double> values, std::size_t cells) {
  const std::size_t m = values.size();
  const std::size_t w = std::min(cells | 1U, m - (m % 2 == 0 ? 1 : 0));
  const std::size_t half = w / 2;
  std::vector<double> out(m);
  double window = 0.0;
  for (std::size_t d = 0; d < w; ++d) window += values[(d + m - half) % m];
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = values[j] - window / static_cast<double>(w);
    window += values[(j + half + 1) % m] - values[(j + m - half) % m];
  }
  return out;
}

double oscillation_period(std::span<const double> grid, std::span<const double> phase, double lo, double hi) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] >= lo && grid[j] <= hi) idx.push_back(j);
  }
  if (idx.size() < 8) return kNaN;
  const double centre = 0.5 * (lo + hi);
  const double scale = 0.5 * (hi - lo);
  Eigen::MatrixXd design(idx.size(), 3);
  Eigen::VectorXd y(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double x = (grid[idx[r]] - centre) / scale;
    design(r, 0) = 1.0;
    design(r, 1) = x;
    design(r, 2) = x * x;
    y(r) = phase[idx[r]];
  }
  const Eigen::VectorXd fit = design.colPivHouseholderQr().solve(y);
  std::vector<double> residual(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) residual[r] = y(r) - design.row(r).dot(fit);
  const auto peaks = local_maxima(residual);
  if (peaks.size() < 2) return kNaN;
  return (grid[idx[peaks.back()]] - grid[idx[peaks.front()]]) / static_cast<double>(peaks.size() - 1);
}

PeakReport match_peaks(std::span<const double> grid, std::span<const double> direct,
                       std::span<const double> reconstructed, std::span<const std::size_t> jump_cells,
                       double period) {
  const std::size_t m = grid.size();
  if (direct.size() != m || reconstructed.size() != m || m < 8) {
    throw InvalidParameter("match_peaks: arrays differ in length");
  }
  if (!(period > 0.0)) throw InvalidParameter("match_peaks: oscillation period must be positive");
  const double h = grid[1] - grid[0];
  const auto period_cells = static_cast<std::size_t>(std::max(1.0, std::round(period / h)));

  const auto dp = local_maxima(high_pass(direct, period_cells));
  const auto rp = local_maxima(high_pass(reconstructed, period_cells));

  auto near_artifact = [&](std::size_t cell) {
    if (cell < period_cells || cell + period_cells >= m) return true;
    return std::any_of(jump_cells.begin(), jump_cells.end(), [&](std::size_t c) {
      const std::size_t d = c > cell ? c - cell : cell - c;
      return std::min(d, m - d) <= period_cells;
    });
  };

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;  // distance, direct, reconstructed
  for (std::size_t a = 0; a < dp.size(); ++a) {
    for (std::size_t b = 0; b < rp.size(); ++b) {
      const std::size_t d = dp[a] > rp[b] ? dp[a] - rp[b] : rp[b] - dp[a];
      if (2 * d <= period_cells) pairs.emplace_back(d, a, b);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  PeakReport out;
  out.direct_count = dp.size();
  out.reconstructed_count = rp.size();
  out.oscillation_period = period;
  std::vector<bool> used_d(dp.size(), false);
  std::vector<bool> used_r(rp.size(), false);
  for (const auto& [d, a, b] : pairs) {
    if (used_d[a] || used_r[b]) continue;
    used_d[a] = used_r[b] = true;
    PeakMatch match;
    match.direct_s = grid[dp[a]];
    match.reconstructed_s = grid[rp[b]];
    match.offset_cells = static_cast<long>(rp[b]) - static_cast<long>(dp[a]);
    match.gibbs = near_artifact(dp[a]) || near_artifact(rp[b]);
    out.matches.push_back(match);
  }
  std::sort(out.matches.begin(), out.matches.end(),
            [](const PeakMatch& l, const PeakMatch& r) { return l.direct_s < r.direct_s; });
  for (std::size_t a = 0; a < dp.size(); ++a) {
    if (!used_d[a]) out.unmatched_direct.push_back(grid[dp[a]]);
  }
  for (std::size_t b = 0; b < rp.size(); ++b) {
    if (!used_r[b]) out.unmatched_reconstructed.push_back(grid[rp[b]]);
  }
  out.gibbs_count = out.unmatched_reconstructed.size();
  for (const auto& match : out.matches) {
    if (match.gibbs) {
      ++out.gibbs_count;
    } else {
      out.max_offset_cells = std::max(out.max_offset_cells, std::abs(match.offset_cells));
    }
  }
  return out;
}

ReciprocityRun run_reciprocity_case(const ModelParams& params, std::size_t grid_size, HilbertMethod method,
                                    bool fejer, const BerryOptions& berry) {
  const ModelSignals signals = evaluate_model(params, grid_size);
  const std::size_t m = grid_size;
  const double h = grid_spacing(m);

  ReconstructionOptions options;
  options.method = method;
  options.fejer = fejer;
  if (params.cyclic) options.zeros = signals.zeros;

  const auto phase = phase_from_modulus(signals.log_modulus, options);
  const auto log_modulus = modulus_from_phase(signals.phase_chi, options);

  std::vector<double> centres;
  for (const auto& z : signals.zeros) centres.push_back(z.angle);
  std::vector<std::size_t> jump_cells;
  for (const auto& jump : signals.jumps) {
    jump_cells.push_back(jump.cell);
    if (!params.cyclic) centres.push_back(signals.grid[jump.cell] + 0.5 * h);
  }

  ReciprocityRun run;
  ReciprocityReport& report = run.report;
  report.params = params;
  report.grid_size = m;
  report.method = method;
  report.fejer = fejer;
  report.removed_mean = phase.removed_mean;
  const auto phase_error = excluded_error(phase.phase, signals.phase_chi, signals.grid, centres);
  const auto modulus_error = excluded_error(log_modulus, signals.log_modulus, signals.grid, centres);
  report.rms_phase_error = phase_error.rms;
  report.max_phase_error = phase_error.max;
  report.rms_logmod_error = modulus_error.rms;
  report.max_logmod_error = modulus_error.max;

  const int n_coeff = static_cast<int>(coefficient_count(m));
  if (params.cyclic) {
    report.berry_predicted = berry_phase_predicted(params);
    report.berry_measured = measure_berry_phase(signals, berry);
    report.root_check_pass = root_check(*signals.helicity).pass;
    const auto coeffs = log_coefficients(*signals.helicity, n_coeff, m);
    report.coeff_max_discrepancy = coefficient_equality_check(coeffs, n_coeff).max_discrepancy;
    report.notes = "k is an integer: chi = e^{iNs} phi1 is a trigonometric polynomial; " +
                   std::to_string(signals.zeros.size()) +
                   " real-axis zero(s) split off analytically before transforming. Error metrics exclude |s - zero| <= " +
                   std::to_string(kExclusionHalfWidth) + "; all tolerances are implementation-chosen.";
  } else {
    const auto mod_series = real_fourier(signals.log_modulus, n_coeff);
    const auto phase_series = real_fourier(signals.phase_chi, n_coeff);
    ConjugateCoefficients coeffs{mod_series.cos, phase_series.sin};
    coeffs.B[0] = 0.0;
    report.coeff_max_discrepancy = coefficient_equality_check(coeffs, n_coeff).max_discrepancy;
    report.root_check_pass = false;
    report.peaks = match_peaks(signals.grid, signals.phase_chi, phase.phase, jump_cells, kPi / (2.0 * params.k));
    report.notes = "assumptions violated: k is not an integer, so phi1 is not periodic and has no helicity form; "
                   "the phase of e^{i(2k+1)s} phi1 was given 2 pi jumps at " +
                   std::to_string(signals.jumps.size()) + " near-zero(s) and detrended by slope " +
                   std::to_string(signals.removed_trend) +
                   "; root check not applicable. Agreement is qualitative; peak offsets count grid cells; "
                   "peaks within one oscillation period of a jump or of the window edge are flagged as Gibbs "
                   "artifacts; all tolerances are implementation-chosen.";
  }

  Dataset& data = run.dataset;
  data.s = signals.grid;
  data.t.resize(m);
  for (std::size_t j = 0; j < m; ++j) data.t[j] = 2.0 * signals.grid[j] / params.omega;
  data.log_modulus_direct = signals.log_modulus;
  data.log_modulus_reconstructed = log_modulus;
  data.phase_direct = signals.phase_chi;
  data.phase_reconstructed = phase.phase;
  return run;
}

CoefficientTable tabulate(const ConjugateCoefficients& coeffs, int n_max, double floor) {
  const auto check = coefficient_equality_check(coeffs, n_max, floor);
  CoefficientTable out;
  out.a0 = check.a0;
  out.max_rel_discrepancy = check.max_discrepancy;
  double largest = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    out.rows.push_back({n, coeffs.A[n], coeffs.B[n], std::abs(coeffs.A[n] - coeffs.B[n]), check.discrepancy[n]});
    largest = std::max(largest, std::abs(coeffs.A[n]));
  }
  std::vector<double> x;
  std::vector<double> y;
  for (int n = std::max(1, (n_max + 9) / 10); n <= n_max; ++n) {
    if (std::abs(coeffs.A[n]) > 1e-12 * largest) {
      x.push_back(std::log(static_cast<double>(n)));
      y.push_back(std::log(std::abs(coeffs.A[n])));
    }
  }
  if (x.size() < 2) {
    out.decay_exponent = kNaN;
    return out;
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  out.decay_exponent = sxx > 0.0 ? sxy / sxx : kNaN;
  return out;
}

CoefficientTable run_coefficient_case(const ModelParams& params, int n_max, std::size_t grid_size) {
  const auto helicity = model_helicity(params);
  return tabulate(log_coefficients(helicity, n_max, grid_size), n_max);
}

}  // namespace phasemod
