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

// End-to-end runs on the two-level model: reconstruction in both
// directions, Berry phase, coefficient tables, fig. 3 peak matching, and
// emission of datasets and reports.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phasemod/hilbert.hpp"
#include "phasemod/model.hpp"

namespace phasemod {

/// Half-width (in s) of the windows around zeros left out of error metrics.
inline constexpr double kExclusionHalfWidth = 0.05;
inline constexpr int kDefaultCoefficientCount = 50;

struct ErrorStats {
  double rms = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// RMS and max of |a - b| over grid points farther than `half_width` (in
/// periodic distance) from every centre.
ErrorStats excluded_error(std::span<const double> a, std::span<const double> b, std::span<const double> grid,
                          std::span<const double> centres, double half_width = kExclusionHalfWidth);

struct BerryOptions {
  double epsilon = 0.05;
  /// Richardson levels stop once successive estimates agree to this.
  double tolerance = 1e-6;
  /// Smallest epsilon, in grid cells.
  double min_cells = 4.0;
};

/// Change of a physical phase over (-pi/2 + eps, pi/2 - eps), extrapolated
/// to eps -> 0 by repeated halving and linear Richardson steps. Values off
/// the grid use four-point Lagrange interpolation.
double measure_berry_phase(std::span<const double> grid, std::span<const double> phase,
                           const BerryOptions& options = {});

/// As above on the model's physical phase. Throws NotCyclicError.
double measure_berry_phase(const ModelSignals& signals, const BerryOptions& options = {});

/// Periodic centred moving average of odd width `cells`, subtracted.
std::vector<double> high_pass(std::span<const double> values, std::size_t cells);

/// Mean spacing of successive local maxima of `phase` inside [lo, hi] after
/// a least-squares quadratic has been removed there.
double oscillation_period(std::span<const double> grid, std::span<const double> phase, double lo, double hi);

struct PeakMatch {
  double direct_s = 0.0;
  double reconstructed_s = 0.0;
  long offset_cells = 0;
  bool gibbs = false;
};

struct PeakReport {
  std::vector<PeakMatch> matches;
  std::vector<double> unmatched_direct;
  std::vector<double> unmatched_reconstructed;  ///< all flagged as Gibbs
  std::size_t direct_count = 0;
  std::size_t reconstructed_count = 0;
  std::size_t gibbs_count = 0;
  long max_offset_cells = 0;  ///< over matches not flagged as Gibbs
  double oscillation_period = 0.0;
};

/// Local maxima of both phases after a high pass over one oscillation
/// period, matched greedily by proximity (at most half a period apart).
/// Peaks within one period of a jump cell or of the window edges are
/// flagged as Gibbs artifacts, as are reconstructed peaks without a partner.
PeakReport match_peaks(std::span<const double> grid, std::span<const double> direct,
                       std::span<const double> reconstructed, std::span<const std::size_t> jump_cells,
                       double oscillation_period);

struct ReciprocityReport {
  ModelParams params;
  std::size_t grid_size = 0;
  HilbertMethod method = HilbertMethod::series;
  bool fejer = false;
  double rms_phase_error = 0.0;
  double max_phase_error = 0.0;
  double rms_logmod_error = 0.0;
  double max_logmod_error = 0.0;
  std::optional<double> berry_predicted;
  std::optional<double> berry_measured;
  double coeff_max_discrepancy = 0.0;
  bool root_check_pass = false;
  double removed_mean = 0.0;
  std::string notes;
  std::optional<PeakReport> peaks;
};

struct Dataset {
  std::vector<double> s;
  std::vector<double> t;
  std::vector<double> log_modulus_direct;
  std::vector<double> log_modulus_reconstructed;
  std::vector<double> phase_direct;
  std::vector<double> phase_reconstructed;

  std::size_t rows() const noexcept { return s.size(); }
};

struct ReciprocityRun {
  ReciprocityReport report;
  Dataset dataset;
};

/// Model evaluation, both reconstruction directions, zero-excluded errors,
/// Berry phase (cyclic), coefficient equality and, for non-cyclic k, the
/// peak comparison. Phases in the dataset are arg(chi/c0) (detrended for
/// non-cyclic k).
ReciprocityRun run_reciprocity_case(const ModelParams& params, std::size_t grid_size,
                                    HilbertMethod method = HilbertMethod::series, bool fejer = false,
                                    const BerryOptions& berry = {});

struct CoefficientRow {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
};

struct CoefficientTable {
  std::vector<CoefficientRow> rows;  ///< n = 1 .. n_max
  double a0 = 0.0;
  double max_rel_discrepancy = 0.0;
  /// Slope of log|A_n| against log n over the top decade of n (non-zero
  /// coefficients only); NaN if fewer than two points.
  double decay_exponent = 0.0;
};

CoefficientTable tabulate(const ConjugateCoefficients& coeffs, int n_max, double floor = kDiscrepancyFloor);

/// Coefficients of log(chi/c0) for the model's helicity series. Throws
/// NotCyclicError.
CoefficientTable run_coefficient_case(const ModelParams& params, int n_max, std::size_t grid_size);

enum class OutputFormat { csv, json };
OutputFormat parse_format(std::string_view name);
std::string_view to_string(OutputFormat format);

std::string report_to_json(const ReciprocityReport& report);
std::string dataset_to_csv(const Dataset& dataset);
std::string dataset_to_json(const Dataset& dataset);
std::string coefficients_to_csv(const CoefficientTable& table);
std::string coefficients_to_json(const CoefficientTable& table);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

/// Writes prefix.csv (or prefix.json) and prefix.report.json. Returns the
/// paths written. Throws IoError naming the path on failure.
std::vector<std::filesystem::path> emit_outputs(const ReciprocityReport& report, const Dataset& dataset,
                                                const std::string& prefix, OutputFormat format);

/// Writes `content` to `path` verbatim; throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace phasemod
