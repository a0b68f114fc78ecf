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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "phasemod/errors.hpp"
#include "phasemod/experiments.hpp"

using namespace phasemod;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("phasemod_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(ExcludedError, SkipsWindowsPeriodically) {
  const std::size_t m = 64;
  const auto grid = offset_grid(m);
  std::vector<double> a(m, 0.0), b(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(std::abs(grid[j]) - kPi) < 0.2) b[j] = 100.0;  // next to the seam
  }
  b[m / 2] = 3.0;
  const double centre = kPi;  // wraps to both ends
  const auto e = excluded_error(a, b, grid, std::vector<double>{centre}, 0.25);
  EXPECT_DOUBLE_EQ(e.max, 3.0);
  EXPECT_EQ(e.count, m - 6);  // three samples on each side of the seam
  EXPECT_NEAR(e.rms, std::sqrt(9.0 / (m - 6)), 1e-15);
}

TEST(Berry, LinearPhaseGivesPi) {
  const auto grid = offset_grid(1024);
  EXPECT_NEAR(measure_berry_phase(grid, grid), kPi, 1e-12);
}

TEST(Berry, MeasuredApproachesPredicted) {
  for (int k : {1, 2, 3}) {
    const auto sig = evaluate_model(params_from_k(k), 4096);
    EXPECT_NEAR(measure_berry_phase(sig), berry_phase_predicted(params_from_k(k)), 1e-4) << k;
  }
  const auto sig = evaluate_model(params_from_k(17), 16384);
  EXPECT_NEAR(measure_berry_phase(sig), 3.09538, 1e-3);
  // The error shrinks as the grid is refined.
  const auto p = params_from_k(2);
  const double coarse = std::abs(measure_berry_phase(evaluate_model(p, 512)) - berry_phase_predicted(p));
  const double fine = std::abs(measure_berry_phase(evaluate_model(p, 8192)) - berry_phase_predicted(p));
  EXPECT_LE(fine, coarse);
}

TEST(Berry, Validation) {
  const auto grid = offset_grid(64);
  EXPECT_THROW(measure_berry_phase(grid, grid, BerryOptions{0.0}), InvalidParameter);
  EXPECT_THROW(measure_berry_phase(grid, grid, BerryOptions{2.0}), InvalidParameter);
  EXPECT_THROW(measure_berry_phase(grid, grid, BerryOptions{0.05}), InvalidParameter);  // below 4 cells
  EXPECT_THROW(measure_berry_phase(evaluate_model(derive_params(std::sqrt(1100.0)), 1024)), NotCyclicError);
}

TEST(Oscillation, HighPassAndPeriod) {
  const std::size_t m = 4096;
  const auto grid = offset_grid(m);
  const double period = 0.1;
  std::vector<double> y(m);
  for (std::size_t j = 0; j < m; ++j) y[j] = 2.0 + 0.3 * std::sin(kTwoPi * grid[j] / period + 0.2);
  const auto hp = high_pass(y, 7);
  EXPECT_NEAR(mean(hp), 0.0, 1e-12);
  std::vector<double> z(m);
  for (std::size_t j = 0; j < m; ++j) z[j] = 0.4 * grid[j] * grid[j] - grid[j] + 0.05 * std::cos(kTwoPi * grid[j] / period);
  EXPECT_NEAR(oscillation_period(grid, z, 0.5, 1.5), period, 2.0 * grid_spacing(m));
}

TEST(Peaks, ShiftedCopiesMatchWithKnownOffset) {
  const std::size_t m = 2048;
  const auto grid = offset_grid(m);
  // 32 whole periods with maxima on interior grid points; b lags a by two cells.
  const double period = kTwoPi / 32;
  std::vector<double> a(m), b(m);
  for (std::size_t j = 0; j < m; ++j) {
    a[j] = std::cos(kTwoPi * (static_cast<double>(j) - 5) / 64);
    b[j] = std::cos(kTwoPi * (static_cast<double>(j) - 7) / 64);
  }
  const auto r = match_peaks(grid, a, b, {}, period);
  EXPECT_EQ(r.direct_count, r.reconstructed_count);
  EXPECT_EQ(r.matches.size(), r.direct_count);
  EXPECT_EQ(r.max_offset_cells, 2);
  for (const auto& mt : r.matches) EXPECT_EQ(mt.offset_cells, 2);
  EXPECT_GT(r.gibbs_count, 0u);  // peaks within one period of the window edge
}

TEST(Reciprocity, CyclicCase) {
  const auto run = run_reciprocity_case(params_from_k(1), 4096);
  const auto& r = run.report;
  EXPECT_LT(r.rms_phase_error, 1e-3);
  EXPECT_LT(r.rms_logmod_error, 1e-3);
  EXPECT_TRUE(r.root_check_pass);
  ASSERT_TRUE(r.berry_predicted && r.berry_measured);
  EXPECT_LT(r.coeff_max_discrepancy, 1e-6);
  EXPECT_FALSE(r.peaks.has_value());
  EXPECT_EQ(run.dataset.rows(), 4096u);
  EXPECT_NEAR(run.dataset.t[10], 2.0 * run.dataset.s[10], 1e-15);

  const auto quad = run_reciprocity_case(params_from_k(1), 4096, HilbertMethod::quadrature).report;
  EXPECT_LT(quad.rms_phase_error, 1e-3);
  EXPECT_LT(quad.rms_logmod_error, 1e-3);
  const auto fejer = run_reciprocity_case(params_from_k(1), 4096, HilbertMethod::series, true).report;
  EXPECT_LT(fejer.rms_phase_error, 1e-2);
}

TEST(Reciprocity, OmegaOnlyRescalesTime) {
  const auto a = run_reciprocity_case(derive_params(std::sqrt(3.0), 1.0), 1024);
  const auto b = run_reciprocity_case(derive_params(std::sqrt(3.0), 4.0), 1024);
  EXPECT_EQ(a.dataset.phase_reconstructed, b.dataset.phase_reconstructed);
  EXPECT_NEAR(b.dataset.t[5], a.dataset.t[5] / 4.0, 1e-15);
}

TEST(Reciprocity, NonCyclicCase) {
  const auto run = run_reciprocity_case(derive_params(std::sqrt(1100.0)), 16384);
  const auto& r = run.report;
  EXPECT_NE(r.notes.find("assumptions violated"), std::string::npos);
  EXPECT_FALSE(r.berry_measured.has_value());
  EXPECT_FALSE(r.root_check_pass);
  ASSERT_TRUE(r.peaks.has_value());
  EXPECT_LE(r.peaks->max_offset_cells, 1);
  EXPECT_GT(r.peaks->gibbs_count, 0u);
  EXPECT_LT(r.rms_phase_error, 0.5);
}

TEST(Reciprocity, ErrorsStableUnderGridRefinement) {
  const auto p = derive_params(std::sqrt(1100.0));
  const auto coarse = run_reciprocity_case(p, 8192).report;
  const auto fine = run_reciprocity_case(p, 16384).report;
  EXPECT_LT(std::abs(fine.rms_phase_error - coarse.rms_phase_error), 0.1 * coarse.rms_phase_error);
  EXPECT_LT(std::abs(fine.rms_logmod_error - coarse.rms_logmod_error), 0.1 * coarse.rms_logmod_error);
}

TEST(Coefficients, ModelTableAndDecay) {
  const auto table = run_coefficient_case(params_from_k(1), 50, 16384);
  ASSERT_EQ(table.rows.size(), 50u);
  EXPECT_LT(table.max_rel_discrepancy, 1e-6);
  EXPECT_NEAR(table.a0, 0.0, 1e-8);
  EXPECT_LT(table.decay_exponent, -0.5);
  EXPECT_GT(table.decay_exponent, -1.5);
  EXPECT_THROW(run_coefficient_case(derive_params(std::sqrt(1100.0)), 10, 1024), NotCyclicError);
}

TEST(Coefficients, ExpOfExponentialTable) {
  const auto chi = SampledSignal::sample([](double s) { return std::exp(std::polar(1.0, s)); }, 256);
  const auto table = tabulate(log_coefficients(chi, 1.0, 20), 20);
  EXPECT_NEAR(table.rows[0].a, 1.0, 1e-13);
  EXPECT_NEAR(table.rows[0].b, 1.0, 1e-13);
  for (std::size_t i = 1; i < table.rows.size(); ++i) EXPECT_LT(std::abs(table.rows[i].a), 1e-12);
  EXPECT_TRUE(std::isnan(table.decay_exponent));
}

TEST(Output, FilesReportRoundTripAndDeterminism) {
  const auto dir = scratch_dir("output");
  const auto run = run_reciprocity_case(params_from_k(1), 1024);
  const auto prefix = (dir / "fig1").string();
  const auto paths = emit_outputs(run.report, run.dataset, prefix, OutputFormat::csv);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_TRUE(std::filesystem::exists(dir / "fig1.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "fig1.report.json"));

  const std::string csv = slurp(dir / "fig1.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "s,t,log_modulus_direct,log_modulus_reconstructed,phase_direct,phase_reconstructed");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
  }
  EXPECT_EQ(rows, 1024u);
  // full precision: values read back exactly
  std::istringstream first(csv.substr(header.size() + 1));
  double s0 = 0.0;
  first >> s0;
  EXPECT_EQ(s0, run.dataset.s[0]);

  const auto json = nlohmann::json::parse(slurp(dir / "fig1.report.json"));
  EXPECT_EQ(json["rms_phase_error"].get<double>(), run.report.rms_phase_error);
  EXPECT_EQ(json["berry_measured"].get<double>(), *run.report.berry_measured);
  EXPECT_EQ(json["grid_size"].get<std::size_t>(), 1024u);
  EXPECT_EQ(json["method"].get<std::string>(), "series");
  EXPECT_EQ(json["root_check_pass"].get<bool>(), true);

  const auto again = run_reciprocity_case(params_from_k(1), 1024);
  emit_outputs(again.report, again.dataset, (dir / "second").string(), OutputFormat::csv);
  EXPECT_EQ(slurp(dir / "fig1.csv"), slurp(dir / "second.csv"));
  EXPECT_EQ(slurp(dir / "fig1.report.json"), slurp(dir / "second.report.json"));

  emit_outputs(run.report, run.dataset, (dir / "j").string(), OutputFormat::json);
  const auto data = nlohmann::json::parse(slurp(dir / "j.json"));
  EXPECT_EQ(data["phase_direct"].size(), 1024u);
  EXPECT_EQ(data["phase_direct"][7].get<double>(), run.dataset.phase_direct[7]);
  std::filesystem::remove_all(dir);
}

TEST(Output, NonCyclicReportOmitsBerryFields) {
  const auto run = run_reciprocity_case(derive_params(std::sqrt(1100.0)), 4096);
  const auto json = nlohmann::json::parse(report_to_json(run.report));
  EXPECT_FALSE(json.contains("berry_measured"));
  EXPECT_FALSE(json.contains("berry_predicted"));
  EXPECT_TRUE(json["n_harmonic"].is_null());
  EXPECT_TRUE(json.contains("peaks_max_offset_cells"));
}

TEST(Output, UnwritablePathAndFormats) {
  const auto run = run_reciprocity_case(params_from_k(1), 1024);
  EXPECT_THROW(emit_outputs(run.report, run.dataset, "/nonexistent_dir_phasemod/x", OutputFormat::csv), IoError);
  EXPECT_EQ(parse_format("json"), OutputFormat::json);
  EXPECT_THROW(parse_format("xml"), InvalidParameter);
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-2.5e-17), "-2.5e-17");
}
