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

#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "phasemod/errors.hpp"
#include "phasemod/experiments.hpp"

namespace phasemod {
namespace {

void append_number(std::string& out, double v) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  out.append(buffer, result.ptr);
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw InvalidParameter("unknown output format '" + std::string(name) + "' (expected csv|json)");
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

std::string report_to_json(const ReciprocityReport& report) {
  nlohmann::ordered_json j;
  j["g"] = report.params.g;
  j["omega"] = report.params.omega;
  j["k"] = report.params.k;
  j["n_harmonic"] = report.params.n_harmonic ? nlohmann::ordered_json(*report.params.n_harmonic)
                                             : nlohmann::ordered_json(nullptr);
  j["cyclic"] = report.params.cyclic;
  j["regime"] = report.params.regime();
  j["grid_size"] = report.grid_size;
  j["method"] = std::string(to_string(report.method));
  j["fejer"] = report.fejer;
  j["rms_phase_error"] = report.rms_phase_error;
  j["max_phase_error"] = report.max_phase_error;
  j["rms_logmod_error"] = report.rms_logmod_error;
  j["max_logmod_error"] = report.max_logmod_error;
  if (report.berry_predicted) j["berry_predicted"] = optional_number(report.berry_predicted);
  if (report.berry_measured) j["berry_measured"] = optional_number(report.berry_measured);
  j["coeff_max_discrepancy"] = report.coeff_max_discrepancy;
  j["root_check_pass"] = report.root_check_pass;
  j["removed_mean"] = report.removed_mean;
  if (report.peaks) {
    const PeakReport& p = *report.peaks;
    j["peaks_direct"] = p.direct_count;
    j["peaks_reconstructed"] = p.reconstructed_count;
    j["peaks_matched"] = p.matches.size();
    j["peaks_gibbs_flagged"] = p.gibbs_count;
    j["peaks_max_offset_cells"] = p.max_offset_cells;
    j["oscillation_period"] = p.oscillation_period;
  }
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string dataset_to_csv(const Dataset& d) {
  std::string out = "s,t,log_modulus_direct,log_modulus_reconstructed,phase_direct,phase_reconstructed\n";
  out.reserve(out.size() + d.rows() * 140);
  for (std::size_t j = 0; j < d.rows(); ++j) {
    for (const auto* column : {&d.s, &d.t, &d.log_modulus_direct, &d.log_modulus_reconstructed, &d.phase_direct,
                               &d.phase_reconstructed}) {
      if (column != &d.s) out.push_back(',');
      append_number(out, (*column)[j]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string dataset_to_json(const Dataset& d) {
  nlohmann::ordered_json j;
  j["s"] = d.s;
  j["t"] = d.t;
  j["log_modulus_direct"] = d.log_modulus_direct;
  j["log_modulus_reconstructed"] = d.log_modulus_reconstructed;
  j["phase_direct"] = d.phase_direct;
  j["phase_reconstructed"] = d.phase_reconstructed;
  return j.dump() + "\n";
}

std::string coefficients_to_csv(const CoefficientTable& table) {
  std::string out = "n,A_n,B_n,abs_diff,rel_diff\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.n);
    for (double v : {row.a, row.b, row.abs_diff, row.rel_diff}) {
      out.push_back(',');
      append_number(out, v);
    }
    out.push_back('\n');
  }
  return out;
}

std::string coefficients_to_json(const CoefficientTable& table) {
  nlohmann::ordered_json j;
  j["a0"] = table.a0;
  j["max_rel_discrepancy"] = table.max_rel_discrepancy;
  j["decay_exponent"] = std::isfinite(table.decay_exponent) ? nlohmann::ordered_json(table.decay_exponent)
                                                            : nlohmann::ordered_json(nullptr);
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"n", row.n}, {"A_n", row.a}, {"B_n", row.b}, {"abs_diff", row.abs_diff}, {"rel_diff", row.rel_diff}});
  }
  return j.dump(2) + "\n";
}

std::string format_number(double v) {
  std::string out;
  append_number(out, v);
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::filesystem::path> emit_outputs(const ReciprocityReport& report, const Dataset& dataset,
                                                const std::string& prefix, OutputFormat format) {
  if (prefix.empty()) throw IoError("empty output prefix");
  std::vector<std::filesystem::path> written;
  if (format == OutputFormat::csv) {
    written.emplace_back(prefix + ".csv");
    write_file(written.back(), dataset_to_csv(dataset));
  } else {
    written.emplace_back(prefix + ".json");
    write_file(written.back(), dataset_to_json(dataset));
  }
  written.emplace_back(prefix + ".report.json");
  write_file(written.back(), report_to_json(report));
  return written;
}

}  // namespace phasemod
