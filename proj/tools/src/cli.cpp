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

#include "phasemod/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "phasemod/errors.hpp"
#include "phasemod/experiments.hpp"

namespace phasemod::cli {
namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string subcommand;
  std::optional<double> g;
  std::optional<double> k;
  std::optional<std::string> preset;
  double omega = 1.0;
  std::optional<std::size_t> grid;
  int n_max = kDefaultCoefficientCount;
  std::string method = "series";
  bool fejer = false;
  double epsilon = 0.05;
  std::string out;
  std::string format = "csv";
  double k_from = 1.0;
  double k_to = 5.0;
  double k_step = 1.0;
};

struct Resolved {
  ModelParams params;
  std::string source;
  std::size_t grid = 0;
  HilbertMethod method = HilbertMethod::series;
  OutputFormat format = OutputFormat::csv;
};

std::string num(double v) { return format_number(v); }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 4;
  while (p < n) p *= 2;
  return p;
}

std::size_t default_grid(const Config& cfg, const ModelParams& p) {
  std::size_t grid = 16384;
  if (cfg.subcommand != "coeffs" && (!cfg.preset || *cfg.preset == "fig1") && p.k < 4.0) grid = 4096;
  if (p.n_harmonic) grid = std::max(grid, next_power_of_two(4 * static_cast<std::size_t>(*p.n_harmonic) + 4));
  return grid;
}

void check_grid(std::size_t grid, const ModelParams& p) {
  if (grid < 8 || grid % 2 != 0) throw ConfigError("--grid must be an even number >= 8, got " + std::to_string(grid));
  if (p.n_harmonic && grid < 4 * static_cast<std::size_t>(*p.n_harmonic) + 4) {
    throw ConfigError("--grid must be at least 4N+4 = " + std::to_string(4 * *p.n_harmonic + 4) + " for k = " +
                      num(p.k));
  }
}

ModelParams params_for_k(double k, double omega) {
  if (!(k > 0.5) || !std::isfinite(k)) throw ConfigError("--k must exceed 1/2, got " + num(k));
  return params_from_k(k, omega);
}

Resolved resolve(const Config& cfg) {
  if (!(cfg.omega > 0.0) || !std::isfinite(cfg.omega)) throw ConfigError("--omega must be positive, got " + num(cfg.omega));
  if (!(cfg.epsilon > 0.0) || cfg.epsilon >= 0.5 * kPi) {
    throw ConfigError("--epsilon must lie in (0, pi/2), got " + num(cfg.epsilon));
  }
  if (cfg.n_max < 1) throw ConfigError("--n-max must be positive, got " + std::to_string(cfg.n_max));

  Resolved r;
  r.method = parse_method(cfg.method);
  r.format = parse_format(cfg.format);
  const int sources = (cfg.g ? 1 : 0) + (cfg.k ? 1 : 0) + (cfg.preset ? 1 : 0);
  if (sources != 1) throw ConfigError("exactly one of --g, --k, --preset is required (got " + std::to_string(sources) + ")");

  if (cfg.preset) {
    const double g = *cfg.preset == "fig1" ? std::sqrt(3.0) : *cfg.preset == "fig2" ? std::sqrt(1155.0) : std::sqrt(1100.0);
    r.params = derive_params(g, cfg.omega);
    r.source = "preset " + *cfg.preset;
  } else if (cfg.g) {
    if (!(*cfg.g > 0.0) || !std::isfinite(*cfg.g)) throw ConfigError("--g must be positive, got " + num(*cfg.g));
    r.params = derive_params(*cfg.g, cfg.omega);
    r.source = "--g";
  } else {
    r.params = params_for_k(*cfg.k, cfg.omega);
    r.source = "--k";
  }
  r.grid = cfg.grid ? *cfg.grid : default_grid(cfg, r.params);
  check_grid(r.grid, r.params);
  return r;
}

void print_config(std::ostream& out, const Config& cfg, const Resolved& r) {
  const ModelParams& p = r.params;
  out << "# phasemod " << cfg.subcommand << "\n"
      << "source     = " << r.source << "\n"
      << "g          = " << num(p.g) << "\n"
      << "k          = " << num(p.k) << "\n"
      << "omega      = " << num(p.omega) << "\n"
      << "cyclic     = " << (p.cyclic ? "true" : "false") << "\n"
      << "N          = " << (p.n_harmonic ? std::to_string(*p.n_harmonic) : std::string("n/a")) << "\n"
      << "regime     = " << p.regime() << "\n"
      << "grid       = " << r.grid << "\n"
      << "n_max      = " << cfg.n_max << "\n"
      << "method     = " << to_string(r.method) << "\n"
      << "fejer      = " << (cfg.fejer ? "true" : "false") << "\n"
      << "epsilon    = " << num(cfg.epsilon) << "\n"
      << "out        = " << (cfg.out.empty() ? std::string("(none)") : cfg.out) << "\n"
      << "format     = " << to_string(r.format) << "\n\n";
}

int run_reciprocity(const Config& cfg, const Resolved& r, std::ostream& out) {
  const auto run = run_reciprocity_case(r.params, r.grid, r.method, cfg.fejer, BerryOptions{cfg.epsilon});
  const auto& rep = run.report;
  out << "rms_phase_error       = " << num(rep.rms_phase_error) << "\n"
      << "max_phase_error       = " << num(rep.max_phase_error) << "\n"
      << "rms_logmod_error      = " << num(rep.rms_logmod_error) << "\n"
      << "max_logmod_error      = " << num(rep.max_logmod_error) << "\n";
  if (rep.berry_predicted) {
    out << "berry_predicted       = " << num(*rep.berry_predicted) << "\n"
        << "berry_measured        = " << num(*rep.berry_measured) << "\n";
  }
  out << "coeff_max_discrepancy = " << num(rep.coeff_max_discrepancy) << "\n"
      << "root_check_pass       = " << (rep.root_check_pass ? "true" : "false") << "\n";
  if (rep.peaks) {
    const auto& pk = *rep.peaks;
    out << "peaks direct/reconstructed/matched = " << pk.direct_count << "/" << pk.reconstructed_count << "/"
        << pk.matches.size() << "\n"
        << "peaks flagged as Gibbs artifacts   = " << pk.gibbs_count << "\n"
        << "max peak offset (cells, unflagged) = " << pk.max_offset_cells << "\n";
  }
  out << "notes: " << rep.notes << "\n";
  if (!cfg.out.empty()) {
    for (const auto& path : emit_outputs(rep, run.dataset, cfg.out, r.format)) out << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

int run_coeffs(const Config& cfg, const Resolved& r, std::ostream& out) {
  if (!r.params.cyclic) throw ConfigError("coeffs requires an integer k (got k = " + num(r.params.k) + ")");
  if (r.grid < 4 * static_cast<std::size_t>(cfg.n_max) + 4) {
    throw ConfigError("--grid must be at least 4*n_max+4 = " + std::to_string(4 * cfg.n_max + 4));
  }
  const auto table = run_coefficient_case(r.params, cfg.n_max, r.grid);
  out << coefficients_to_csv(table) << "\n"
      << "A_0                 = " << num(table.a0) << "\n"
      << "max_rel_discrepancy = " << num(table.max_rel_discrepancy) << "\n"
      << "decay_exponent      = " << num(table.decay_exponent) << "\n";
  if (!cfg.out.empty()) {
    const bool csv = r.format == OutputFormat::csv;
    const std::string path = cfg.out + (csv ? ".coeffs.csv" : ".coeffs.json");
    write_file(path, csv ? coefficients_to_csv(table) : coefficients_to_json(table));
    out << "wrote " << path << "\n";
  }
  return kExitOk;
}

int run_verify(const Resolved& r, std::ostream& out) {
  const ModelParams& p = r.params;
  bool all = true;
  auto line = [&](const std::string& name, double value, bool pass, const std::string& rule) {
    all = all && pass;
    out << (pass ? "PASS " : "FAIL ") << name << " = " << num(value) << " (" << rule << ")\n";
  };
  line("companion residual", solution_residual(p, r.grid), solution_residual(p, r.grid) < 1e-8, "< 1e-8");
  const double control = solution_residual(p, r.grid, ResidualOptions{1.01});
  line("residual with imaginary term x1.01", control, control > 1e-3, "> 1e-3, must fail as a solution");
  const auto ode = ode_cross_check(p);
  line("RK4 vs analytic pair", ode.max_deviation, ode.max_deviation < 1e-6, "< 1e-6");
  line("RK4 norm drift", ode.max_norm_drift, ode.max_norm_drift < 1e-6, "< 1e-6");
  if (p.cyclic) {
    const double edge = std::max(std::abs(braced_amplitude(p, 0.5 * kPi)), std::abs(braced_amplitude(p, -0.5 * kPi)));
    line("|phi1(+-pi/2)|", edge, edge < 1e-12, "< 1e-12");
    const auto signals = evaluate_model(p, r.grid);
    const auto check = root_check(*signals.helicity);
    line("root check min |z|", check.min_modulus, check.pass, ">= 1 - 1e-9");
  } else {
    out << "SKIP root check (k is not an integer)\n";
  }
  return all ? kExitOk : kExitFailure;
}

int run_berry(const Config& cfg, const Resolved& r, std::ostream& out) {
  if (!r.params.cyclic) throw ConfigError("berry requires an integer k (got k = " + num(r.params.k) + ")");
  const auto signals = evaluate_model(r.params, r.grid);
  const double measured = measure_berry_phase(signals, BerryOptions{cfg.epsilon});
  const double predicted = berry_phase_predicted(r.params);
  out << "berry_predicted = " << num(predicted) << "\n"
      << "berry_measured  = " << num(measured) << "\n"
      << "difference      = " << num(measured - predicted) << "\n";
  return kExitOk;
}

int run_sweep(const Config& cfg, std::ostream& out) {
  if (!(cfg.k_from > 0.5)) throw ConfigError("--k-from must exceed 1/2, got " + num(cfg.k_from));
  if (!(cfg.k_to >= cfg.k_from)) throw ConfigError("--k-to must not be below --k-from");
  if (!(cfg.k_step > 0.0)) throw ConfigError("--k-step must be positive, got " + num(cfg.k_step));
  if (!(cfg.omega > 0.0)) throw ConfigError("--omega must be positive, got " + num(cfg.omega));
  if (!(cfg.epsilon > 0.0) || cfg.epsilon >= 0.5 * kPi) throw ConfigError("--epsilon must lie in (0, pi/2)");
  const HilbertMethod method = parse_method(cfg.method);

  out << "# phasemod sweep\n"
      << "k_from  = " << num(cfg.k_from) << "\nk_to    = " << num(cfg.k_to) << "\nk_step  = " << num(cfg.k_step)
      << "\nomega   = " << num(cfg.omega) << "\ngrid    = "
      << (cfg.grid ? std::to_string(*cfg.grid) : std::string("default per k")) << "\nmethod  = " << to_string(method)
      << "\nfejer   = " << (cfg.fejer ? "true" : "false") << "\nepsilon = " << num(cfg.epsilon) << "\n\n";

  std::string table =
      "k,g,cyclic,grid,rms_phase_error,rms_logmod_error,berry_predicted,berry_measured,coeff_max_discrepancy,"
      "root_check_pass\n";
  const auto count = static_cast<long>(std::floor((cfg.k_to - cfg.k_from) / cfg.k_step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) {
    const ModelParams p = params_for_k(cfg.k_from + static_cast<double>(i) * cfg.k_step, cfg.omega);
    const std::size_t grid = cfg.grid ? *cfg.grid : default_grid(cfg, p);
    check_grid(grid, p);
    const auto rep = run_reciprocity_case(p, grid, method, cfg.fejer, BerryOptions{cfg.epsilon}).report;
    table += num(p.k) + "," + num(p.g) + "," + (p.cyclic ? "true" : "false") + "," + std::to_string(grid) + "," +
             num(rep.rms_phase_error) + "," + num(rep.rms_logmod_error) + "," +
             (rep.berry_predicted ? num(*rep.berry_predicted) : "") + "," +
             (rep.berry_measured ? num(*rep.berry_measured) : "") + "," + num(rep.coeff_max_discrepancy) + "," +
             (rep.root_check_pass ? "true" : "false") + "\n";
  }
  out << table;
  if (!cfg.out.empty()) {
    write_file(cfg.out + ".sweep.csv", table);
    out << "wrote " << cfg.out << ".sweep.csv\n";
  }
  return kExitOk;
}

void add_model_options(CLI::App* sub, Config& cfg) {
  auto* g = sub->add_option("--g", cfg.g, "coupling G/omega (> 0)");
  auto* k = sub->add_option("--k", cfg.k, "K/omega (> 1/2); integers give the cyclic case");
  auto* preset = sub->add_option("--preset", cfg.preset, "fig1 | fig2 | fig3")
                     ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  g->excludes(k)->excludes(preset);
  k->excludes(preset);
}

void add_run_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--omega", cfg.omega, "drive frequency, converts s to t in outputs")->capture_default_str();
  sub->add_option("--grid", cfg.grid, "number of grid points (even)");
  sub->add_option("--method", cfg.method, "series | quadrature")->capture_default_str();
  sub->add_flag("--fejer", cfg.fejer, "Fejer-damped series transform");
  sub->add_option("--epsilon", cfg.epsilon, "initial Berry-phase window offset")->capture_default_str();
  sub->add_option("--out", cfg.out, "output path prefix");
  sub->add_option("--format", cfg.format, "csv | json")->capture_default_str();
}

}  // namespace

int dispatch(std::span<const std::string> argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"phase / log-modulus reciprocity on the driven two-level model", "phasemod"};
  app.require_subcommand(1);
  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"reciprocity", "reconstruct phase and log-modulus from each other"},
      {"coeffs", "A_n / B_n coefficient table"},
      {"verify", "residual, ODE and root checks of the analytic amplitude"},
      {"berry", "measured vs predicted Berry phase"},
      {"sweep", "summary table over a range of k"},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    sub->callback([&cfg, name = std::string(e.name)] { cfg.subcommand = name; });
    add_run_options(sub, cfg);
    if (std::string(e.name) == "sweep") {
      sub->add_option("--k-from", cfg.k_from, "first k")->capture_default_str();
      sub->add_option("--k-to", cfg.k_to, "last k")->capture_default_str();
      sub->add_option("--k-step", cfg.k_step, "k increment")->capture_default_str();
    } else {
      add_model_options(sub, cfg);
    }
    if (std::string(e.name) == "coeffs") {
      sub->add_option("--n-max", cfg.n_max, "highest coefficient index")->capture_default_str();
    }
  }

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (cfg.subcommand == "sweep") return run_sweep(cfg, out);
    const Resolved r = resolve(cfg);
    print_config(out, cfg, r);
    out.flush();
    if (cfg.subcommand == "reciprocity") return run_reciprocity(cfg, r, out);
    if (cfg.subcommand == "coeffs") return run_coeffs(cfg, r, out);
    if (cfg.subcommand == "verify") return run_verify(r, out);
    return run_berry(cfg, r, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NotCyclicError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace phasemod::cli
