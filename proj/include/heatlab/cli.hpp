// cli.hpp — Config parsing, scenario dispatch, and CSV/JSON report emission
// for the heatlab command-line tool.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace heatlab::cli {

struct RunConfig {
  std::string command;   // scenario | sweep | evolve | bounds
  std::string scenario;  // mbody | superradiance | superabsorption | engine | battery | dephasing

  std::optional<long long> L;
  std::optional<long long> m;
  std::optional<double> g;
  std::optional<double> gamma0;
  std::optional<double> omega_q;
  std::optional<double> Omega;
  std::optional<double> E1, E0, Em1;
  std::optional<double> beta_H0, beta_C0, beta_W0;
  std::optional<double> rate_H_up, rate_H_down;
  std::optional<double> rate_C_up, rate_C_down;
  std::optional<double> rate_W_up, rate_W_down;
  std::optional<double> dt, t_final;
  std::optional<double> xi_override;
  std::optional<double> positivity_tol;
  std::optional<double> freq_tol;
  std::vector<long long> L_list;
  std::string backend;  // superradiance backend: ladder | dense
  std::string engine;   // evolve engine: redfield | gksl
  std::optional<long long> record_stride;

  std::string out_path;         // empty → stdout
  std::string format = "json";  // json | csv
};

// Flat JSON config file plus `--set key=value` overrides (flags win).
// Unknown keys, type mismatches, and missing required keys are hard errors
// that name the offending key.
RunConfig parse_config(const std::string& config_path, const std::vector<std::string>& overrides);

struct RunOutcome {
  int exit_code = 0;
  std::string report_json;
  std::string csv;  // populated for sweep/evolve when format == csv
  std::vector<std::string> problems;
};

RunOutcome run(const RunConfig& config);

// Runs, writes the requested output (file or stdout), reports problems on
// `err`; returns the process exit code.
int run_and_emit(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace heatlab::cli
