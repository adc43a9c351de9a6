// scaling.hpp — Sweeps scenario families over particle counts and fits
// power-law exponents by log-log least squares.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatlab/scenarios.hpp"

namespace heatlab::scaling {

struct ScalingSample {
  double num_qubits = 0.0;
  double value = 0.0;  // |J| or the family's magnitude
  std::optional<double> bound1;
  std::optional<double> bound2;
  std::optional<double> parallel_baseline;
};

struct FitResult {
  double exponent = 0.0;
  double intercept = 0.0;  // ln prefactor
  double r2 = 0.0;
};

struct ScalingReport {
  std::string scenario_id;
  std::vector<ScalingSample> samples;
  FitResult value_fit;
  std::optional<FitResult> bound1_fit;
  std::optional<FitResult> bound2_fit;
  std::optional<FitResult> parallel_fit;
  std::pair<double, double> fit_range{0.0, 0.0};
};

// OLS on (ln L, ln value); rejects nonpositive values naming the index.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples);

using SampleFn = std::function<ScalingSample(std::size_t num_qubits)>;

// Generic driver: >= 3 distinct L values; a single-L failure aborts with the
// offending L in the message.
ScalingReport sweep(const std::string& scenario_id, std::vector<std::size_t> l_values,
                    const SampleFn& sample_fn);

ScalingReport sweep_mbody_full_body(const std::vector<std::size_t>& l_values, double gamma_wn,
                                    double omega_q, double g = 1.0);
ScalingReport sweep_superradiance(const std::vector<std::size_t>& l_values, double gamma0,
                                  double omega_q, bool with_bounds = true);
ScalingReport sweep_superabsorption(const std::vector<std::size_t>& l_values, double anharmonicity,
                                    double omega_q, double gamma0);
ScalingReport sweep_engine_power(const std::vector<std::size_t>& l_values,
                                 scenarios::EngineRates h, scenarios::EngineRates c,
                                 scenarios::EngineRates w, double omega_q);
// Sample value is the parallel/collective charging-time ratio.
ScalingReport sweep_battery_advantage(const std::vector<std::size_t>& l_values, double e1,
                                      double e0, double em1, double beta_h0, double beta_c0,
                                      double rate_h_down, double rate_c_down);

}  // namespace heatlab::scaling
