// scenarios.hpp — The standard worked systems as turnkey configurations:
// m-body coupling, superradiance, superabsorption, the L³ heat engine, and
// the three-level quantum battery. Each pairs a closed-form oracle with a
// simulation path and a bound report.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatlab/bounds.hpp"
#include "heatlab/master.hpp"
#include "heatlab/rate_network.hpp"
#include "heatlab/thermo.hpp"

namespace heatlab::scenarios {

// J(0) = −γ_wn ω_q L² m / C(L,m); exact binomials up to L = 60, log-space above.
double mbody_current_closed_form(std::size_t num_qubits, std::size_t body_count,
                                 double gamma_wn, double omega_q);

struct MBodyResult {
  std::size_t num_qubits = 0;
  std::size_t body_count = 0;
  double gamma_wn = 0.0, omega_q = 0.0, g = 0.0;
  double current_closed_form = 0.0;
  double current_measured = 0.0;
  double parallel_baseline = 0.0;  // L × single-qubit |J|
  bounds::BoundEvaluation bound_eval;
};

// Dense Redfield heat current at t = 0 from the all-excited Dicke state.
MBodyResult mbody_simulate(std::size_t num_qubits, std::size_t body_count, double gamma_wn,
                           double omega_q, double g = 1.0, bool with_bounds = true,
                           std::optional<double> xi_override = {});

// J(0) = −¼ γ0 ω_q (L+1)²; odd L only.
double superradiance_closed_form(std::size_t num_qubits, double gamma0, double omega_q);

enum class SrBackend { ladder, dense };

struct SuperradianceResult {
  std::size_t num_qubits = 0;
  double gamma0 = 0.0, omega_q = 0.0;
  SrBackend backend = SrBackend::ladder;
  double current_closed_form = 0.0;
  double current_measured = 0.0;
  double parallel_baseline = 0.0;
  bounds::BoundEvaluation bound_eval;
};

SuperradianceResult superradiance_simulate(std::size_t num_qubits, double gamma0, double omega_q,
                                           SrBackend backend = SrBackend::ladder,
                                           bool with_bounds = true,
                                           std::optional<double> xi_override = {});

// Emission cascade from |1/2⟩ on the ladder.
std::vector<std::pair<double, master::DickeLadder>> superradiance_cascade(
    std::size_t num_qubits, double gamma0, double omega_q, double t_final, double dt = 0.0,
    std::size_t record_stride = 1);

struct SuperabsorptionResult {
  std::size_t num_qubits = 0;
  double anharmonicity = 0.0;  // Ω
  double omega_q = 0.0, gamma0 = 0.0, g = 0.0;
  double delta_e_measured = 0.0;     // matrix-element scan
  double delta_e_closed_form = 0.0;  // ω_q + (L−1)Ω
  double absorption_current = 0.0;
  double absorption_closed_form = 0.0;  // ¼ γ0 ω_q (L+1)²
  bounds::BoundEvaluation bound_eval;
  std::string note;
};

// H = ω_q J_z + Ω J_z² with a band-pass bath passing only the
// |−1/2⟩ → |1/2⟩ line; odd L, 0 < Ω < ω_q.
SuperabsorptionResult superabsorption_bound_analysis(std::size_t num_qubits, double anharmonicity,
                                                     double omega_q, double gamma0, double g = 1.0,
                                                     std::optional<double> xi_override = {});

struct EngineRates {
  double up = 0.0;
  double down = 0.0;
};

struct EngineResult {
  std::size_t num_qubits = 0;
  double omega_q = 0.0;
  rate_network::RateNetwork network;
  std::array<double, 2> steady_populations{};  // (p_{+L/2}, p_{−L/2})
  double j_h = 0.0, j_c = 0.0, j_w = 0.0;
  double power_numeric = 0.0;
  double power_closed_form = 0.0;
  std::optional<double> efficiency_numeric;
  std::optional<double> efficiency_closed_form;
  std::optional<double> beta_h0, beta_c0, beta_w0;  // effective, from the rates
  thermo::ThermoReport thermo_report;
  std::optional<double> delta_eta;
  bool engine_regime = false;
  double first_law_residual = 0.0;
  double second_law_sum = 0.0;  // Σ β_a J_a with effective betas; ≤ 0 expected
  double parallel_power_baseline = 0.0;
  std::vector<std::string> bath_labels;
  std::vector<bounds::BoundEvaluation> per_bath_bounds;
};

// Two-level collective engine: dynamics L² (Σ_a M^(a)), energy quantum L ω_q.
EngineResult heat_engine_steady_state(EngineRates h, EngineRates c, EngineRates w,
                                      double omega_q, std::size_t num_qubits,
                                      std::optional<double> xi_override = {});

struct BatteryResult {
  std::size_t num_qubits = 0;
  double e1 = 0.0, e0 = 0.0, em1 = 0.0;
  double beta_h0 = 0.0, beta_c0 = 0.0;
  double omega_h = 0.0, omega_c = 0.0;
  rate_network::RateNetwork network;
  std::array<double, 3> steady_populations{};  // (p_1, p_0, p_{−1})
  double ergotropy_measured = 0.0;
  double ergotropy_closed_form = 0.0;
  bool inverted = false;
  double gap_collective = 0.0, gap_parallel = 0.0;
  double charging_time_collective = 0.0, charging_time_parallel = 0.0;
  double charging_time_ratio = 0.0;  // parallel / collective = quantum advantage
  double j_h = 0.0, j_c = 0.0;
  double first_law_residual = 0.0;
  double second_law_sum = 0.0;
  std::string note;
  std::vector<std::string> bath_labels;
  std::vector<bounds::BoundEvaluation> per_bath_bounds;
};

// Three-level collective battery charged by hot/cold baths; detailed-balance
// up rates derived from the supplied down rates.
BatteryResult battery_steady_state(double e1, double e0, double em1, double beta_h0,
                                   double beta_c0, std::size_t num_qubits, double rate_h_down,
                                   double rate_c_down, std::optional<double> xi_override = {});

struct DephasingResult {
  std::size_t num_qubits = 0;
  double gamma0 = 0.0, omega_q = 0.0, g = 0.0;
  double current_measured = 0.0;
  bounds::BoundEvaluation bound_eval;
};

// Diagonal noise operator (A ∝ J_z): commutator bound zero, current zero.
DephasingResult dephasing_analysis(std::size_t num_qubits, double gamma0, double omega_q,
                                   double g = 1.0, std::optional<double> xi_override = {});

// Sector-level builders shared with the sweep harness and tests.
HermitianOperator superradiance_sector_hamiltonian(std::size_t num_qubits, double omega_q);
HermitianOperator superradiance_sector_noise(std::size_t num_qubits, double g = 1.0);
HermitianOperator superabsorption_sector_hamiltonian(std::size_t num_qubits, double omega_q,
                                                     double anharmonicity);

}  // namespace heatlab::scenarios
