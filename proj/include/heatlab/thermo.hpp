// thermo.hpp — Heat currents, entropy production, thermodynamic laws,
// efficiency/COP, and ergotropy.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatlab/numcore.hpp"

namespace heatlab::thermo {

struct HeatCurrentRecord {
  double time = 0.0;
  std::vector<std::pair<std::string, double>> per_bath;
  double total = 0.0;

  static HeatCurrentRecord from_per_bath(double time,
                                         std::vector<std::pair<std::string, double>> per_bath);
};

// J_a = Re Tr(H_S · D_a[ρ]).
double heat_current(const HermitianOperator& h_s, const ComplexMatrix& dissipator_output);

// S = −Tr ρ ln ρ in nats; eigenvalues below 1e-14 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);

struct EntropyProduction {
  double entropy_rate = 0.0;  // dS/dt = −Tr(ρ̇ ln ρ)
  double sigma_dot = 0.0;     // σ̇ = dS/dt − Σ_a β_a J_a
  bool log_floored = false;   // an eigenvalue below 1e-12 overlapped ρ̇
};

EntropyProduction entropy_production_rate(const DensityMatrix& rho, const ComplexMatrix& rho_dot,
                                          const std::vector<double>& per_bath_currents,
                                          const std::vector<double>& betas);

struct ThermoReport {
  std::optional<double> entropy_rate;
  std::optional<double> entropy_production;
  std::optional<double> efficiency;
  std::optional<double> cop;
  std::optional<double> carnot_efficiency;
  std::optional<double> carnot_cop;
  std::string regime_note;
};

// Regime detection by current signs with a 1e-15 dead band; η = 1 + J_C/J_H in
// the engine regime, ε = J_C/J_W in the refrigerator regime, otherwise both
// fields stay absent.
ThermoReport efficiency_and_cop(double j_h, double j_c, double j_w, double beta_h,
                                double beta_c);

// Tr[Hρ] − Σ_i λ_i^↓ E_i^↑ (passive-state energy floor).
double ergotropy(const HermitianOperator& h, const DensityMatrix& rho);

}  // namespace heatlab::thermo
