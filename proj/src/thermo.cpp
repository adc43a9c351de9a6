#include "heatlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatlab::thermo {

HeatCurrentRecord HeatCurrentRecord::from_per_bath(
    double time, std::vector<std::pair<std::string, double>> per_bath) {
  HeatCurrentRecord rec;
  rec.time = time;
  rec.per_bath = std::move(per_bath);
  rec.total = 0.0;
  for (const auto& [label, j] : rec.per_bath) rec.total += j;
  return rec;
}

double heat_current(const HermitianOperator& h_s, const ComplexMatrix& dissipator_output) {
  if (h_s.dim() != dissipator_output.rows() || !dissipator_output.is_square()) {
    throw std::invalid_argument("heat_current: dimension mismatch");
  }
  const cdouble t = trace_product(h_s.matrix(), dissipator_output);
  const double scale = std::max({1.0, std::abs(t.real()),
                                 h_s.matrix().max_abs() * dissipator_output.max_abs() *
                                     static_cast<double>(h_s.dim())});
  if (std::abs(t.imag()) > 1e-10 * scale) {
    throw std::runtime_error("heat_current: imaginary part exceeds tolerance");
  }
  return t.real();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(rho.matrix())) {
    if (lambda > 1e-14) s -= lambda * std::log(lambda);
  }
  return std::max(0.0, s);
}

EntropyProduction entropy_production_rate(const DensityMatrix& rho, const ComplexMatrix& rho_dot,
                                          const std::vector<double>& per_bath_currents,
                                          const std::vector<double>& betas) {
  if (per_bath_currents.size() != betas.size()) {
    throw std::invalid_argument("entropy_production_rate: currents/betas size mismatch");
  }
  if (rho_dot.rows() != rho.dim() || !rho_dot.is_square()) {
    throw std::invalid_argument("entropy_production_rate: dimension mismatch");
  }

  // dS/dt = −Tr(ρ̇ ln ρ), evaluated in the eigenbasis of ρ. Trace preservation
  // removes the Tr ρ̇ term, so only the diagonal of ρ̇ enters.
  const EnergyBasis basis = hermitian_eig(HermitianOperator(rho.matrix()));
  const ComplexMatrix rho_dot_eig = basis.to_energy_basis(rho_dot);
  EntropyProduction out;
  double ds = 0.0;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const double lambda = basis.eigenvalues[i];
    const double overlap = rho_dot_eig(i, i).real();
    if (lambda < 1e-12 && std::abs(overlap) > 1e-12) out.log_floored = true;
    ds -= overlap * std::log(std::max(lambda, 1e-14));
  }
  out.entropy_rate = ds;
  out.sigma_dot = ds;
  for (std::size_t a = 0; a < betas.size(); ++a) {
    out.sigma_dot -= betas[a] * per_bath_currents[a];
  }
  return out;
}

ThermoReport efficiency_and_cop(double j_h, double j_c, double j_w, double beta_h,
                                double beta_c) {
  constexpr double dead_band = 1e-15;
  ThermoReport report;

  if (beta_c != 0.0) report.carnot_efficiency = 1.0 - beta_h / beta_c;
  if (beta_c != beta_h) report.carnot_cop = beta_h / (beta_c - beta_h);

  const bool engine_signs = j_h >= -dead_band && j_c <= dead_band && j_w <= dead_band;
  const bool fridge_signs = j_h <= dead_band && j_c >= -dead_band && j_w >= -dead_band;

  if (engine_signs && !fridge_signs) {
    if (std::abs(j_h) < dead_band) {
      report.regime_note = "engine signs hold but |J_H| < 1e-15; efficiency undefined";
    } else {
      report.efficiency = 1.0 + j_c / j_h;
      if (report.carnot_efficiency &&
          *report.efficiency > *report.carnot_efficiency + 1e-12) {
        report.regime_note = "efficiency exceeds Carnot bound: regime inconsistency";
      }
    }
  } else if (fridge_signs && !engine_signs) {
    if (std::abs(j_w) < dead_band) {
      report.regime_note = "refrigerator signs hold but |J_W| < 1e-15; COP undefined";
    } else {
      report.cop = j_c / j_w;
    }
  } else if (engine_signs && fridge_signs) {
    report.regime_note = "all currents inside dead band; no regime";
  } else {
    report.regime_note = "mixed current signs; neither engine nor refrigerator regime";
  }
  return report;
}

double ergotropy(const HermitianOperator& h, const DensityMatrix& rho) {
  if (h.dim() != rho.dim()) throw std::invalid_argument("ergotropy: dimension mismatch");
  std::vector<double> populations = hermitian_eigenvalues(rho.matrix());
  std::sort(populations.begin(), populations.end(), std::greater<>());
  const std::vector<double> energies = hermitian_eigenvalues(h.matrix());  // ascending

  double energy = 0.0;
  {
    const cdouble t = trace_product(h.matrix(), rho.matrix());
    energy = t.real();
  }
  double passive = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) passive += populations[i] * energies[i];
  return energy - passive;
}

}  // namespace heatlab::thermo
