#include "heatlab/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace heatlab::spectral {

namespace {

void require_rate(double gamma_phys, double g_ref) {
  if (gamma_phys < 0.0) throw std::invalid_argument("SpectralModel: gamma must be nonnegative");
  if (g_ref <= 0.0) throw std::invalid_argument("SpectralModel: g_ref must be positive");
}

}  // namespace

SpectralModel SpectralModel::flat_zero_temperature(double gamma_phys, double g_ref) {
  require_rate(gamma_phys, g_ref);
  SpectralModel m;
  m.kind = SpectralKind::flat_zero_temperature;
  m.gamma0 = gamma_phys / (g_ref * g_ref);
  m.beta = std::numeric_limits<double>::infinity();
  m.xi = 0.5 * m.gamma0;
  return m;
}

SpectralModel SpectralModel::flat_thermal(double gamma_phys, double beta, double g_ref) {
  require_rate(gamma_phys, g_ref);
  if (std::isnan(beta)) throw std::invalid_argument("SpectralModel: beta must not be NaN");
  SpectralModel m;
  m.kind = SpectralKind::flat_thermal;
  m.gamma0 = gamma_phys / (g_ref * g_ref);
  m.beta = beta;
  m.xi = 0.5 * m.gamma0;
  return m;
}

SpectralModel SpectralModel::white_noise(double gamma_phys, double g_ref) {
  return flat_thermal(gamma_phys, 0.0, g_ref);
}

SpectralModel SpectralModel::band_pass(double gamma_phys, double omega_lo, double omega_hi,
                                       double g_ref) {
  require_rate(gamma_phys, g_ref);
  if (!(omega_lo < omega_hi)) throw std::invalid_argument("band_pass: need omega_lo < omega_hi");
  SpectralModel m;
  m.kind = SpectralKind::band_pass;
  m.gamma0 = gamma_phys / (g_ref * g_ref);
  m.omega_lo = omega_lo;
  m.omega_hi = omega_hi;
  m.xi = 0.5 * m.gamma0;
  return m;
}

SpectralModel SpectralModel::with_xi(double xi_value) const {
  if (xi_value < 0.0) throw std::invalid_argument("with_xi: Xi must be nonnegative");
  SpectralModel m = *this;
  m.xi = xi_value;
  return m;
}

double rate(const SpectralModel& model, double omega) {
  if (std::isnan(omega)) throw std::invalid_argument("rate: omega must be finite");
  switch (model.kind) {
    case SpectralKind::flat_zero_temperature:
      return omega > 0.0 ? model.gamma0 : 0.0;
    case SpectralKind::flat_thermal:
      if (omega >= 0.0) return model.gamma0;
      return model.gamma0 * std::exp(model.beta * omega);
    case SpectralKind::band_pass:
      return (omega >= model.omega_lo && omega <= model.omega_hi) ? model.gamma0 : 0.0;
  }
  return 0.0;
}

double xi(const SpectralModel& model) { return model.xi; }

double BathSpec::xi_entry(std::size_t k, std::size_t l) const {
  if (xi_matrix) {
    return (*xi_matrix)[k][l];
  }
  return k == l ? spectral::xi(channels[k].model) : 0.0;
}

SystemSpec::SystemSpec(HermitianOperator h, std::vector<BathSpec> b)
    : hamiltonian(std::move(h)), baths(std::move(b)) {
  const std::size_t n = hamiltonian.dim();
  for (const auto& bath : baths) {
    if (bath.channels.empty()) {
      throw std::invalid_argument("SystemSpec: bath '" + bath.label + "' has no channels");
    }
    for (const auto& ch : bath.channels) {
      if (ch.noise_op.dim() != n) {
        throw std::invalid_argument("SystemSpec: channel dimension mismatch in bath '" +
                                    bath.label + "'");
      }
    }
    if (bath.xi_matrix) {
      const auto& xm = *bath.xi_matrix;
      if (xm.size() != bath.channels.size()) {
        throw std::invalid_argument("SystemSpec: xi_matrix shape mismatch");
      }
      for (const auto& row : xm) {
        if (row.size() != bath.channels.size()) {
          throw std::invalid_argument("SystemSpec: xi_matrix shape mismatch");
        }
      }
    }
  }
}

}  // namespace heatlab::spectral
