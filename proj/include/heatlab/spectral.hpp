// spectral.hpp — Bath spectral models γ(ω), the one-sided coefficient Ξ, and
// the bath/system description records.
//
// Convention: coupling strength lives entirely in the noise operators; a
// SpectralModel describes the bare bath correlation. Convenience constructors
// take the physical rate γ_phys (what a coupling-g channel actually produces)
// together with the reference coupling g_ref, store the bare rate
// γ_phys/g_ref², and default Ξ to the half-delta value γ_phys/(2 g_ref²).

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "heatlab/numcore.hpp"

namespace heatlab::spectral {

enum class SpectralKind { flat_zero_temperature, flat_thermal, band_pass };

struct SpectralModel {
  SpectralKind kind = SpectralKind::flat_zero_temperature;
  double gamma0 = 0.0;  // bare base rate
  double beta = std::numeric_limits<double>::infinity();
  double omega_lo = 0.0;
  double omega_hi = 0.0;
  double xi = 0.0;

  static SpectralModel flat_zero_temperature(double gamma_phys, double g_ref = 1.0);
  static SpectralModel flat_thermal(double gamma_phys, double beta, double g_ref = 1.0);
  // β = 0 thermal model: the same rate at every Bohr frequency.
  static SpectralModel white_noise(double gamma_phys, double g_ref = 1.0);
  static SpectralModel band_pass(double gamma_phys, double omega_lo, double omega_hi,
                                 double g_ref = 1.0);

  SpectralModel with_xi(double xi_value) const;
};

// γ(ω): flat_zero_temperature → γ0 for ω > 0 else 0; flat_thermal → γ0 for
// ω ≥ 0 and γ0 e^{βω} for ω < 0; band_pass → γ0 inside [ω_lo, ω_hi] else 0.
double rate(const SpectralModel& model, double omega);

double xi(const SpectralModel& model);

inline const char* xi_convention_note() {
  return "Xi uses the half-delta white-noise convention Xi = gamma/(2 g_ref^2); "
         "override via with_xi / xi_override.";
}

struct BathChannel {
  HermitianOperator noise_op;
  SpectralModel model;
};

struct BathSpec {
  std::string label;
  double beta = std::numeric_limits<double>::infinity();
  std::vector<BathChannel> channels;
  // Cross-channel Ξ matrix; constructors only produce diagonal spectra, the
  // slot exists so correlated channels can be supplied later.
  std::optional<std::vector<std::vector<double>>> xi_matrix;

  std::size_t channel_count() const { return channels.size(); }
  double xi_entry(std::size_t k, std::size_t l) const;
};

struct SystemSpec {
  HermitianOperator hamiltonian;
  std::vector<BathSpec> baths;

  SystemSpec(HermitianOperator h, std::vector<BathSpec> b);
  std::size_t dim() const { return hamiltonian.dim(); }
};

}  // namespace heatlab::spectral
