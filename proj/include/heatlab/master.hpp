// master.hpp — Bohr-frequency (secular) decomposition, Redfield and GKSL
// dissipators, full time evolution, and the (L+1)-dimensional Dicke-ladder
// fast path.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heatlab/numcore.hpp"
#include "heatlab/spectral.hpp"

namespace heatlab::master {

struct JumpBlock {
  double omega = 0.0;
  ComplexMatrix op;  // A_ω in the original basis
};

struct JumpDecomposition {
  std::vector<JumpBlock> blocks;  // sorted by ω ascending; ω = 0 always present
  double frequency_bin_tolerance = 0.0;
  std::vector<std::string> warnings;

  std::vector<double> frequencies() const;
};

// A_ω = Σ_{ε−ε′=−ω} Π(ε) A Π(ε′). Frequencies are binned with absolute
// tolerance freq_tol (default 1e-9·‖H‖); merged distinct frequencies are
// recorded as warnings. Blocks that vanish are dropped except the ω = 0 one.
JumpDecomposition secular_decompose(const HermitianOperator& a, const EnergyBasis& basis,
                                    double freq_tol = 0.0);

enum class EngineKind { redfield, gksl };

class MasterSolver {
 public:
  explicit MasterSolver(spectral::SystemSpec spec, double frequency_bin_tolerance = 0.0);

  const spectral::SystemSpec& system() const { return spec_; }
  const EnergyBasis& basis() const { return basis_; }
  std::size_t dim() const { return spec_.dim(); }
  std::size_t bath_count() const { return spec_.baths.size(); }
  const JumpDecomposition& jumps(std::size_t bath, std::size_t channel) const;

  // dρ contribution of bath `bath_index`; rho must be Hermitian (density-like).
  ComplexMatrix dissipator(std::size_t bath_index, const ComplexMatrix& rho,
                           EngineKind kind) const;
  // Same operator applied to a pure state |ψ⟩⟨ψ| using matrix-vector products.
  ComplexMatrix dissipator_pure(std::size_t bath_index, const ComplexVector& psi,
                                EngineKind kind) const;
  // −i[H,ρ] + Σ_a D_a[ρ]
  ComplexMatrix derivative(const ComplexMatrix& rho, EngineKind kind) const;

  Trajectory evolve(const DensityMatrix& rho0, double dt, double t_final, EngineKind kind,
                    EvolveOptions options = {}) const;

  // 1e-3 / (max Bohr frequency), the default integration step.
  double default_time_step() const;

 private:
  struct ChannelData {
    JumpDecomposition jumps;
    std::vector<double> rates;  // γ(ω) per block
    ComplexMatrix filtered;     // Σ_ω (γ(ω)/2) A_ω
  };

  spectral::SystemSpec spec_;
  EnergyBasis basis_;
  bool diagonal_hamiltonian_ = false;
  std::vector<std::vector<ChannelData>> baths_;
};

// One-shot conveniences matching the per-operation surface.
ComplexMatrix redfield_dissipator(const spectral::SystemSpec& system, std::size_t bath_index,
                                  const DensityMatrix& rho);
ComplexMatrix gksl_dissipator(const spectral::SystemSpec& system, std::size_t bath_index,
                              const DensityMatrix& rho);
Trajectory evolve(const spectral::SystemSpec& system, const DensityMatrix& rho0, double dt,
                  double t_final, EngineKind kind, EvolveOptions options = {});

// Populations over the Dicke ladder m = L/2 … −L/2 (index k ↔ m = L/2 − k).
struct DickeLadder {
  std::size_t num_qubits = 0;
  double omega_q = 0.0;
  std::vector<double> populations;

  static DickeLadder delta(std::size_t num_qubits, double omega_q, double m);
  double magnetic_number(std::size_t index) const;
  double energy(std::size_t index) const;  // m ω_q
  void validate() const;
};

// dp_m/dt for uniform rates γ(ω_q)=gamma_down, γ(−ω_q)=gamma_up. The fluxes
// are paired so Σ dp/dt = 0 exactly.
std::vector<double> ladder_derivative(const DickeLadder& ladder, double gamma_down,
                                      double gamma_up);

// J = Σ_m E_m dp_m/dt for the same rate model.
double ladder_heat_current(const DickeLadder& ladder, double gamma_down, double gamma_up);

// Fixed-step RK4 on the populations; records every `record_stride` steps.
std::vector<std::pair<double, DickeLadder>> ladder_evolve(DickeLadder ladder, double gamma_down,
                                                          double gamma_up, double dt,
                                                          double t_final,
                                                          std::size_t record_stride = 1);

}  // namespace heatlab::master
