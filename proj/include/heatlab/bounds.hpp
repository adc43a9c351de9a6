// bounds.hpp — Evaluation of the two universal heat-current bounds, the
// intermediate commutator bound, the ΔE condition, and saturation reporting.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatlab/numcore.hpp"
#include "heatlab/spectral.hpp"

namespace heatlab::bounds {

struct BoundReport {
  double bound1 = 0.0;
  double bound_commutator = 0.0;
  std::optional<double> bound2;
  std::vector<double> delta_e_per_channel;
  std::vector<double> channel_norms;
  double measured_current_abs = 0.0;
  std::optional<double> saturation_ratio_1;
  std::optional<double> saturation_ratio_2;
  std::string xi_convention_note;
};

// |J_a| ≤ 4 ‖H_S‖ Σ_kl Ξ_kl ‖A_k‖ ‖A_l‖
double bound1(const HermitianOperator& h_s, const spectral::BathSpec& bath);

// |J_a| ≤ 2 Σ_kl Ξ_kl ‖[A_k, H_S]‖ ‖A_l‖
double bound_commutator(const HermitianOperator& h_s, const spectral::BathSpec& bath);

struct DeltaEResult {
  double value = 0.0;
  bool numerically_zero = false;  // all elements below tolerance
};

// Largest |E_i − E_j| with |⟨E_i|A|E_j⟩| above element_tol
// (default 1e-10·‖A‖).
DeltaEResult delta_e(const HermitianOperator& a, const EnergyBasis& basis,
                     double element_tol = 0.0);

// |J_a| ≤ 2 Σ_kl Ξ_kl ΔE_k ‖A_k‖ ‖A_l‖
double bound2(const HermitianOperator& h_s, const spectral::BathSpec& bath,
              double element_tol = 0.0);

struct LemmaCheck {
  bool ok = false;
  double commutator_norm = 0.0;
  double bound = 0.0;   // ΔE ‖A‖
  double margin = 0.0;  // bound − commutator_norm
};

// ‖[A, H]‖ ≤ ΔE ‖A‖ + 1e-9
LemmaCheck commutator_lemma_check(const HermitianOperator& a, const HermitianOperator& h,
                                  double delta_e_value);

struct BoundEvaluation {
  BoundReport report;
  std::vector<std::string> violations;
};

// Non-throwing evaluation; violations of the ordering chain or of Bound 2 are
// collected so callers can treat them as advisory.
BoundEvaluation evaluate_bounds(const HermitianOperator& h_s, const spectral::BathSpec& bath,
                                double measured_current_abs, double element_tol = 0.0);

// Hard-error variant: throws if any invariant is violated beyond slack.
BoundReport check_bounds(const HermitianOperator& h_s, const spectral::BathSpec& bath,
                         double measured_current_abs, double element_tol = 0.0);

}  // namespace heatlab::bounds
