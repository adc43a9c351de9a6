// operators.hpp — Constructors for the spin operators used throughout:
// single-site Paulis, collective J, Dicke states, the m-body noise operator,
// and the three-level battery operators.
//
// Computational basis convention (fixed, tested): site 1 is the most
// significant qubit and the excited state |e⟩ is index 0, so basis index 0 is
// the all-excited product state.

#pragma once

#include <cstddef>

#include "heatlab/numcore.hpp"

namespace heatlab::ops {

enum class PauliAxis { x, y, z };
enum class CollectiveAxis { x, y, z, plus, minus };
enum class Ladder { plus, minus };

// Pauli on `site` (1-based), identity elsewhere; 2^L-dimensional.
HermitianOperator pauli(PauliAxis axis, std::size_t site, std::size_t num_qubits);

// J_{x,y,z} = ½ Σ_i σ_{x,y,z}^(i); J_± = J_x ± i J_y.
ComplexMatrix collective_j(CollectiveAxis axis, std::size_t num_qubits);

// Same operators restricted to the maximal-angular-momentum sector,
// (L+1)-dimensional with index k ↔ m = L/2 − k.
ComplexMatrix collective_j_sector(CollectiveAxis axis, std::size_t num_qubits);

// |L/2, m⟩ in the 2^L computational basis; m is (half-)integer with
// L/2 − m a nonnegative integer.
ComplexVector dicke_state(std::size_t num_qubits, double m);

// C_{m,±} = sqrt((L/2 ∓ m)(L/2 ± m + 1)); exactly zero at the ladder edges.
double ladder_coefficient(std::size_t num_qubits, double m, Ladder sign);

// Â = (gL / C(L,m)) Σ over all m-site subsets of σ_x strings; ‖Â‖ = gL.
HermitianOperator m_body_noise(std::size_t num_qubits, std::size_t m, double g,
                               std::size_t max_qubits = 12);

struct BatteryOperators {
  HermitianOperator h_single;      // diag(E1, E0, E-1) in basis (|1⟩,|0⟩,|−1⟩)
  HermitianOperator sigma_plus_x;  // |0⟩⟨1| + |1⟩⟨0|
  HermitianOperator sigma_minus_x; // |0⟩⟨−1| + |−1⟩⟨0|
};

// Requires the level ordering E_{-1} < E_1 < E_0.
BatteryOperators battery_operators(double e1, double e0, double em1);

// Exact binomial for n ≤ 62 (fits in uint64), used by the m-body prefactor.
unsigned long long binomial(std::size_t n, std::size_t k);

}  // namespace heatlab::ops
