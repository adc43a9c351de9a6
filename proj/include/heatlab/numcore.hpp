// numcore.hpp — Hermitian operator and density-matrix types, deterministic
// Hermitian eigendecomposition, operator norms, and fixed-step RK4 evolution.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "heatlab/matrix.hpp"

namespace heatlab {

// Square matrix validated Hermitian at construction:
// ‖M − M†‖_max ≤ 1e-12 · max(1, ‖M‖_max).
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

// Unit-trace positive-semidefinite state. Positivity is checked against the
// stored tolerance; violations throw rather than clamp.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op, double positivity_tolerance = 1e-8);
  static DensityMatrix pure(const ComplexVector& psi, double positivity_tolerance = 1e-8);

  const ComplexMatrix& matrix() const { return op_.matrix(); }
  const HermitianOperator& hermitian() const { return op_; }
  std::size_t dim() const { return op_.dim(); }
  double positivity_tolerance() const { return tol_; }

 private:
  HermitianOperator op_;
  double tol_;
};

// Eigendecomposition H = U diag(E) U†, eigenvalues ascending. When the input
// is exactly diagonal, U is a basis permutation and `permutation` is filled so
// the basis-change helpers run in O(n²) without products.
struct EnergyBasis {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
  double degeneracy_tolerance = 0.0;
  std::vector<std::size_t> permutation;

  std::size_t dim() const { return eigenvalues.size(); }
  double spectral_radius() const;

  ComplexMatrix to_energy_basis(const ComplexMatrix& m) const;    // U† m U
  ComplexMatrix from_energy_basis(const ComplexMatrix& m) const;  // U m U†
  ComplexVector to_energy_basis(const ComplexVector& v) const;
  ComplexVector from_energy_basis(const ComplexVector& v) const;
};

// Deterministic for identical input bits; eigenvector phases fixed by making
// the largest-magnitude component real-positive.
EnergyBasis hermitian_eig(const HermitianOperator& h, double degeneracy_tolerance = 1e-9);

// Eigenvalues only (ascending), without the phase bookkeeping.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& hermitian_matrix);

// Largest singular value; for Hermitian input the largest |eigenvalue|.
double operator_norm(const ComplexMatrix& m);

// Re Tr(Hρ); throws if the imaginary part exceeds 1e-10.
double expectation(const HermitianOperator& h, const DensityMatrix& rho);

struct TrajectoryPoint {
  double time;
  DensityMatrix state;
};
using Trajectory = std::vector<TrajectoryPoint>;

using DerivativeFn = std::function<ComplexMatrix(double t, const ComplexMatrix& rho)>;

class PositivityError : public std::runtime_error {
 public:
  PositivityError(double time, double min_eig);
  double time() const { return time_; }
  double min_eig() const { return min_eig_; }

 private:
  double time_;
  double min_eig_;
};

struct EvolveOptions {
  std::size_t record_stride = 1;
  double positivity_tolerance = 1e-8;
  bool check_derivative = true;
};

// Classical fixed-step 4th-order Runge–Kutta. The trajectory always contains
// t = 0 and t_final; every recorded state is re-validated against the
// DensityMatrix invariants and positivity violations abort with the offending
// time.
Trajectory evolve_rk4(const DerivativeFn& derivative, const DensityMatrix& rho0,
                      double dt, double t_final, const EvolveOptions& options = {});

}  // namespace heatlab
