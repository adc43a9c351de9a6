#include "heatlab/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "heatlab/kernels.hpp"

namespace heatlab {

namespace {

using EigenMat =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMat> as_eigen(const ComplexMatrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()),
          static_cast<Eigen::Index>(m.cols())};
}

bool exactly_diagonal(const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != cdouble{0.0, 0.0}) return false;
  return true;
}

// Largest-magnitude component of each column made real-positive; first index
// wins on magnitude ties so the convention is deterministic.
void fix_column_phases(ComplexMatrix& u) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag <= 0.0) continue;
    const cdouble phase = std::conj(u(best, j)) / best_mag;
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) *= phase;
  }
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.empty()) throw std::invalid_argument("HermitianOperator: empty matrix");
  if (!m_.is_square()) throw std::invalid_argument("HermitianOperator: non-square matrix");
  if (!m_.all_finite()) throw std::invalid_argument("HermitianOperator: non-finite entries");
  const double tol = 1e-12 * std::max(1.0, m_.max_abs());
  const double defect = m_.hermiticity_defect();
  if (defect > tol) {
    std::ostringstream msg;
    msg << "HermitianOperator: hermiticity defect " << defect << " exceeds " << tol;
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix::DensityMatrix(HermitianOperator op, double positivity_tolerance)
    : op_(std::move(op)), tol_(positivity_tolerance) {
  const cdouble tr = op_.matrix().trace();
  if (std::abs(tr.real() - 1.0) > 1e-10 || std::abs(tr.imag()) > 1e-12) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr.real() << " + " << tr.imag() << "i is not 1";
    throw std::invalid_argument(msg.str());
  }
  const double lambda_min = min_eigenvalue(op_.matrix());
  if (lambda_min < -tol_) {
    std::ostringstream msg;
    msg << "DensityMatrix: minimum eigenvalue " << lambda_min
        << " below -positivity_tolerance " << -tol_;
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, double positivity_tolerance) {
  const double nrm = vector_norm(psi);
  if (std::abs(nrm - 1.0) > 1e-10) {
    throw std::invalid_argument("DensityMatrix::pure: state vector not normalized");
  }
  return DensityMatrix(HermitianOperator(outer_product(psi, psi)), positivity_tolerance);
}

double EnergyBasis::spectral_radius() const {
  if (eigenvalues.empty()) return 0.0;
  return std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
}

ComplexMatrix EnergyBasis::to_energy_basis(const ComplexMatrix& m) const {
  if (!permutation.empty()) {
    const std::size_t n = dim();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = m(permutation[i], permutation[j]);
    return out;
  }
  return eigenvectors.adjoint() * m * eigenvectors;
}

ComplexMatrix EnergyBasis::from_energy_basis(const ComplexMatrix& m) const {
  if (!permutation.empty()) {
    const std::size_t n = dim();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(permutation[i], permutation[j]) = m(i, j);
    return out;
  }
  return eigenvectors * m * eigenvectors.adjoint();
}

ComplexVector EnergyBasis::to_energy_basis(const ComplexVector& v) const {
  if (!permutation.empty()) {
    ComplexVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[permutation[i]];
    return out;
  }
  return eigenvectors.adjoint() * v;
}

ComplexVector EnergyBasis::from_energy_basis(const ComplexVector& v) const {
  if (!permutation.empty()) {
    ComplexVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[permutation[i]] = v[i];
    return out;
  }
  return eigenvectors * v;
}

EnergyBasis hermitian_eig(const HermitianOperator& h, double degeneracy_tolerance) {
  const ComplexMatrix& m = h.matrix();
  const std::size_t n = m.rows();
  EnergyBasis basis;
  basis.degeneracy_tolerance = degeneracy_tolerance;

  if (exactly_diagonal(m)) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ea = m(a, a).real(), eb = m(b, b).real();
      if (ea != eb) return ea < eb;
      return a < b;
    });
    basis.permutation = order;
    basis.eigenvalues.resize(n);
    basis.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      basis.eigenvalues[k] = m(order[k], order[k]).real();
      basis.eigenvectors(order[k], k) = 1.0;
    }
    return basis;
  }

  Eigen::SelfAdjointEigenSolver<EigenMat> solver(as_eigen(m));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  }
  basis.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  basis.eigenvectors = ComplexMatrix(n, n);
  const auto& vecs = solver.eigenvectors();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      basis.eigenvectors(i, j) = vecs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  fix_column_phases(basis.eigenvectors);
  return basis;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.empty() || !m.is_square()) {
    throw std::invalid_argument("hermitian_eigenvalues: need a non-empty square matrix");
  }
  if (exactly_diagonal(m)) {
    std::vector<double> vals(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) vals[i] = m(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
  }
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(as_eigen(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  }
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows()};
}

double min_eigenvalue(const ComplexMatrix& hermitian_matrix) {
  return hermitian_eigenvalues(hermitian_matrix).front();
}

namespace {

double skew_hermiticity_defect(const ComplexMatrix& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      d = std::max(d, std::abs(m(i, j) + std::conj(m(j, i))));
  return d;
}

}  // namespace

double operator_norm(const ComplexMatrix& m) {
  if (m.empty()) throw std::invalid_argument("operator_norm: empty matrix");
  if (!m.all_finite()) throw std::invalid_argument("operator_norm: non-finite entries");
  if (m.is_square()) {
    const double tol = 1e-12 * std::max(1.0, m.max_abs());
    if (m.hermiticity_defect() <= tol) {
      const auto vals = hermitian_eigenvalues(m);
      return std::max(std::abs(vals.front()), std::abs(vals.back()));
    }
    // Anti-Hermitian inputs (commutators of Hermitian operators): iM is
    // Hermitian with the same singular values.
    if (skew_hermiticity_defect(m) <= tol) {
      ComplexMatrix im = m;
      im *= cdouble{0.0, 1.0};
      const auto vals = hermitian_eigenvalues(im);
      return std::max(std::abs(vals.front()), std::abs(vals.back()));
    }
  }
  // General case: largest singular value via the Gram matrix.
  const ComplexMatrix gram = m.adjoint() * m;
  const auto vals = hermitian_eigenvalues(gram);
  return std::sqrt(std::max(0.0, vals.back()));
}

double expectation(const HermitianOperator& h, const DensityMatrix& rho) {
  if (h.dim() != rho.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  const cdouble t = trace_product(h.matrix(), rho.matrix());
  if (std::abs(t.imag()) > 1e-10) {
    throw std::runtime_error("expectation: imaginary part exceeds 1e-10");
  }
  return t.real();
}

PositivityError::PositivityError(double time, double min_eig)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "positivity violation at t = " << time << ": min eigenvalue " << min_eig;
        return msg.str();
      }()),
      time_(time),
      min_eig_(min_eig) {}

namespace {

void check_derivative_contract(const DerivativeFn& f, std::size_t n) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;
  for (int probe = 0; probe < 2; ++probe) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = cdouble{gauss(rng), gauss(rng)};
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= cdouble{1.0 / tr, 0.0};
    const ComplexMatrix d = f(0.0, rho);
    const double scale = std::max(1.0, d.max_abs()) * static_cast<double>(n);
    if (std::abs(d.trace()) > 1e-9 * scale) {
      throw std::invalid_argument("evolve_rk4: derivative is not trace-free");
    }
    if (d.hermiticity_defect() > 1e-9 * scale) {
      throw std::invalid_argument("evolve_rk4: derivative does not preserve hermiticity");
    }
  }
}

DensityMatrix validate_state(const ComplexMatrix& rho, double t, double tol) {
  const double lambda_min = min_eigenvalue(rho);
  if (lambda_min < -tol) throw PositivityError(t, lambda_min);
  return DensityMatrix(HermitianOperator(rho), tol);
}

}  // namespace

Trajectory evolve_rk4(const DerivativeFn& derivative, const DensityMatrix& rho0,
                      double dt, double t_final, const EvolveOptions& options) {
  if (dt <= 0.0) throw std::invalid_argument("evolve_rk4: dt must be positive");
  if (t_final < 0.0) throw std::invalid_argument("evolve_rk4: t_final must be nonnegative");
  if (options.check_derivative) check_derivative_contract(derivative, rho0.dim());

  Trajectory traj;
  ComplexMatrix rho = rho0.matrix();
  traj.push_back({0.0, rho0});
  if (t_final == 0.0) return traj;

  const double eps = 1e-12 * std::max(dt, t_final);
  double t = 0.0;
  std::size_t step = 0;
  bool recorded_last = true;
  while (t < t_final - eps) {
    const double h = std::min(dt, t_final - t);
    const ComplexMatrix k1 = derivative(t, rho);
    ComplexMatrix stage = rho;
    kernels::axpy(stage, cdouble{0.5 * h, 0.0}, k1, kernels::default_backend());
    const ComplexMatrix k2 = derivative(t + 0.5 * h, stage);
    stage = rho;
    kernels::axpy(stage, cdouble{0.5 * h, 0.0}, k2, kernels::default_backend());
    const ComplexMatrix k3 = derivative(t + 0.5 * h, stage);
    stage = rho;
    kernels::axpy(stage, cdouble{h, 0.0}, k3, kernels::default_backend());
    const ComplexMatrix k4 = derivative(t + h, stage);

    const auto backend = kernels::default_backend();
    kernels::axpy(rho, cdouble{h / 6.0, 0.0}, k1, backend);
    kernels::axpy(rho, cdouble{h / 3.0, 0.0}, k2, backend);
    kernels::axpy(rho, cdouble{h / 3.0, 0.0}, k3, backend);
    kernels::axpy(rho, cdouble{h / 6.0, 0.0}, k4, backend);
    t += h;
    ++step;

    recorded_last = false;
    if (step % options.record_stride == 0 || t >= t_final - eps) {
      traj.push_back({t, validate_state(rho, t, options.positivity_tolerance)});
      recorded_last = true;
    }
  }
  if (!recorded_last) {
    traj.push_back({t, validate_state(rho, t, options.positivity_tolerance)});
  }
  return traj;
}

}  // namespace heatlab
