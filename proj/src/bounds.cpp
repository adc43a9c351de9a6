#include "heatlab/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heatlab::bounds {

namespace {

std::vector<double> channel_norms(const spectral::BathSpec& bath) {
  std::vector<double> norms;
  norms.reserve(bath.channels.size());
  for (const auto& ch : bath.channels) norms.push_back(operator_norm(ch.noise_op.matrix()));
  return norms;
}

bool exactly_diagonal(const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != cdouble{0.0, 0.0}) return false;
  return true;
}

// [A, H] without products when H is diagonal: element (i,j) is A_ij (h_j − h_i).
ComplexMatrix commutator_with_hamiltonian(const ComplexMatrix& a, const ComplexMatrix& h) {
  if (exactly_diagonal(h)) {
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double hi = h(i, i).real();
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) = a(i, j) * (h(j, j).real() - hi);
      }
    }
    return out;
  }
  return commutator(a, h);
}

double xi_double_sum(const spectral::BathSpec& bath, const std::vector<double>& weight_k,
                     const std::vector<double>& weight_l) {
  double sum = 0.0;
  const std::size_t c = bath.channel_count();
  for (std::size_t k = 0; k < c; ++k) {
    for (std::size_t l = 0; l < c; ++l) {
      sum += bath.xi_entry(k, l) * weight_k[k] * weight_l[l];
    }
  }
  return sum;
}

}  // namespace

double bound1(const HermitianOperator& h_s, const spectral::BathSpec& bath) {
  const std::vector<double> norms = channel_norms(bath);
  return 4.0 * operator_norm(h_s.matrix()) * xi_double_sum(bath, norms, norms);
}

double bound_commutator(const HermitianOperator& h_s, const spectral::BathSpec& bath) {
  const std::vector<double> norms = channel_norms(bath);
  std::vector<double> comm_norms;
  comm_norms.reserve(bath.channels.size());
  for (const auto& ch : bath.channels) {
    comm_norms.push_back(
        operator_norm(commutator_with_hamiltonian(ch.noise_op.matrix(), h_s.matrix())));
  }
  return 2.0 * xi_double_sum(bath, comm_norms, norms);
}

DeltaEResult delta_e(const HermitianOperator& a, const EnergyBasis& basis,
                     double element_tol) {
  if (a.dim() != basis.dim()) throw std::invalid_argument("delta_e: dimension mismatch");
  if (element_tol <= 0.0) element_tol = 1e-10 * operator_norm(a.matrix());
  const ComplexMatrix a_eig = basis.to_energy_basis(a.matrix());
  DeltaEResult result;
  bool any = false;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      if (std::abs(a_eig(i, j)) > element_tol) {
        any = true;
        result.value = std::max(result.value, std::abs(basis.eigenvalues[i] - basis.eigenvalues[j]));
      }
    }
  }
  result.numerically_zero = !any;
  return result;
}

double bound2(const HermitianOperator& h_s, const spectral::BathSpec& bath,
              double element_tol) {
  const std::vector<double> norms = channel_norms(bath);
  const EnergyBasis basis = hermitian_eig(h_s);
  std::vector<double> delta_weights;
  delta_weights.reserve(bath.channels.size());
  for (std::size_t k = 0; k < bath.channels.size(); ++k) {
    const double tol = element_tol > 0.0 ? element_tol : 1e-10 * norms[k];
    const DeltaEResult de = delta_e(bath.channels[k].noise_op, basis, tol);
    delta_weights.push_back(de.value * norms[k]);
  }
  return 2.0 * xi_double_sum(bath, delta_weights, norms);
}

LemmaCheck commutator_lemma_check(const HermitianOperator& a, const HermitianOperator& h,
                                  double delta_e_value) {
  LemmaCheck check;
  check.commutator_norm = operator_norm(commutator_with_hamiltonian(a.matrix(), h.matrix()));
  check.bound = delta_e_value * operator_norm(a.matrix());
  check.margin = check.bound - check.commutator_norm;
  check.ok = check.commutator_norm <= check.bound + 1e-9;
  return check;
}

BoundEvaluation evaluate_bounds(const HermitianOperator& h_s, const spectral::BathSpec& bath,
                                double measured_current_abs, double element_tol) {
  BoundEvaluation eval;
  BoundReport& report = eval.report;
  report.measured_current_abs = std::abs(measured_current_abs);
  report.xi_convention_note = spectral::xi_convention_note();
  report.channel_norms = channel_norms(bath);

  const double h_norm = operator_norm(h_s.matrix());
  std::vector<double> comm_norms;
  const EnergyBasis basis = hermitian_eig(h_s);
  std::vector<double> delta_weights;
  for (std::size_t k = 0; k < bath.channels.size(); ++k) {
    const auto& a = bath.channels[k].noise_op;
    comm_norms.push_back(operator_norm(commutator_with_hamiltonian(a.matrix(), h_s.matrix())));
    const double tol = element_tol > 0.0 ? element_tol : 1e-10 * report.channel_norms[k];
    const DeltaEResult de = delta_e(a, basis, tol);
    report.delta_e_per_channel.push_back(de.value);
    delta_weights.push_back(de.value * report.channel_norms[k]);
  }

  report.bound1 = 4.0 * h_norm * xi_double_sum(bath, report.channel_norms, report.channel_norms);
  report.bound_commutator = 2.0 * xi_double_sum(bath, comm_norms, report.channel_norms);
  report.bound2 = 2.0 * xi_double_sum(bath, delta_weights, report.channel_norms);

  const double tiny = 1e-30;
  if (report.bound1 > tiny) report.saturation_ratio_1 = report.measured_current_abs / report.bound1;
  if (*report.bound2 > tiny) report.saturation_ratio_2 = report.measured_current_abs / *report.bound2;

  const double rel = 1e-9;
  auto violation = [&](const char* what, double lhs, double rhs) {
    std::ostringstream msg;
    msg << what << ": " << lhs << " > " << rhs;
    eval.violations.push_back(msg.str());
  };
  if (report.measured_current_abs > report.bound_commutator * (1.0 + rel) + tiny) {
    violation("measured current exceeds commutator bound", report.measured_current_abs,
              report.bound_commutator);
  }
  if (report.bound_commutator > report.bound1 * (1.0 + rel) + tiny) {
    violation("commutator bound exceeds Bound 1", report.bound_commutator, report.bound1);
  }
  if (report.measured_current_abs > *report.bound2 * (1.0 + rel) + tiny) {
    violation("measured current exceeds Bound 2", report.measured_current_abs, *report.bound2);
  }
  return eval;
}

BoundReport check_bounds(const HermitianOperator& h_s, const spectral::BathSpec& bath,
                         double measured_current_abs, double element_tol) {
  BoundEvaluation eval = evaluate_bounds(h_s, bath, measured_current_abs, element_tol);
  if (!eval.violations.empty()) {
    std::ostringstream msg;
    msg << "bound check failed:";
    for (const auto& v : eval.violations) msg << " [" << v << "]";
    throw std::runtime_error(msg.str());
  }
  return eval.report;
}

}  // namespace heatlab::bounds
