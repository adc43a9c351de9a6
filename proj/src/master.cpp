#include "heatlab/master.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "heatlab/kernels.hpp"

namespace heatlab::master {

namespace {

// out += s + s†
void add_with_adjoint(ComplexMatrix& out, const ComplexMatrix& s) {
  const std::size_t n = out.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) += s(i, j) + std::conj(s(j, i));
    }
  }
}

struct FrequencyBins {
  std::vector<double> reps;            // positive representatives, ascending
  std::vector<double> sorted_values;   // raw positive differences, deduplicated
  std::vector<std::size_t> bin_of_value;
  std::vector<std::string> warnings;

  std::size_t bin_of(double value) const {
    const auto it = std::lower_bound(sorted_values.begin(), sorted_values.end(),
                                     value - 1e-300);
    std::size_t idx = static_cast<std::size_t>(it - sorted_values.begin());
    if (idx >= sorted_values.size()) idx = sorted_values.size() - 1;
    // `value` is always one of the recorded differences; pick the closer
    // neighbour to be safe against the lower_bound boundary.
    if (idx > 0 && std::abs(sorted_values[idx - 1] - value) <= std::abs(sorted_values[idx] - value)) {
      idx -= 1;
    }
    return bin_of_value[idx];
  }
};

FrequencyBins bin_positive_frequencies(const std::vector<double>& group_energy,
                                       double freq_tol) {
  std::vector<double> pos;
  const std::size_t g = group_energy.size();
  pos.reserve(g * (g - 1) / 2);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i + 1; j < g; ++j) {
      pos.push_back(group_energy[j] - group_energy[i]);
    }
  }
  std::sort(pos.begin(), pos.end());

  FrequencyBins bins;
  double bin_lo = 0.0, bin_hi = 0.0, bin_sum = 0.0;
  std::size_t bin_count = 0;
  auto flush = [&]() {
    if (bin_count == 0) return;
    const double rep = bin_sum / static_cast<double>(bin_count);
    bins.reps.push_back(rep);
    if (bin_hi - bin_lo > 1e-13 * std::max(1.0, std::abs(rep))) {
      std::ostringstream msg;
      msg << "frequency bin at omega = " << rep << " merged distinct Bohr frequencies spanning "
          << (bin_hi - bin_lo);
      bins.warnings.push_back(msg.str());
    }
  };
  for (double v : pos) {
    if (bin_count == 0 || v - bin_hi > freq_tol) {
      flush();
      bin_lo = v;
      bin_hi = v;
      bin_sum = 0.0;
      bin_count = 0;
    }
    bin_hi = v;
    bin_sum += v;
    ++bin_count;
    if (bins.sorted_values.empty() || bins.sorted_values.back() != v) {
      bins.sorted_values.push_back(v);
      bins.bin_of_value.push_back(bins.reps.size());
    }
  }
  flush();
  return bins;
}

}  // namespace

std::vector<double> JumpDecomposition::frequencies() const {
  std::vector<double> f;
  f.reserve(blocks.size());
  for (const auto& b : blocks) f.push_back(b.omega);
  return f;
}

JumpDecomposition secular_decompose(const HermitianOperator& a, const EnergyBasis& basis,
                                    double freq_tol) {
  const std::size_t n = a.dim();
  if (n != basis.dim()) throw std::invalid_argument("secular_decompose: dimension mismatch");
  if (freq_tol <= 0.0) freq_tol = 1e-9 * basis.spectral_radius();

  // Degenerate eigenvalue groups.
  std::vector<std::size_t> group_of(n);
  std::vector<double> group_energy;
  {
    double sum = basis.eigenvalues[0];
    std::size_t count = 1;
    group_of[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (basis.eigenvalues[i] - basis.eigenvalues[i - 1] > basis.degeneracy_tolerance) {
        group_energy.push_back(sum / static_cast<double>(count));
        sum = 0.0;
        count = 0;
      }
      group_of[i] = group_energy.size();
      sum += basis.eigenvalues[i];
      ++count;
    }
    group_energy.push_back(sum / static_cast<double>(count));
  }

  FrequencyBins bins = bin_positive_frequencies(group_energy, freq_tol);
  const std::size_t nbins = bins.reps.size();

  const ComplexMatrix a_eig = basis.to_energy_basis(a.matrix());
  const double drop_tol = 1e-14 * a_eig.max_abs();

  // Pass 1: which bins carry weight.
  std::vector<double> bin_max(nbins, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gi = group_of[i], gj = group_of[j];
      if (gi == gj) continue;
      const double diff = group_energy[std::max(gi, gj)] - group_energy[std::min(gi, gj)];
      const std::size_t b = bins.bin_of(diff);
      bin_max[b] = std::max(bin_max[b], std::abs(a_eig(i, j)));
    }
  }
  std::vector<bool> keep(nbins, false);
  std::vector<std::size_t> slot(nbins, 0);
  std::size_t kept = 0;
  for (std::size_t b = 0; b < nbins; ++b) {
    if (bin_max[b] > drop_tol) {
      keep[b] = true;
      slot[b] = kept++;
    }
  }

  // Pass 2: fill the kept blocks in the energy basis.
  ComplexMatrix zero_block(n, n);
  std::vector<ComplexMatrix> pos_blocks(kept, ComplexMatrix(n, n));
  std::vector<ComplexMatrix> neg_blocks(kept, ComplexMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gi = group_of[i], gj = group_of[j];
      if (gi == gj) {
        zero_block(i, j) = a_eig(i, j);
        continue;
      }
      const bool positive = gj > gi;  // omega = E_j − E_i
      const double diff = group_energy[std::max(gi, gj)] - group_energy[std::min(gi, gj)];
      const std::size_t b = bins.bin_of(diff);
      if (!keep[b]) continue;
      (positive ? pos_blocks[slot[b]] : neg_blocks[slot[b]])(i, j) = a_eig(i, j);
    }
  }

  JumpDecomposition out;
  out.frequency_bin_tolerance = freq_tol;
  out.warnings = bins.warnings;
  // Ascending ω: negative blocks first (largest |ω| first), then 0, then positive.
  for (std::size_t b = nbins; b-- > 0;) {
    if (keep[b]) out.blocks.push_back({-bins.reps[b], basis.from_energy_basis(neg_blocks[slot[b]])});
  }
  out.blocks.push_back({0.0, basis.from_energy_basis(zero_block)});
  for (std::size_t b = 0; b < nbins; ++b) {
    if (keep[b]) out.blocks.push_back({bins.reps[b], basis.from_energy_basis(pos_blocks[slot[b]])});
  }
  return out;
}

MasterSolver::MasterSolver(spectral::SystemSpec spec, double frequency_bin_tolerance)
    : spec_(std::move(spec)) {
  const double norm_proxy = spec_.hamiltonian.matrix().max_abs();
  const double tol = frequency_bin_tolerance > 0.0 ? frequency_bin_tolerance
                                                   : 1e-9 * std::max(1.0, norm_proxy);
  basis_ = hermitian_eig(spec_.hamiltonian, tol);
  diagonal_hamiltonian_ = !basis_.permutation.empty();

  const std::size_t n = spec_.dim();
  baths_.resize(spec_.baths.size());
  for (std::size_t a = 0; a < spec_.baths.size(); ++a) {
    for (const auto& channel : spec_.baths[a].channels) {
      ChannelData cd;
      cd.jumps = secular_decompose(channel.noise_op, basis_, tol);
      cd.filtered = ComplexMatrix(n, n);
      for (const auto& block : cd.jumps.blocks) {
        const double gamma = spectral::rate(channel.model, block.omega);
        cd.rates.push_back(gamma);
        if (gamma != 0.0) {
          kernels::axpy(cd.filtered, cdouble{0.5 * gamma, 0.0}, block.op,
                        kernels::default_backend());
        }
      }
      baths_[a].push_back(std::move(cd));
    }
  }
}

const JumpDecomposition& MasterSolver::jumps(std::size_t bath, std::size_t channel) const {
  return baths_.at(bath).at(channel).jumps;
}

ComplexMatrix MasterSolver::dissipator(std::size_t bath_index, const ComplexMatrix& rho,
                                       EngineKind kind) const {
  if (bath_index >= baths_.size()) throw std::invalid_argument("dissipator: bad bath index");
  if (rho.rows() != dim() || rho.cols() != dim()) {
    throw std::invalid_argument("dissipator: state dimension mismatch");
  }
  const std::size_t n = dim();
  ComplexMatrix out(n, n);
  const auto backend = kernels::default_backend();
  for (std::size_t k = 0; k < baths_[bath_index].size(); ++k) {
    const ChannelData& cd = baths_[bath_index][k];
    const ComplexMatrix& a = spec_.baths[bath_index].channels[k].noise_op.matrix();
    if (kind == EngineKind::redfield) {
      // P ρ A − A P ρ + h.c. with P = Σ_ω (γ(ω)/2) A_ω
      ComplexMatrix x;
      kernels::matmul(cd.filtered, rho, x, backend);
      ComplexMatrix y;
      kernels::matmul(x, a, y, backend);
      ComplexMatrix z;
      kernels::matmul(a, x, z, backend);
      y -= z;
      add_with_adjoint(out, y);
    } else {
      // Σ_ω γ(ω) (A_ω ρ A_ω† − ½{A_ω†A_ω, ρ}), accumulated in explicitly
      // Hermitian halves.
      for (std::size_t b = 0; b < cd.jumps.blocks.size(); ++b) {
        const double gamma = cd.rates[b];
        if (gamma == 0.0) continue;
        const ComplexMatrix& aw = cd.jumps.blocks[b].op;
        const ComplexMatrix aw_dag = aw.adjoint();
        ComplexMatrix x;
        kernels::matmul(aw, rho, x, backend);
        ComplexMatrix z;
        kernels::matmul(x, aw_dag, z, backend);
        z *= cdouble{0.5 * gamma, 0.0};
        add_with_adjoint(out, z);
        ComplexMatrix y;
        kernels::matmul(aw_dag, x, y, backend);
        y *= cdouble{-0.5 * gamma, 0.0};
        add_with_adjoint(out, y);
      }
    }
  }
  return out;
}

ComplexMatrix MasterSolver::dissipator_pure(std::size_t bath_index, const ComplexVector& psi,
                                            EngineKind kind) const {
  if (bath_index >= baths_.size()) throw std::invalid_argument("dissipator_pure: bad bath index");
  if (psi.size() != dim()) throw std::invalid_argument("dissipator_pure: state dimension mismatch");
  const std::size_t n = dim();
  ComplexMatrix out(n, n);
  const auto backend = kernels::default_backend();
  const cdouble one{1.0, 0.0};
  for (std::size_t k = 0; k < baths_[bath_index].size(); ++k) {
    const ChannelData& cd = baths_[bath_index][k];
    const ComplexMatrix& a = spec_.baths[bath_index].channels[k].noise_op.matrix();
    if (kind == EngineKind::redfield) {
      ComplexVector u, w, z;
      kernels::matvec(cd.filtered, psi, u, backend);
      kernels::matvec(a, psi, w, backend);
      kernels::matvec(a, u, z, backend);
      kernels::rank1_accumulate(out, one, u, w, backend);
      kernels::rank1_accumulate(out, one, w, u, backend);
      kernels::rank1_accumulate(out, -one, z, psi, backend);
      kernels::rank1_accumulate(out, -one, psi, z, backend);
    } else {
      for (std::size_t b = 0; b < cd.jumps.blocks.size(); ++b) {
        const double gamma = cd.rates[b];
        if (gamma == 0.0) continue;
        const ComplexMatrix& aw = cd.jumps.blocks[b].op;
        ComplexVector jv, nv;
        kernels::matvec(aw, psi, jv, backend);
        kernels::matvec(aw.adjoint(), jv, nv, backend);
        kernels::rank1_accumulate(out, cdouble{gamma, 0.0}, jv, jv, backend);
        kernels::rank1_accumulate(out, cdouble{-0.5 * gamma, 0.0}, nv, psi, backend);
        kernels::rank1_accumulate(out, cdouble{-0.5 * gamma, 0.0}, psi, nv, backend);
      }
    }
  }
  return out;
}

ComplexMatrix MasterSolver::derivative(const ComplexMatrix& rho, EngineKind kind) const {
  const std::size_t n = dim();
  ComplexMatrix out(n, n);
  const ComplexMatrix& h = spec_.hamiltonian.matrix();
  if (diagonal_hamiltonian_) {
    for (std::size_t i = 0; i < n; ++i) {
      const double hi = h(i, i).real();
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) = cdouble{0.0, -1.0} * ((hi - h(j, j).real()) * rho(i, j));
      }
    }
  } else {
    const auto backend = kernels::default_backend();
    ComplexMatrix hr, rh;
    kernels::matmul(h, rho, hr, backend);
    kernels::matmul(rho, h, rh, backend);
    hr -= rh;
    out = cdouble{0.0, -1.0} * std::move(hr);
  }
  for (std::size_t a = 0; a < baths_.size(); ++a) {
    out += dissipator(a, rho, kind);
  }
  return out;
}

Trajectory MasterSolver::evolve(const DensityMatrix& rho0, double dt, double t_final,
                                EngineKind kind, EvolveOptions options) const {
  if (rho0.dim() != dim()) throw std::invalid_argument("evolve: state dimension mismatch");
  if (dt <= 0.0) dt = default_time_step();
  return evolve_rk4(
      [this, kind](double, const ComplexMatrix& rho) { return derivative(rho, kind); }, rho0,
      dt, t_final, options);
}

double MasterSolver::default_time_step() const {
  double omega_max = 0.0;
  for (const auto& bath : baths_) {
    for (const auto& cd : bath) {
      for (const auto& block : cd.jumps.blocks) {
        omega_max = std::max(omega_max, std::abs(block.omega));
      }
    }
  }
  return omega_max > 0.0 ? 1e-3 / omega_max : 1e-3;
}

ComplexMatrix redfield_dissipator(const spectral::SystemSpec& system, std::size_t bath_index,
                                  const DensityMatrix& rho) {
  return MasterSolver(system).dissipator(bath_index, rho.matrix(), EngineKind::redfield);
}

ComplexMatrix gksl_dissipator(const spectral::SystemSpec& system, std::size_t bath_index,
                              const DensityMatrix& rho) {
  return MasterSolver(system).dissipator(bath_index, rho.matrix(), EngineKind::gksl);
}

Trajectory evolve(const spectral::SystemSpec& system, const DensityMatrix& rho0, double dt,
                  double t_final, EngineKind kind, EvolveOptions options) {
  return MasterSolver(system).evolve(rho0, dt, t_final, kind, options);
}

DickeLadder DickeLadder::delta(std::size_t num_qubits, double omega_q, double m) {
  const double l = 0.5 * static_cast<double>(num_qubits);
  const double k = l - m;
  const double k_rounded = std::round(k);
  if (std::abs(k - k_rounded) > 1e-9 || k_rounded < 0.0 ||
      k_rounded > static_cast<double>(num_qubits)) {
    throw std::invalid_argument("DickeLadder::delta: invalid m");
  }
  DickeLadder ladder;
  ladder.num_qubits = num_qubits;
  ladder.omega_q = omega_q;
  ladder.populations.assign(num_qubits + 1, 0.0);
  ladder.populations[static_cast<std::size_t>(k_rounded)] = 1.0;
  return ladder;
}

double DickeLadder::magnetic_number(std::size_t index) const {
  return 0.5 * static_cast<double>(num_qubits) - static_cast<double>(index);
}

double DickeLadder::energy(std::size_t index) const {
  return omega_q * magnetic_number(index);
}

void DickeLadder::validate() const {
  if (populations.size() != num_qubits + 1) {
    throw std::invalid_argument("DickeLadder: population size mismatch");
  }
  double sum = 0.0;
  for (double p : populations) {
    if (p < -1e-12) throw std::invalid_argument("DickeLadder: negative population");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("DickeLadder: populations do not sum to 1");
  }
}

namespace {

double c2_minus(std::size_t L, double m) {
  const double l = 0.5 * static_cast<double>(L);
  return (l + m) * (l - m + 1.0);
}

double c2_plus(std::size_t L, double m) {
  const double l = 0.5 * static_cast<double>(L);
  return (l - m) * (l + m + 1.0);
}

}  // namespace

std::vector<double> ladder_derivative(const DickeLadder& ladder, double gamma_down,
                                      double gamma_up) {
  if (gamma_down < 0.0 || gamma_up < 0.0) {
    throw std::invalid_argument("ladder_derivative: rates must be nonnegative");
  }
  const std::size_t n = ladder.populations.size();
  std::vector<double> dp(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = ladder.magnetic_number(k);
    if (k + 1 < n) {  // emission m → m−1, index k+1
      const double flux = gamma_down * c2_minus(ladder.num_qubits, m) * ladder.populations[k];
      dp[k] -= flux;
      dp[k + 1] += flux;
    }
    if (k > 0) {  // absorption m → m+1, index k−1
      const double flux = gamma_up * c2_plus(ladder.num_qubits, m) * ladder.populations[k];
      dp[k] -= flux;
      dp[k - 1] += flux;
    }
  }
  return dp;
}

double ladder_heat_current(const DickeLadder& ladder, double gamma_down, double gamma_up) {
  const std::vector<double> dp = ladder_derivative(ladder, gamma_down, gamma_up);
  double current = 0.0;
  for (std::size_t k = 0; k < dp.size(); ++k) current += ladder.energy(k) * dp[k];
  return current;
}

std::vector<std::pair<double, DickeLadder>> ladder_evolve(DickeLadder ladder, double gamma_down,
                                                          double gamma_up, double dt,
                                                          double t_final,
                                                          std::size_t record_stride) {
  if (dt <= 0.0) throw std::invalid_argument("ladder_evolve: dt must be positive");
  if (record_stride == 0) record_stride = 1;
  ladder.validate();

  std::vector<std::pair<double, DickeLadder>> out;
  out.emplace_back(0.0, ladder);
  const double eps = 1e-12 * std::max(dt, t_final);
  double t = 0.0;
  std::size_t step = 0;
  const std::size_t n = ladder.populations.size();
  std::vector<double> stage(n);
  while (t < t_final - eps) {
    const double h = std::min(dt, t_final - t);
    const auto k1 = ladder_derivative(ladder, gamma_down, gamma_up);
    DickeLadder tmp = ladder;
    for (std::size_t i = 0; i < n; ++i) tmp.populations[i] = ladder.populations[i] + 0.5 * h * k1[i];
    const auto k2 = ladder_derivative(tmp, gamma_down, gamma_up);
    for (std::size_t i = 0; i < n; ++i) tmp.populations[i] = ladder.populations[i] + 0.5 * h * k2[i];
    const auto k3 = ladder_derivative(tmp, gamma_down, gamma_up);
    for (std::size_t i = 0; i < n; ++i) tmp.populations[i] = ladder.populations[i] + h * k3[i];
    const auto k4 = ladder_derivative(tmp, gamma_down, gamma_up);
    for (std::size_t i = 0; i < n; ++i) {
      ladder.populations[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    t += h;
    ++step;
    if (step % record_stride == 0 || t >= t_final - eps) {
      ladder.validate();
      out.emplace_back(t, ladder);
    }
  }
  return out;
}

}  // namespace heatlab::master
