#include "heatlab/rate_network.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace heatlab::rate_network {

void RateNetwork::validate() const {
  const std::size_t n = size();
  if (energies.size() != n || rate_matrix.size() != n * n) {
    throw std::invalid_argument("RateNetwork: field sizes inconsistent");
  }
  double scale = 0.0;
  for (double v : rate_matrix) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j && rate(i, j) < 0.0) {
        throw std::invalid_argument("RateNetwork: negative off-diagonal rate");
      }
      col += rate(i, j);
    }
    if (std::abs(col) > 1e-12 * std::max(1.0, scale)) {
      throw std::invalid_argument("RateNetwork: column sum not zero");
    }
  }
  if (!populations.empty()) {
    if (populations.size() != n) throw std::invalid_argument("RateNetwork: population size");
    double sum = 0.0;
    for (double p : populations) {
      if (p < -1e-12) throw std::invalid_argument("RateNetwork: negative population");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
      throw std::invalid_argument("RateNetwork: populations do not sum to 1");
    }
  }
}

std::vector<double> derivative(const RateNetwork& net, const std::vector<double>& p) {
  const std::size_t n = net.size();
  if (p.size() != n) throw std::invalid_argument("derivative: population size mismatch");
  std::vector<double> dp(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dp[i] += net.rate(i, j) * p[j];
  }
  return dp;
}

std::vector<double> steady_state(const RateNetwork& net) {
  const std::size_t n = net.size();
  // Replace the first equation by the normalization Σp = 1.
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (std::size_t j = 0; j < n; ++j) m(0, j) = 1.0;
  rhs(0) = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = net.rate(i, j);
  }
  const Eigen::VectorXd p = m.partialPivLu().solve(rhs);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = p(i);

  const std::vector<double> residual = derivative(net, out);
  double scale = 0.0;
  for (double v : net.rate_matrix) scale = std::max(scale, std::abs(v));
  for (double r : residual) {
    if (std::abs(r) > 1e-11 * std::max(1.0, scale)) {
      throw std::runtime_error("steady_state: residual too large (singular network?)");
    }
  }
  return out;
}

double spectral_gap(const RateNetwork& net) {
  const std::size_t n = net.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = net.rate(i, j);
  }
  const Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) scale = std::max(scale, std::abs(eigs(i)));
  double gap = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double re = std::abs(eigs(i).real());
    if (re > 1e-12 * std::max(1.0, scale)) gap = gap == 0.0 ? re : std::min(gap, re);
  }
  return gap;
}

std::vector<std::pair<double, std::vector<double>>> integrate(const RateNetwork& net,
                                                              std::vector<double> p0, double dt,
                                                              double t_final,
                                                              std::size_t record_stride) {
  const std::size_t n = net.size();
  if (p0.size() != n) throw std::invalid_argument("integrate: population size mismatch");
  if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be positive");
  if (record_stride == 0) record_stride = 1;

  std::vector<std::pair<double, std::vector<double>>> out;
  out.emplace_back(0.0, p0);
  const double eps = 1e-12 * std::max(dt, t_final);
  double t = 0.0;
  std::size_t step = 0;
  std::vector<double> tmp(n);
  while (t < t_final - eps) {
    const double h = std::min(dt, t_final - t);
    const auto k1 = derivative(net, p0);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p0[i] + 0.5 * h * k1[i];
    const auto k2 = derivative(net, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p0[i] + 0.5 * h * k2[i];
    const auto k3 = derivative(net, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p0[i] + h * k3[i];
    const auto k4 = derivative(net, tmp);
    for (std::size_t i = 0; i < n; ++i) {
      p0[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    t += h;
    ++step;
    if (step % record_stride == 0 || t >= t_final - eps) out.emplace_back(t, p0);
  }
  return out;
}

double time_to_fraction(const RateNetwork& net, const std::vector<double>& p0, double fraction) {
  if (fraction <= 0.0 || fraction >= 1.0) {
    throw std::invalid_argument("time_to_fraction: fraction must be in (0,1)");
  }
  const std::vector<double> ss = steady_state(net);
  auto distance = [&](const std::vector<double>& p) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - ss[i]);
    return d;
  };
  const double d0 = distance(p0);
  if (d0 == 0.0) return 0.0;
  const double target = (1.0 - fraction) * d0;

  const double gap = spectral_gap(net);
  if (gap <= 0.0) throw std::runtime_error("time_to_fraction: zero spectral gap");
  const double dt = 1e-3 / gap;
  const double horizon = 10.0 * std::log(1.0 / (1.0 - fraction)) / gap + 10.0 * dt;

  std::vector<double> p = p0;
  double t = 0.0;
  double prev_d = d0;
  std::vector<double> tmp(p.size());
  while (t < horizon) {
    const auto k1 = derivative(net, p);
    for (std::size_t i = 0; i < p.size(); ++i) tmp[i] = p[i] + 0.5 * dt * k1[i];
    const auto k2 = derivative(net, tmp);
    for (std::size_t i = 0; i < p.size(); ++i) tmp[i] = p[i] + 0.5 * dt * k2[i];
    const auto k3 = derivative(net, tmp);
    for (std::size_t i = 0; i < p.size(); ++i) tmp[i] = p[i] + dt * k3[i];
    const auto k4 = derivative(net, tmp);
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    t += dt;
    const double d = distance(p);
    if (d <= target) {
      // Linear interpolation inside the crossing step.
      const double alpha = (prev_d - target) / std::max(prev_d - d, 1e-300);
      return t - dt + alpha * dt;
    }
    prev_d = d;
  }
  throw std::runtime_error("time_to_fraction: target not reached within horizon");
}

}  // namespace heatlab::rate_network
