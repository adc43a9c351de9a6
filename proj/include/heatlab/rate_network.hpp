// rate_network.hpp — Classical rate equations on a few states: steady states,
// relaxation gaps, and explicit integration. Used by the heat-engine and
// battery scenarios.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace heatlab::rate_network {

// dp/dt = K p with off-diagonal K(i,j) ≥ 0 (rate j→i) and zero column sums.
struct RateNetwork {
  std::vector<std::string> state_labels;
  std::vector<double> energies;
  std::vector<double> rate_matrix;  // row-major n×n
  std::vector<double> populations;

  std::size_t size() const { return state_labels.size(); }
  double rate(std::size_t i, std::size_t j) const { return rate_matrix[i * size() + j]; }
  double& rate(std::size_t i, std::size_t j) { return rate_matrix[i * size() + j]; }
  void validate() const;
};

std::vector<double> derivative(const RateNetwork& net, const std::vector<double>& p);

// Null vector of K normalized to Σp = 1, via a pivoted linear solve.
std::vector<double> steady_state(const RateNetwork& net);

// Smallest nonzero |Re λ| of K; sets the relaxation (charging) time scale.
double spectral_gap(const RateNetwork& net);

std::vector<std::pair<double, std::vector<double>>> integrate(const RateNetwork& net,
                                                              std::vector<double> p0, double dt,
                                                              double t_final,
                                                              std::size_t record_stride = 1);

// First time the L1 distance to the steady state shrinks to (1−fraction) of
// the initial distance, located by integration plus linear interpolation.
double time_to_fraction(const RateNetwork& net, const std::vector<double>& p0, double fraction);

}  // namespace heatlab::rate_network
