#include "heatlab/scenarios.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "heatlab/operators.hpp"

namespace heatlab::scenarios {

namespace {

using spectral::BathChannel;
using spectral::BathSpec;
using spectral::SpectralModel;
using spectral::SystemSpec;

void require_odd(std::size_t num_qubits, const char* what) {
  if (num_qubits % 2 == 0) {
    throw std::invalid_argument(std::string(what) + ": L must be odd");
  }
}

SpectralModel maybe_override(SpectralModel model, const std::optional<double>& xi_override) {
  return xi_override ? model.with_xi(*xi_override) : model;
}

// White-noise bath reproducing a given up/down rate pair on a transition of
// energy omega. Inverted pairs (up > down) get a negative effective β and an
// Ξ override reflecting the larger rate, so the bound chain stays valid.
SpectralModel pair_model(double down, double up, double omega) {
  if (down < 0.0 || up < 0.0) throw std::invalid_argument("rates must be nonnegative");
  SpectralModel model;
  if (down == 0.0 && up == 0.0) {
    model = SpectralModel::flat_zero_temperature(0.0);
  } else if (up == 0.0) {
    model = SpectralModel::flat_zero_temperature(down);
  } else {
    const double beta = std::log(down / up) / omega;
    model = SpectralModel::flat_thermal(down, beta);
  }
  if (up > down) model = model.with_xi(0.5 * up);
  return model;
}

std::optional<double> effective_beta0(double down, double up, double omega_q) {
  if (down > 0.0 && up > 0.0) return std::log(down / up) / omega_q;
  return std::nullopt;
}

}  // namespace

double mbody_current_closed_form(std::size_t num_qubits, std::size_t body_count,
                                 double gamma_wn, double omega_q) {
  const std::size_t L = num_qubits;
  const std::size_t m = body_count;
  if (L < 1 || m < 1 || m > L) {
    throw std::invalid_argument("mbody_current_closed_form: need 1 <= m <= L");
  }
  const double lf = static_cast<double>(L);
  const double mf = static_cast<double>(m);
  if (L <= 60) {
    const double binom = static_cast<double>(ops::binomial(L, m));
    return -gamma_wn * omega_q * lf * lf * mf / binom;
  }
  if (gamma_wn == 0.0 || omega_q == 0.0) return 0.0;
  const double log_binom = std::lgamma(lf + 1.0) - std::lgamma(mf + 1.0) -
                           std::lgamma(lf - mf + 1.0);
  const double magnitude = std::exp(std::log(std::abs(gamma_wn)) + std::log(std::abs(omega_q)) +
                                    2.0 * std::log(lf) + std::log(mf) - log_binom);
  const double sign = (gamma_wn > 0.0) == (omega_q > 0.0) ? -1.0 : 1.0;
  return sign * magnitude;
}

MBodyResult mbody_simulate(std::size_t num_qubits, std::size_t body_count, double gamma_wn,
                           double omega_q, double g, bool with_bounds,
                           std::optional<double> xi_override) {
  if (g <= 0.0) throw std::invalid_argument("mbody_simulate: g must be positive");
  if (gamma_wn < 0.0) throw std::invalid_argument("mbody_simulate: gamma_wn must be nonnegative");

  MBodyResult result;
  result.num_qubits = num_qubits;
  result.body_count = body_count;
  result.gamma_wn = gamma_wn;
  result.omega_q = omega_q;
  result.g = g;
  result.current_closed_form = mbody_current_closed_form(num_qubits, body_count, gamma_wn, omega_q);
  result.parallel_baseline =
      static_cast<double>(num_qubits) * std::abs(gamma_wn * omega_q);

  HermitianOperator h(omega_q * ops::collective_j(ops::CollectiveAxis::z, num_qubits));
  HermitianOperator a = ops::m_body_noise(num_qubits, body_count, g);
  const SpectralModel model =
      maybe_override(SpectralModel::white_noise(gamma_wn, g), xi_override);
  BathSpec bath{"wn", 0.0, {BathChannel{a, model}}, {}};
  SystemSpec spec(h, {bath});

  master::MasterSolver solver(spec);
  const ComplexVector psi0 = ops::dicke_state(num_qubits, 0.5 * static_cast<double>(num_qubits));
  const ComplexMatrix d = solver.dissipator_pure(0, psi0, master::EngineKind::redfield);
  result.current_measured = thermo::heat_current(h, d);

  if (with_bounds) {
    result.bound_eval = bounds::evaluate_bounds(h, bath, std::abs(result.current_measured));
  }
  return result;
}

double superradiance_closed_form(std::size_t num_qubits, double gamma0, double omega_q) {
  if (num_qubits < 1) throw std::invalid_argument("superradiance_closed_form: L >= 1");
  require_odd(num_qubits, "superradiance_closed_form");
  const double lp1 = static_cast<double>(num_qubits) + 1.0;
  return -0.25 * gamma0 * omega_q * lp1 * lp1;
}

HermitianOperator superradiance_sector_hamiltonian(std::size_t num_qubits, double omega_q) {
  return HermitianOperator(omega_q * ops::collective_j_sector(ops::CollectiveAxis::z, num_qubits));
}

HermitianOperator superradiance_sector_noise(std::size_t num_qubits, double g) {
  return HermitianOperator(2.0 * g * ops::collective_j_sector(ops::CollectiveAxis::x, num_qubits));
}

HermitianOperator superabsorption_sector_hamiltonian(std::size_t num_qubits, double omega_q,
                                                     double anharmonicity) {
  const std::size_t n = num_qubits + 1;
  ComplexMatrix h(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = 0.5 * static_cast<double>(num_qubits) - static_cast<double>(k);
    h(k, k) = omega_q * m + anharmonicity * m * m;
  }
  return HermitianOperator(std::move(h));
}

SuperradianceResult superradiance_simulate(std::size_t num_qubits, double gamma0, double omega_q,
                                           SrBackend backend, bool with_bounds,
                                           std::optional<double> xi_override) {
  require_odd(num_qubits, "superradiance_simulate");
  if (gamma0 < 0.0) throw std::invalid_argument("superradiance_simulate: gamma0 >= 0");

  SuperradianceResult result;
  result.num_qubits = num_qubits;
  result.gamma0 = gamma0;
  result.omega_q = omega_q;
  result.backend = backend;
  result.current_closed_form = superradiance_closed_form(num_qubits, gamma0, omega_q);
  result.parallel_baseline = static_cast<double>(num_qubits) * std::abs(gamma0 * omega_q);

  if (backend == SrBackend::ladder) {
    if (num_qubits > 10001) {
      throw std::invalid_argument("superradiance_simulate: ladder path limited to L <= 10001");
    }
    const auto ladder = master::DickeLadder::delta(num_qubits, omega_q, 0.5);
    result.current_measured = master::ladder_heat_current(ladder, gamma0, 0.0);
  } else {
    if (num_qubits > 12) {
      throw std::invalid_argument("superradiance_simulate: dense path limited to L <= 12");
    }
    HermitianOperator h(omega_q * ops::collective_j(ops::CollectiveAxis::z, num_qubits));
    HermitianOperator a(2.0 * ops::collective_j(ops::CollectiveAxis::x, num_qubits));
    const SpectralModel model =
        maybe_override(SpectralModel::flat_zero_temperature(gamma0), xi_override);
    SystemSpec spec(h, {BathSpec{"cold", std::numeric_limits<double>::infinity(),
                                 {BathChannel{a, model}}, {}}});
    master::MasterSolver solver(spec);
    const ComplexVector psi0 = ops::dicke_state(num_qubits, 0.5);
    const ComplexMatrix d = solver.dissipator_pure(0, psi0, master::EngineKind::redfield);
    result.current_measured = thermo::heat_current(h, d);
  }

  if (with_bounds) {
    HermitianOperator h_sec = superradiance_sector_hamiltonian(num_qubits, omega_q);
    HermitianOperator a_sec = superradiance_sector_noise(num_qubits);
    const SpectralModel model =
        maybe_override(SpectralModel::flat_zero_temperature(gamma0), xi_override);
    BathSpec bath{"cold", std::numeric_limits<double>::infinity(),
                  {BathChannel{a_sec, model}}, {}};
    result.bound_eval = bounds::evaluate_bounds(h_sec, bath, std::abs(result.current_measured));
  }
  return result;
}

std::vector<std::pair<double, master::DickeLadder>> superradiance_cascade(
    std::size_t num_qubits, double gamma0, double omega_q, double t_final, double dt,
    std::size_t record_stride) {
  require_odd(num_qubits, "superradiance_cascade");
  if (gamma0 <= 0.0) throw std::invalid_argument("superradiance_cascade: gamma0 > 0");
  auto ladder = master::DickeLadder::delta(num_qubits, omega_q, 0.5);
  if (dt <= 0.0) {
    const double peak = 0.25 * std::pow(static_cast<double>(num_qubits) + 1.0, 2);
    dt = 1e-3 / (gamma0 * peak);
  }
  return master::ladder_evolve(ladder, gamma0, 0.0, dt, t_final, record_stride);
}

SuperabsorptionResult superabsorption_bound_analysis(std::size_t num_qubits, double anharmonicity,
                                                     double omega_q, double gamma0, double g,
                                                     std::optional<double> xi_override) {
  require_odd(num_qubits, "superabsorption_bound_analysis");
  if (anharmonicity <= 0.0) {
    throw std::invalid_argument("superabsorption_bound_analysis: Omega must be positive");
  }
  if (omega_q <= anharmonicity) {
    throw std::invalid_argument(
        "superabsorption_bound_analysis: need Omega < omega_q so the band-pass window "
        "isolates the |-1/2> -> |1/2> line");
  }
  if (gamma0 < 0.0 || g <= 0.0) {
    throw std::invalid_argument("superabsorption_bound_analysis: bad rate or coupling");
  }

  SuperabsorptionResult result;
  result.num_qubits = num_qubits;
  result.anharmonicity = anharmonicity;
  result.omega_q = omega_q;
  result.gamma0 = gamma0;
  result.g = g;
  result.delta_e_closed_form =
      omega_q + (static_cast<double>(num_qubits) - 1.0) * anharmonicity;
  const double lp1 = static_cast<double>(num_qubits) + 1.0;
  result.absorption_closed_form = 0.25 * gamma0 * omega_q * lp1 * lp1;

  HermitianOperator h = superabsorption_sector_hamiltonian(num_qubits, omega_q, anharmonicity);
  HermitianOperator a = superradiance_sector_noise(num_qubits, g);
  const SpectralModel model = maybe_override(
      SpectralModel::band_pass(gamma0, -omega_q - anharmonicity, -omega_q + anharmonicity, g),
      xi_override);
  BathSpec bath{"engineered", std::numeric_limits<double>::infinity(),
                {BathChannel{a, model}}, {}};
  SystemSpec spec(h, {bath});
  master::MasterSolver solver(spec);

  // |−1/2⟩ sits at sector index (L+1)/2.
  ComplexVector psi0(num_qubits + 1, cdouble{0.0, 0.0});
  psi0[(num_qubits + 1) / 2] = 1.0;
  const ComplexMatrix d = solver.dissipator_pure(0, psi0, master::EngineKind::gksl);
  result.absorption_current = thermo::heat_current(h, d);

  result.delta_e_measured = bounds::delta_e(a, solver.basis()).value;
  result.bound_eval = bounds::evaluate_bounds(h, bath, std::abs(result.absorption_current));
  result.note =
      "band-pass window passes only the |-1/2> -> |1/2> absorption line; "
      "Bound 2 scales as Theta(L^3) via Delta E = omega_q + (L-1)*Omega";
  return result;
}

EngineResult heat_engine_steady_state(EngineRates h, EngineRates c, EngineRates w,
                                      double omega_q, std::size_t num_qubits,
                                      std::optional<double> xi_override) {
  if (num_qubits < 1) throw std::invalid_argument("heat_engine_steady_state: L >= 1");
  for (const EngineRates& r : {h, c, w}) {
    if (r.up < 0.0 || r.down < 0.0) {
      throw std::invalid_argument("heat_engine_steady_state: rates must be nonnegative");
    }
  }
  const double gamma_up = h.up + c.up + w.up;
  const double gamma_down = h.down + c.down + w.down;
  if (gamma_up + gamma_down <= 0.0) {
    throw std::invalid_argument("heat_engine_steady_state: all rates are zero");
  }

  EngineResult result;
  result.num_qubits = num_qubits;
  result.omega_q = omega_q;
  const double lf = static_cast<double>(num_qubits);
  const double l2 = lf * lf;
  const double quantum = lf * omega_q;  // energy per jump

  rate_network::RateNetwork net;
  net.state_labels = {"top", "bottom"};
  net.energies = {0.5 * quantum, -0.5 * quantum};
  net.rate_matrix = {-l2 * gamma_down, l2 * gamma_up, l2 * gamma_down, -l2 * gamma_up};
  net.populations = {};
  net.validate();

  const std::vector<double> p = rate_network::steady_state(net);
  net.populations = p;
  result.network = net;
  result.steady_populations = {p[0], p[1]};

  auto bath_current = [&](const EngineRates& r) {
    return quantum * l2 * (r.up * p[1] - r.down * p[0]);
  };
  result.j_h = bath_current(h);
  result.j_c = bath_current(c);
  result.j_w = bath_current(w);
  result.power_numeric = -result.j_w;
  result.power_closed_form =
      omega_q * lf * lf * lf * (w.down * gamma_up - w.up * gamma_down) / (gamma_down + gamma_up);

  const double denom_h = h.down * gamma_up - h.up * gamma_down;
  if (denom_h != 0.0) {
    result.efficiency_closed_form =
        1.0 + (c.down * gamma_up - c.up * gamma_down) / denom_h;
  }
  if (std::abs(result.j_h) > 1e-15) {
    result.efficiency_numeric = 1.0 + result.j_c / result.j_h;
  }

  result.beta_h0 = effective_beta0(h.down, h.up, omega_q);
  result.beta_c0 = effective_beta0(c.down, c.up, omega_q);
  result.beta_w0 = effective_beta0(w.down, w.up, omega_q);

  if (result.beta_h0 && result.beta_c0) {
    result.thermo_report = thermo::efficiency_and_cop(result.j_h, result.j_c, result.j_w,
                                                      *result.beta_h0 / lf, *result.beta_c0 / lf);
    if (result.thermo_report.efficiency && result.thermo_report.carnot_efficiency) {
      result.delta_eta = *result.thermo_report.carnot_efficiency -
                         *result.thermo_report.efficiency;
    }
  }
  result.thermo_report.entropy_rate = 0.0;  // steady state
  constexpr double dead_band = 1e-15;
  result.engine_regime =
      result.j_h >= -dead_band && result.j_c <= dead_band && result.j_w <= dead_band;
  result.first_law_residual = std::abs(result.j_h + result.j_c + result.j_w);
  result.second_law_sum = 0.0;
  const std::array<std::pair<std::optional<double>, double>, 3> beta_current{
      {{result.beta_h0, result.j_h}, {result.beta_c0, result.j_c}, {result.beta_w0, result.j_w}}};
  for (const auto& [beta0, current] : beta_current) {
    if (beta0) result.second_law_sum += (*beta0 / lf) * current;
  }
  result.thermo_report.entropy_production = -result.second_law_sum;
  result.parallel_power_baseline =
      lf * std::abs(omega_q * (w.down * gamma_up - w.up * gamma_down) / (gamma_down + gamma_up));

  // Bound reports on the two-state collective sector.
  ComplexMatrix h2(2, 2);
  h2(0, 0) = 0.5 * quantum;
  h2(1, 1) = -0.5 * quantum;
  HermitianOperator h_sec(std::move(h2));
  ComplexMatrix a2(2, 2);
  a2(0, 1) = lf;
  a2(1, 0) = lf;
  HermitianOperator a_sec(std::move(a2));
  result.bath_labels = {"H", "C", "W"};
  const std::array<EngineRates, 3> all_rates{h, c, w};
  const std::array<double, 3> currents{result.j_h, result.j_c, result.j_w};
  for (std::size_t i = 0; i < 3; ++i) {
    SpectralModel model = pair_model(all_rates[i].down, all_rates[i].up, quantum);
    if (xi_override) model = model.with_xi(*xi_override);
    BathSpec bath{result.bath_labels[i], 0.0, {BathChannel{a_sec, model}}, {}};
    result.per_bath_bounds.push_back(
        bounds::evaluate_bounds(h_sec, bath, std::abs(currents[i])));
  }
  return result;
}

BatteryResult battery_steady_state(double e1, double e0, double em1, double beta_h0,
                                   double beta_c0, std::size_t num_qubits, double rate_h_down,
                                   double rate_c_down, std::optional<double> xi_override) {
  if (num_qubits < 1) throw std::invalid_argument("battery_steady_state: L >= 1");
  if (beta_h0 < 0.0 || beta_c0 < 0.0) {
    throw std::invalid_argument("battery_steady_state: inverse temperatures must be nonnegative");
  }
  if (rate_h_down < 0.0 || rate_c_down < 0.0 || rate_h_down + rate_c_down <= 0.0) {
    throw std::invalid_argument("battery_steady_state: bad rates");
  }
  ops::battery_operators(e1, e0, em1);  // validates the level ordering

  BatteryResult result;
  result.num_qubits = num_qubits;
  result.e1 = e1;
  result.e0 = e0;
  result.em1 = em1;
  result.beta_h0 = beta_h0;
  result.beta_c0 = beta_c0;
  const double lf = static_cast<double>(num_qubits);
  result.omega_h = lf * (e0 - em1);
  result.omega_c = lf * (e0 - e1);

  // L-independent detailed-balance exponents: β_X ω_X = β_X^(0) (E_0 − E_∓1).
  const double x_h = beta_h0 * (e0 - em1);
  const double x_c = beta_c0 * (e0 - e1);
  const double gamma_h_up = rate_h_down * std::exp(-x_h);
  const double gamma_c_up = rate_c_down * std::exp(-x_c);

  auto build_network = [&](double scale) {
    rate_network::RateNetwork net;
    net.state_labels = {"1", "0", "-1"};
    net.energies = {lf * e1, lf * e0, lf * em1};
    net.rate_matrix = {
        -scale * gamma_c_up, scale * rate_c_down,  0.0,
        scale * gamma_c_up,  -scale * (rate_c_down + rate_h_down), scale * gamma_h_up,
        0.0,                 scale * rate_h_down,  -scale * gamma_h_up,
    };
    net.validate();
    return net;
  };
  rate_network::RateNetwork net = build_network(lf * lf);
  const rate_network::RateNetwork net_single = build_network(1.0);

  const std::vector<double> p = rate_network::steady_state(net);
  net.populations = p;
  result.network = net;
  result.steady_populations = {p[0], p[1], p[2]};

  const double z = 1.0 + std::exp(x_c) + std::exp(x_h);
  result.inverted = x_h < x_c;
  result.ergotropy_closed_form =
      std::max(0.0, lf * (std::exp(x_c) - std::exp(x_h)) / z * (e1 - em1));
  if (!result.inverted) {
    result.note = "no population inversion (beta_H omega_H >= beta_C omega_C); ergotropy 0";
  }

  ComplexMatrix h3(3, 3);
  h3(0, 0) = lf * e1;
  h3(1, 1) = lf * e0;
  h3(2, 2) = lf * em1;
  HermitianOperator h_sec(std::move(h3));
  ComplexMatrix rho3(3, 3);
  for (std::size_t i = 0; i < 3; ++i) rho3(i, i) = p[i];
  result.ergotropy_measured =
      thermo::ergotropy(h_sec, DensityMatrix(HermitianOperator(std::move(rho3))));

  result.gap_collective = rate_network::spectral_gap(net);
  result.gap_parallel = rate_network::spectral_gap(net_single);
  result.charging_time_collective = 1.0 / result.gap_collective;
  result.charging_time_parallel = 1.0 / result.gap_parallel;
  result.charging_time_ratio = result.charging_time_parallel / result.charging_time_collective;

  const double l2 = lf * lf;
  result.j_h = result.omega_h * l2 * (gamma_h_up * p[2] - rate_h_down * p[1]);
  result.j_c = result.omega_c * l2 * (gamma_c_up * p[0] - rate_c_down * p[1]);
  result.first_law_residual = std::abs(result.j_h + result.j_c);
  result.second_law_sum =
      (beta_h0 / lf) * result.j_h + (beta_c0 / lf) * result.j_c;

  // Bound reports on the three-state collective sector.
  ComplexMatrix ah(3, 3);
  ah(1, 2) = lf;
  ah(2, 1) = lf;
  ComplexMatrix ac(3, 3);
  ac(0, 1) = lf;
  ac(1, 0) = lf;
  result.bath_labels = {"H", "C"};
  const std::array<std::pair<double, double>, 2> pairs{
      {{rate_h_down, gamma_h_up}, {rate_c_down, gamma_c_up}}};
  const std::array<double, 2> omegas{result.omega_h, result.omega_c};
  const std::array<ComplexMatrix, 2> noise_ops{std::move(ah), std::move(ac)};
  const std::array<double, 2> currents{result.j_h, result.j_c};
  for (std::size_t i = 0; i < 2; ++i) {
    SpectralModel model = pair_model(pairs[i].first, pairs[i].second, omegas[i]);
    if (xi_override) model = model.with_xi(*xi_override);
    BathSpec bath{result.bath_labels[i], 0.0,
                  {BathChannel{HermitianOperator(noise_ops[i]), model}}, {}};
    result.per_bath_bounds.push_back(
        bounds::evaluate_bounds(h_sec, bath, std::abs(currents[i])));
  }
  return result;
}

DephasingResult dephasing_analysis(std::size_t num_qubits, double gamma0, double omega_q,
                                   double g, std::optional<double> xi_override) {
  if (num_qubits < 1 || num_qubits > 12) {
    throw std::invalid_argument("dephasing_analysis: need 1 <= L <= 12");
  }
  if (gamma0 < 0.0 || g <= 0.0) throw std::invalid_argument("dephasing_analysis: bad parameters");

  DephasingResult result;
  result.num_qubits = num_qubits;
  result.gamma0 = gamma0;
  result.omega_q = omega_q;
  result.g = g;

  HermitianOperator h(omega_q * ops::collective_j(ops::CollectiveAxis::z, num_qubits));
  HermitianOperator a(2.0 * g * ops::collective_j(ops::CollectiveAxis::z, num_qubits));
  const SpectralModel model = maybe_override(SpectralModel::white_noise(gamma0, g), xi_override);
  BathSpec bath{"dephasing", 0.0, {BathChannel{a, model}}, {}};
  SystemSpec spec(h, {bath});
  master::MasterSolver solver(spec);
  const ComplexVector psi0 = ops::dicke_state(num_qubits, 0.5 * static_cast<double>(num_qubits));
  const ComplexMatrix d = solver.dissipator_pure(0, psi0, master::EngineKind::redfield);
  result.current_measured = thermo::heat_current(h, d);
  result.bound_eval = bounds::evaluate_bounds(h, bath, std::abs(result.current_measured));
  return result;
}

}  // namespace heatlab::scenarios
