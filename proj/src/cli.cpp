#include "heatlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "heatlab/kernels.hpp"
#include "heatlab/operators.hpp"
#include "heatlab/scaling.hpp"

namespace heatlab::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "scenario",   "L",          "m",           "g",           "gamma0",     "omega_q",
    "Omega",      "E1",         "E0",          "Em1",         "beta_H0",    "beta_C0",
    "beta_W0",    "rate_H_up",  "rate_H_down", "rate_C_up",   "rate_C_down", "rate_W_up",
    "rate_W_down", "dt",        "t_final",     "L_list",      "xi_override", "backend",
    "engine",     "record_stride", "out",      "format",      "positivity_tol", "freq_tol"};

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) fail("config key '" + key + "' must be a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    const long long i = static_cast<long long>(std::llround(d));
    if (std::abs(d - static_cast<double>(i)) > 1e-12) {
      fail("config key '" + key + "' must be an integer");
    }
    return i;
  }
  fail("config key '" + key + "' must be an integer");
}

std::vector<long long> parse_l_list(const json& v) {
  std::vector<long long> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(as_integer(e, "L_list"));
    return out;
  }
  if (!v.is_string()) fail("config key 'L_list' must be an array or a range string");
  const std::string s = v.get<std::string>();
  // Forms: "a..b", "a..b:step", "a,b,c".
  if (s.find("..") != std::string::npos) {
    long long a = 0, b = 0, step = 1;
    const auto dots = s.find("..");
    const auto colon = s.find(':', dots);
    a = std::stoll(s.substr(0, dots));
    if (colon == std::string::npos) {
      b = std::stoll(s.substr(dots + 2));
    } else {
      b = std::stoll(s.substr(dots + 2, colon - dots - 2));
      step = std::stoll(s.substr(colon + 1));
    }
    if (step <= 0 || b < a) fail("config key 'L_list': bad range '" + s + "'");
    for (long long l = a; l <= b; l += step) out.push_back(l);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoll(tok));
  }
  if (out.empty()) fail("config key 'L_list': empty list");
  return out;
}

json parse_override_value(const std::string& raw) {
  const json parsed = json::parse(raw, nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  return json(raw);
}

struct ConfigTree {
  json values = json::object();
  bool m_tracks_l = false;
};

ConfigTree load_tree(const std::string& config_path, const std::vector<std::string>& overrides) {
  ConfigTree tree;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) fail("config file not found: " + config_path);
    json parsed;
    try {
      in >> parsed;
    } catch (const json::exception& e) {
      fail("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!parsed.is_object()) fail("config file must contain a JSON object");
    tree.values = parsed;
  }
  for (const std::string& setting : overrides) {
    const auto eq = setting.find('=');
    if (eq == std::string::npos) fail("--set expects key=value, got '" + setting + "'");
    const std::string key = setting.substr(0, eq);
    tree.values[key] = parse_override_value(setting.substr(eq + 1));
  }
  return tree;
}

void require_keys(const RunConfig& c, const std::vector<std::string>& keys) {
  auto has = [&](const std::string& k) -> bool {
    if (k == "L") return c.L.has_value();
    if (k == "m") return c.m.has_value();
    if (k == "gamma0") return c.gamma0.has_value();
    if (k == "omega_q") return c.omega_q.has_value();
    if (k == "Omega") return c.Omega.has_value();
    if (k == "E1") return c.E1.has_value();
    if (k == "E0") return c.E0.has_value();
    if (k == "Em1") return c.Em1.has_value();
    if (k == "beta_H0") return c.beta_H0.has_value();
    if (k == "beta_C0") return c.beta_C0.has_value();
    if (k == "rate_H_up") return c.rate_H_up.has_value();
    if (k == "rate_H_down") return c.rate_H_down.has_value();
    if (k == "rate_C_up") return c.rate_C_up.has_value();
    if (k == "rate_C_down") return c.rate_C_down.has_value();
    if (k == "rate_W_up") return c.rate_W_up.has_value();
    if (k == "rate_W_down") return c.rate_W_down.has_value();
    if (k == "t_final") return c.t_final.has_value();
    return false;
  };
  for (const auto& k : keys) {
    if (!has(k)) fail("missing required key '" + k + "' for scenario '" + c.scenario + "'");
  }
}

void check_nonnegative(const char* key, const std::optional<double>& v) {
  if (v && *v < 0.0) fail(std::string("config key '") + key + "' must be nonnegative");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json();
}

json bounds_json(const bounds::BoundEvaluation& be) {
  const auto& r = be.report;
  json j;
  j["bound1"] = r.bound1;
  j["bound_commutator"] = r.bound_commutator;
  j["bound2"] = r.bound2 ? json(*r.bound2) : json();
  j["delta_e_per_channel"] = r.delta_e_per_channel;
  j["channel_norms"] = r.channel_norms;
  j["measured_current_abs"] = r.measured_current_abs;
  j["saturation_ratio_1"] = optional_json(r.saturation_ratio_1);
  j["saturation_ratio_2"] = optional_json(r.saturation_ratio_2);
  j["xi_convention_note"] = r.xi_convention_note;
  if (!be.violations.empty()) j["violations"] = be.violations;
  return j;
}

json fit_json(const scaling::FitResult& f) {
  return json{{"exponent", f.exponent}, {"intercept", f.intercept}, {"r2", f.r2}};
}

struct ScenarioOutput {
  json currents = json::object();
  json bounds = json::object();
  json thermo = json::object();
  std::vector<std::string> notes;
  std::vector<std::string> problems;
};

void collect_violations(const bounds::BoundEvaluation& be, const std::string& label,
                        ScenarioOutput& out) {
  for (const auto& v : be.violations) {
    out.problems.push_back(label.empty() ? v : label + ": " + v);
  }
}


ScenarioOutput run_scenario(const RunConfig& c) {
  ScenarioOutput out;
  const std::size_t L = static_cast<std::size_t>(c.L.value());

  if (c.scenario == "mbody") {
    const auto r = scenarios::mbody_simulate(L, static_cast<std::size_t>(c.m.value()),
                                             c.gamma0.value(), c.omega_q.value(),
                                             c.g.value_or(1.0), true, c.xi_override);
    out.currents = {{"measured", r.current_measured},
                    {"closed_form", r.current_closed_form},
                    {"parallel_baseline", r.parallel_baseline},
                    {"total", r.current_measured}};
    out.bounds = bounds_json(r.bound_eval);
    collect_violations(r.bound_eval, "", out);
  } else if (c.scenario == "superradiance") {
    const auto backend =
        c.backend == "dense" ? scenarios::SrBackend::dense : scenarios::SrBackend::ladder;
    const auto r = scenarios::superradiance_simulate(L, c.gamma0.value(), c.omega_q.value(),
                                                     backend, true, c.xi_override);
    out.currents = {{"measured", r.current_measured},
                    {"closed_form", r.current_closed_form},
                    {"parallel_baseline", r.parallel_baseline},
                    {"total", r.current_measured}};
    out.bounds = bounds_json(r.bound_eval);
    collect_violations(r.bound_eval, "", out);
  } else if (c.scenario == "superabsorption") {
    const auto r = scenarios::superabsorption_bound_analysis(
        L, c.Omega.value(), c.omega_q.value(), c.gamma0.value(), c.g.value_or(1.0),
        c.xi_override);
    out.currents = {{"measured", r.absorption_current},
                    {"closed_form", r.absorption_closed_form},
                    {"total", r.absorption_current}};
    out.bounds = bounds_json(r.bound_eval);
    out.bounds["delta_e_closed_form"] = r.delta_e_closed_form;
    out.bounds["delta_e_measured"] = r.delta_e_measured;
    out.notes.push_back(r.note);
    collect_violations(r.bound_eval, "", out);
  } else if (c.scenario == "engine") {
    const auto r = scenarios::heat_engine_steady_state(
        {c.rate_H_up.value(), c.rate_H_down.value()},
        {c.rate_C_up.value(), c.rate_C_down.value()},
        {c.rate_W_up.value(), c.rate_W_down.value()}, c.omega_q.value(), L, c.xi_override);
    out.currents = {{"per_bath", {{"H", r.j_h}, {"C", r.j_c}, {"W", r.j_w}}},
                    {"total", r.j_h + r.j_c + r.j_w},
                    {"power", r.power_numeric},
                    {"power_closed_form", r.power_closed_form},
                    {"parallel_baseline", r.parallel_power_baseline}};
    for (std::size_t i = 0; i < r.per_bath_bounds.size(); ++i) {
      out.bounds[r.bath_labels[i]] = bounds_json(r.per_bath_bounds[i]);
      collect_violations(r.per_bath_bounds[i], "bath " + r.bath_labels[i], out);
    }
    out.thermo = {{"first_law_residual", r.first_law_residual},
                  {"second_law_sum", r.second_law_sum},
                  {"efficiency", optional_json(r.efficiency_numeric)},
                  {"efficiency_closed_form", optional_json(r.efficiency_closed_form)},
                  {"carnot_efficiency", optional_json(r.thermo_report.carnot_efficiency)},
                  {"delta_eta", optional_json(r.delta_eta)},
                  {"engine_regime", r.engine_regime},
                  {"steady_populations", {r.steady_populations[0], r.steady_populations[1]}},
                  {"effective_beta_H0", optional_json(r.beta_h0)},
                  {"effective_beta_C0", optional_json(r.beta_c0)},
                  {"effective_beta_W0", optional_json(r.beta_w0)}};
    if (!r.thermo_report.regime_note.empty()) out.notes.push_back(r.thermo_report.regime_note);
  } else if (c.scenario == "battery") {
    const auto r = scenarios::battery_steady_state(
        c.E1.value(), c.E0.value(), c.Em1.value(), c.beta_H0.value(), c.beta_C0.value(), L,
        c.rate_H_down.value(), c.rate_C_down.value(), c.xi_override);
    out.currents = {{"per_bath", {{"H", r.j_h}, {"C", r.j_c}}},
                    {"total", r.j_h + r.j_c}};
    for (std::size_t i = 0; i < r.per_bath_bounds.size(); ++i) {
      out.bounds[r.bath_labels[i]] = bounds_json(r.per_bath_bounds[i]);
      collect_violations(r.per_bath_bounds[i], "bath " + r.bath_labels[i], out);
    }
    out.thermo = {{"first_law_residual", r.first_law_residual},
                  {"second_law_sum", r.second_law_sum},
                  {"ergotropy", r.ergotropy_measured},
                  {"ergotropy_closed_form", r.ergotropy_closed_form},
                  {"population_inversion", r.inverted},
                  {"steady_populations",
                   {r.steady_populations[0], r.steady_populations[1], r.steady_populations[2]}},
                  {"charging_time_collective", r.charging_time_collective},
                  {"charging_time_parallel", r.charging_time_parallel},
                  {"charging_time_ratio", r.charging_time_ratio}};
    if (!r.note.empty()) out.notes.push_back(r.note);
  } else if (c.scenario == "dephasing") {
    const auto r = scenarios::dephasing_analysis(L, c.gamma0.value(), c.omega_q.value(),
                                                 c.g.value_or(1.0), c.xi_override);
    out.currents = {{"measured", r.current_measured}, {"total", r.current_measured}};
    out.bounds = bounds_json(r.bound_eval);
    collect_violations(r.bound_eval, "", out);
  } else {
    fail("unknown scenario '" + c.scenario + "'");
  }
  return out;
}

std::vector<std::size_t> to_sizes(const std::vector<long long>& ls) {
  std::vector<std::size_t> out;
  for (long long l : ls) {
    if (l < 1) fail("L_list entries must be positive");
    out.push_back(static_cast<std::size_t>(l));
  }
  return out;
}

scaling::ScalingReport run_sweep(const RunConfig& c) {
  const std::vector<std::size_t> ls = to_sizes(c.L_list);
  if (c.scenario == "mbody") {
    if (c.m.has_value()) {
      // Fixed-m family.
      const std::size_t m = static_cast<std::size_t>(*c.m);
      return scaling::sweep("mbody_fixed_m", ls, [&](std::size_t l) {
        const auto r = scenarios::mbody_simulate(l, m, c.gamma0.value(), c.omega_q.value(),
                                                 c.g.value_or(1.0), true, c.xi_override);
        scaling::ScalingSample s;
        s.num_qubits = static_cast<double>(l);
        s.value = std::abs(r.current_measured);
        s.bound1 = r.bound_eval.report.bound1;
        s.bound2 = r.bound_eval.report.bound2;
        s.parallel_baseline = r.parallel_baseline;
        return s;
      });
    }
    return scaling::sweep_mbody_full_body(ls, c.gamma0.value(), c.omega_q.value(),
                                          c.g.value_or(1.0));
  }
  if (c.scenario == "superradiance") {
    return scaling::sweep_superradiance(ls, c.gamma0.value(), c.omega_q.value());
  }
  if (c.scenario == "superabsorption") {
    return scaling::sweep_superabsorption(ls, c.Omega.value(), c.omega_q.value(),
                                          c.gamma0.value());
  }
  if (c.scenario == "engine") {
    return scaling::sweep_engine_power(ls, {c.rate_H_up.value(), c.rate_H_down.value()},
                                       {c.rate_C_up.value(), c.rate_C_down.value()},
                                       {c.rate_W_up.value(), c.rate_W_down.value()},
                                       c.omega_q.value());
  }
  if (c.scenario == "battery") {
    return scaling::sweep_battery_advantage(ls, c.E1.value(), c.E0.value(), c.Em1.value(),
                                            c.beta_H0.value(), c.beta_C0.value(),
                                            c.rate_H_down.value(), c.rate_C_down.value());
  }
  fail("sweep does not support scenario '" + c.scenario + "'");
}

std::string sweep_csv(const scaling::ScalingReport& report) {
  std::ostringstream csv;
  csv << "L,value,bound1,bound2,parallel_baseline\n";
  for (const auto& s : report.samples) {
    csv << format_double(s.num_qubits) << ',' << format_double(s.value) << ',';
    if (s.bound1) csv << format_double(*s.bound1);
    csv << ',';
    if (s.bound2) csv << format_double(*s.bound2);
    csv << ',';
    if (s.parallel_baseline) csv << format_double(*s.parallel_baseline);
    csv << '\n';
  }
  return csv.str();
}

struct EvolveOutput {
  std::string csv;
  json summary = json::object();
  std::vector<std::string> problems;
};

// Dense (or sector) master-equation trajectory with a per-sample thermo audit.
EvolveOutput evolve_master(const spectral::SystemSpec& spec, const DensityMatrix& rho0,
                           const RunConfig& c) {
  EvolveOutput out;
  master::MasterSolver solver(spec, c.freq_tol.value_or(0.0));
  const double dt = c.dt.value_or(solver.default_time_step());
  const double t_final = c.t_final.value();
  EvolveOptions options;
  if (c.positivity_tol) options.positivity_tolerance = *c.positivity_tol;
  const double total_steps = t_final / dt;
  options.record_stride = c.record_stride
                              ? static_cast<std::size_t>(*c.record_stride)
                              : std::max<std::size_t>(1, static_cast<std::size_t>(total_steps / 2000.0));
  const auto kind =
      c.engine == "redfield" ? master::EngineKind::redfield : master::EngineKind::gksl;
  const Trajectory traj = solver.evolve(rho0, dt, t_final, kind, options);

  std::vector<double> betas;
  for (const auto& bath : spec.baths) betas.push_back(bath.beta);
  const bool finite_betas =
      std::all_of(betas.begin(), betas.end(), [](double b) { return std::isfinite(b); });

  std::ostringstream csv;
  csv << "t,energy,entropy,sigma_dot,J_total";
  for (const auto& bath : spec.baths) csv << ",J_" << bath.label;
  csv << '\n';
  double min_sigma = std::numeric_limits<double>::infinity();
  for (const auto& point : traj) {
    std::vector<double> currents;
    ComplexMatrix rho_dot(spec.dim(), spec.dim());
    for (std::size_t a = 0; a < spec.baths.size(); ++a) {
      const ComplexMatrix d = solver.dissipator(a, point.state.matrix(), kind);
      currents.push_back(thermo::heat_current(spec.hamiltonian, d));
      rho_dot += d;
    }
    double j_total = 0.0;
    for (double j : currents) j_total += j;
    const double energy = expectation(spec.hamiltonian, point.state);
    const double entropy = thermo::von_neumann_entropy(point.state);
    double sigma_dot = std::numeric_limits<double>::quiet_NaN();
    if (finite_betas) {
      // The commutator part contributes nothing to dS/dt or the currents.
      sigma_dot = thermo::entropy_production_rate(point.state, rho_dot, currents, betas).sigma_dot;
      min_sigma = std::min(min_sigma, sigma_dot);
    }
    csv << format_double(point.time) << ',' << format_double(energy) << ','
        << format_double(entropy) << ',' << format_double(sigma_dot) << ','
        << format_double(j_total);
    for (double j : currents) csv << ',' << format_double(j);
    csv << '\n';
  }
  out.csv = csv.str();
  out.summary["samples"] = traj.size();
  out.summary["dt"] = dt;
  out.summary["t_final"] = t_final;
  if (finite_betas) {
    out.summary["min_sigma_dot"] = min_sigma;
    if (min_sigma < -1e-9) out.problems.push_back("entropy production rate dropped below -1e-9");
  }
  return out;
}

EvolveOutput run_evolve(const RunConfig& c) {
  const std::size_t L = static_cast<std::size_t>(c.L.value());
  using spectral::BathChannel;
  using spectral::BathSpec;
  using spectral::SpectralModel;
  using spectral::SystemSpec;

  if (c.scenario == "superradiance" && c.backend != "dense") {
    // Ladder cascade.
    EvolveOutput out;
    const auto traj = scenarios::superradiance_cascade(
        L, c.gamma0.value(), c.omega_q.value(), c.t_final.value(), c.dt.value_or(0.0),
        c.record_stride ? static_cast<std::size_t>(*c.record_stride) : 100);
    std::ostringstream csv;
    csv << "t,energy,J";
    for (std::size_t k = 0; k <= L; ++k) {
      csv << ",p_m_" << format_double(traj.front().second.magnetic_number(k));
    }
    csv << '\n';
    for (const auto& [t, ladder] : traj) {
      double energy = 0.0;
      for (std::size_t k = 0; k <= L; ++k) energy += ladder.energy(k) * ladder.populations[k];
      const double j = master::ladder_heat_current(ladder, c.gamma0.value(), 0.0);
      csv << format_double(t) << ',' << format_double(energy) << ',' << format_double(j);
      for (double p : ladder.populations) csv << ',' << format_double(p);
      csv << '\n';
    }
    EvolveOutput result;
    result.csv = csv.str();
    result.summary = {{"samples", traj.size()}, {"backend", "ladder"}};
    return result;
  }

  if (c.scenario == "mbody") {
    HermitianOperator h(c.omega_q.value() * ops::collective_j(ops::CollectiveAxis::z, L));
    HermitianOperator a =
        ops::m_body_noise(L, static_cast<std::size_t>(c.m.value()), c.g.value_or(1.0));
    SpectralModel model = SpectralModel::white_noise(c.gamma0.value(), c.g.value_or(1.0));
    if (c.xi_override) model = model.with_xi(*c.xi_override);
    SystemSpec spec(h, {BathSpec{"wn", 0.0, {BathChannel{a, model}}, {}}});
    return evolve_master(
        spec, DensityMatrix::pure(ops::dicke_state(L, 0.5 * static_cast<double>(L))), c);
  }
  if (c.scenario == "superradiance") {
    HermitianOperator h(c.omega_q.value() * ops::collective_j(ops::CollectiveAxis::z, L));
    HermitianOperator a(2.0 * ops::collective_j(ops::CollectiveAxis::x, L));
    SpectralModel model = SpectralModel::flat_zero_temperature(c.gamma0.value());
    if (c.xi_override) model = model.with_xi(*c.xi_override);
    SystemSpec spec(h, {BathSpec{"cold", std::numeric_limits<double>::infinity(),
                                 {BathChannel{a, model}}, {}}});
    return evolve_master(spec, DensityMatrix::pure(ops::dicke_state(L, 0.5)), c);
  }
  if (c.scenario == "superabsorption") {
    HermitianOperator h = scenarios::superabsorption_sector_hamiltonian(L, c.omega_q.value(),
                                                                        c.Omega.value());
    HermitianOperator a = scenarios::superradiance_sector_noise(L, c.g.value_or(1.0));
    SpectralModel model = SpectralModel::band_pass(
        c.gamma0.value(), -c.omega_q.value() - c.Omega.value(),
        -c.omega_q.value() + c.Omega.value(), c.g.value_or(1.0));
    if (c.xi_override) model = model.with_xi(*c.xi_override);
    SystemSpec spec(h, {BathSpec{"engineered", std::numeric_limits<double>::infinity(),
                                 {BathChannel{a, model}}, {}}});
    ComplexVector psi0(L + 1, cdouble{0.0, 0.0});
    psi0[(L + 1) / 2] = 1.0;
    return evolve_master(spec, DensityMatrix::pure(psi0), c);
  }
  if (c.scenario == "engine" || c.scenario == "battery") {
    // Classical rate-network trajectory.
    rate_network::RateNetwork net;
    std::vector<std::string> labels;
    std::vector<double> p0;
    if (c.scenario == "engine") {
      const auto r = scenarios::heat_engine_steady_state(
          {c.rate_H_up.value(), c.rate_H_down.value()},
          {c.rate_C_up.value(), c.rate_C_down.value()},
          {c.rate_W_up.value(), c.rate_W_down.value()}, c.omega_q.value(), L, c.xi_override);
      net = r.network;
      p0 = {0.0, 1.0};  // start from the bottom state
    } else {
      const auto r = scenarios::battery_steady_state(
          c.E1.value(), c.E0.value(), c.Em1.value(), c.beta_H0.value(), c.beta_C0.value(), L,
          c.rate_H_down.value(), c.rate_C_down.value(), c.xi_override);
      net = r.network;
      p0 = {0.0, 0.0, 1.0};  // start fully discharged, |−1⟩^⊗L
    }
    const double gap = rate_network::spectral_gap(net);
    const double dt = c.dt.value_or(1e-3 / gap);
    const auto traj = rate_network::integrate(
        net, p0, dt, c.t_final.value(),
        c.record_stride ? static_cast<std::size_t>(*c.record_stride) : 100);
    std::ostringstream csv;
    csv << "t";
    for (const auto& label : net.state_labels) csv << ",p_" << label;
    csv << ",energy\n";
    for (const auto& [t, p] : traj) {
      csv << format_double(t);
      double energy = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        csv << ',' << format_double(p[i]);
        energy += net.energies[i] * p[i];
      }
      csv << ',' << format_double(energy) << '\n';
    }
    EvolveOutput out;
    out.csv = csv.str();
    out.summary = {{"samples", traj.size()}, {"dt", dt}};
    return out;
  }
  fail("evolve does not support scenario '" + c.scenario + "'");
}

json inputs_echo(const RunConfig& c) {
  json j = json::object();
  j["scenario"] = c.scenario;
  auto put_int = [&](const char* k, const std::optional<long long>& v) {
    if (v) j[k] = *v;
  };
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
  };
  put_int("L", c.L);
  put_int("m", c.m);
  put("g", c.g);
  put("gamma0", c.gamma0);
  put("omega_q", c.omega_q);
  put("Omega", c.Omega);
  put("E1", c.E1);
  put("E0", c.E0);
  put("Em1", c.Em1);
  put("beta_H0", c.beta_H0);
  put("beta_C0", c.beta_C0);
  put("beta_W0", c.beta_W0);
  put("rate_H_up", c.rate_H_up);
  put("rate_H_down", c.rate_H_down);
  put("rate_C_up", c.rate_C_up);
  put("rate_C_down", c.rate_C_down);
  put("rate_W_up", c.rate_W_up);
  put("rate_W_down", c.rate_W_down);
  put("dt", c.dt);
  put("t_final", c.t_final);
  put("xi_override", c.xi_override);
  put("positivity_tol", c.positivity_tol);
  put("freq_tol", c.freq_tol);
  if (!c.L_list.empty()) j["L_list"] = c.L_list;
  if (!c.backend.empty()) j["backend"] = c.backend;
  if (!c.engine.empty()) j["engine"] = c.engine;
  put_int("record_stride", c.record_stride);
  return j;
}

}  // namespace

RunConfig parse_config(const std::string& config_path, const std::vector<std::string>& overrides) {
  const ConfigTree tree = load_tree(config_path, overrides);
  RunConfig c;
  bool m_tracks_l = false;

  for (const auto& [key, value] : tree.values.items()) {
    if (!kKnownKeys.count(key)) fail("unknown config key '" + key + "'");
    if (key == "scenario") {
      c.scenario = value.get<std::string>();
    } else if (key == "L") {
      c.L = as_integer(value, key);
    } else if (key == "m") {
      if (value.is_string() && value.get<std::string>() == "L") {
        m_tracks_l = true;
      } else {
        c.m = as_integer(value, key);
      }
    } else if (key == "L_list") {
      c.L_list = parse_l_list(value);
    } else if (key == "backend") {
      c.backend = value.get<std::string>();
    } else if (key == "engine") {
      c.engine = value.get<std::string>();
    } else if (key == "record_stride") {
      c.record_stride = as_integer(value, key);
    } else if (key == "out") {
      c.out_path = value.get<std::string>();
    } else if (key == "format") {
      c.format = value.get<std::string>();
    } else {
      const double d = as_double(value, key);
      if (key == "g") c.g = d;
      else if (key == "gamma0") c.gamma0 = d;
      else if (key == "omega_q") c.omega_q = d;
      else if (key == "Omega") c.Omega = d;
      else if (key == "E1") c.E1 = d;
      else if (key == "E0") c.E0 = d;
      else if (key == "Em1") c.Em1 = d;
      else if (key == "beta_H0") c.beta_H0 = d;
      else if (key == "beta_C0") c.beta_C0 = d;
      else if (key == "beta_W0") c.beta_W0 = d;
      else if (key == "rate_H_up") c.rate_H_up = d;
      else if (key == "rate_H_down") c.rate_H_down = d;
      else if (key == "rate_C_up") c.rate_C_up = d;
      else if (key == "rate_C_down") c.rate_C_down = d;
      else if (key == "rate_W_up") c.rate_W_up = d;
      else if (key == "rate_W_down") c.rate_W_down = d;
      else if (key == "dt") c.dt = d;
      else if (key == "t_final") c.t_final = d;
      else if (key == "xi_override") c.xi_override = d;
      else if (key == "positivity_tol") c.positivity_tol = d;
      else if (key == "freq_tol") c.freq_tol = d;
    }
  }
  if (m_tracks_l) c.m.reset();

  check_nonnegative("gamma0", c.gamma0);
  check_nonnegative("dt", c.dt);
  check_nonnegative("t_final", c.t_final);
  check_nonnegative("xi_override", c.xi_override);
  check_nonnegative("positivity_tol", c.positivity_tol);
  check_nonnegative("freq_tol", c.freq_tol);
  for (const auto& [name, v] :
       std::initializer_list<std::pair<const char*, std::optional<double>>>{
           {"rate_H_up", c.rate_H_up},
           {"rate_H_down", c.rate_H_down},
           {"rate_C_up", c.rate_C_up},
           {"rate_C_down", c.rate_C_down},
           {"rate_W_up", c.rate_W_up},
           {"rate_W_down", c.rate_W_down}}) {
    check_nonnegative(name, v);
  }
  if (c.format != "json" && c.format != "csv") fail("format must be 'json' or 'csv'");
  return c;
}

RunOutcome run(const RunConfig& config) {
  RunConfig c = config;
  if (c.scenario.empty()) fail("missing required key 'scenario'");

  // Per-scenario required keys.
  const std::map<std::string, std::vector<std::string>> required = {
      {"mbody", {"L", "m", "gamma0", "omega_q"}},
      {"superradiance", {"L", "gamma0", "omega_q"}},
      {"superabsorption", {"L", "Omega", "omega_q", "gamma0"}},
      {"engine",
       {"L", "omega_q", "rate_H_up", "rate_H_down", "rate_C_up", "rate_C_down", "rate_W_up",
        "rate_W_down"}},
      {"battery",
       {"L", "E1", "E0", "Em1", "beta_H0", "beta_C0", "rate_H_down", "rate_C_down"}},
      {"dephasing", {"L", "gamma0", "omega_q"}}};
  const auto it = required.find(c.scenario);
  if (it == required.end()) fail("unknown scenario '" + c.scenario + "'");

  RunOutcome outcome;
  json report;
  report["inputs"] = inputs_echo(c);
  report["notes"] = json::array();
  report["notes"].push_back(spectral::xi_convention_note());

  if (c.command == "sweep") {
    if (c.L_list.size() < 3) fail("sweep requires 'L_list' with at least three values");
    std::vector<std::string> keys = it->second;
    keys.erase(std::remove(keys.begin(), keys.end(), "L"), keys.end());
    if (c.scenario == "mbody") keys.erase(std::remove(keys.begin(), keys.end(), "m"), keys.end());
    require_keys(c, keys);

    const auto sweep_report = run_sweep(c);
    json scaling_json;
    scaling_json["scenario_id"] = sweep_report.scenario_id;
    scaling_json["fit_range"] = {sweep_report.fit_range.first, sweep_report.fit_range.second};
    scaling_json["value_fit"] = fit_json(sweep_report.value_fit);
    if (sweep_report.bound1_fit) scaling_json["bound1_fit"] = fit_json(*sweep_report.bound1_fit);
    if (sweep_report.bound2_fit) scaling_json["bound2_fit"] = fit_json(*sweep_report.bound2_fit);
    if (sweep_report.parallel_fit) {
      scaling_json["parallel_fit"] = fit_json(*sweep_report.parallel_fit);
    }
    json samples = json::array();
    for (const auto& s : sweep_report.samples) {
      samples.push_back({{"L", s.num_qubits},
                         {"value", s.value},
                         {"bound1", optional_json(s.bound1)},
                         {"bound2", optional_json(s.bound2)},
                         {"parallel_baseline", optional_json(s.parallel_baseline)}});
    }
    scaling_json["samples"] = samples;
    report["scaling"] = scaling_json;
    report["currents"] = json::object();
    report["bounds"] = json::object();
    report["thermo"] = json::object();
    outcome.csv = sweep_csv(sweep_report);
  } else if (c.command == "evolve") {
    require_keys(c, it->second);
    require_keys(c, {"t_final"});
    auto evolve_out = run_evolve(c);
    report["currents"] = json::object();
    report["bounds"] = json::object();
    report["thermo"] = evolve_out.summary;
    outcome.csv = std::move(evolve_out.csv);
    for (auto& p : evolve_out.problems) outcome.problems.push_back(std::move(p));
  } else if (c.command == "scenario" || c.command == "bounds") {
    require_keys(c, it->second);
    auto scenario_out = run_scenario(c);
    report["currents"] = scenario_out.currents;
    report["bounds"] = scenario_out.bounds;
    report["thermo"] = scenario_out.thermo;
    for (auto& n : scenario_out.notes) report["notes"].push_back(std::move(n));
    for (auto& p : scenario_out.problems) outcome.problems.push_back(std::move(p));
  } else {
    fail("unknown command '" + c.command + "'");
  }

  if (!outcome.problems.empty()) {
    report["notes"].push_back("FAILED CHECKS PRESENT");
    json problems = json::array();
    for (const auto& p : outcome.problems) problems.push_back(p);
    report["problems"] = problems;
    outcome.exit_code = 1;
  }
  outcome.report_json = report.dump(2);
  return outcome;
}

int run_and_emit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  kernels::configure_threads_from_env();
  try {
    const RunOutcome outcome = run(config);
    const bool want_csv = config.format == "csv";
    if (want_csv && outcome.csv.empty()) {
      err << "error: csv output is only available for sweep and evolve commands" << std::endl;
      return 2;
    }
    const std::string& payload = want_csv ? outcome.csv : outcome.report_json;
    if (config.out_path.empty()) {
      out << payload << std::endl;
    } else {
      std::ofstream file(config.out_path);
      if (!file) {
        err << "error: cannot open output file " << config.out_path << std::endl;
        return 2;
      }
      file << payload << std::endl;
    }
    for (const auto& p : outcome.problems) err << "check failed: " << p << std::endl;
    return outcome.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << std::endl;
    return 2;
  }
}

}  // namespace heatlab::cli
