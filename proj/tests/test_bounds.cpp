#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heatlab/bounds.hpp"
#include "heatlab/master.hpp"
#include "heatlab/operators.hpp"
#include "heatlab/scenarios.hpp"
#include "heatlab/thermo.hpp"
#include "test_helpers.hpp"

using namespace heatlab;
using ops::CollectiveAxis;
using spectral::BathChannel;
using spectral::BathSpec;
using spectral::SpectralModel;
using spectral::SystemSpec;
using testing::random_diagonal_density;
using testing::random_hermitian;

namespace {

BathSpec white_noise_bath(HermitianOperator a, double gamma_phys, double g_ref) {
  return BathSpec{"wn", 0.0, {BathChannel{std::move(a), SpectralModel::white_noise(gamma_phys, g_ref)}}, {}};
}

}  // namespace

TEST_CASE("bound1 closed-form plug-ins") {
  const double omega_q = 1.3, gamma_wn = 0.8, g = 0.9;
  for (std::size_t L : {2, 4, 6}) {
    HermitianOperator h(omega_q * ops::collective_j(CollectiveAxis::z, L));
    // m = L body coupling: 4 (omega_q L / 2) (gamma/(2g^2)) (gL)^2 = gamma omega_q L^3.
    const auto a = ops::m_body_noise(L, L, g);
    const double expect = gamma_wn * omega_q * std::pow(static_cast<double>(L), 3);
    CHECK(bounds::bound1(h, white_noise_bath(a, gamma_wn, g)) ==
          doctest::Approx(expect).epsilon(1e-10));

    // Superradiance coupling has the same Bound 1 (norms agree).
    HermitianOperator a_sr(2.0 * g * ops::collective_j(CollectiveAxis::x, L));
    CHECK(bounds::bound1(h, white_noise_bath(a_sr, gamma_wn, g)) ==
          doctest::Approx(expect).epsilon(1e-10));
  }

  // A = 0 gives a zero bound.
  HermitianOperator h1(ops::collective_j(CollectiveAxis::z, 1));
  HermitianOperator zero(ComplexMatrix(2, 2));
  CHECK(bounds::bound1(h1, white_noise_bath(zero, 1.0, 1.0)) == 0.0);
}

TEST_CASE("commutator bound") {
  const double omega_q = 1.1, gamma0 = 0.7, g = 1.2;
  // Diagonal A commutes with H: the bound vanishes and so must the current.
  HermitianOperator h(omega_q * ops::collective_j(CollectiveAxis::z, 3));
  HermitianOperator diag_a(cdouble{g, 0.0} * ops::collective_j(CollectiveAxis::z, 3));
  CHECK(bounds::bound_commutator(h, white_noise_bath(diag_a, gamma0, g)) <= 1e-12);

  // Superradiance L = 2: ||[2gJx, wJz]|| = g w L, so the bound is
  // 2 Xi (g w L)(g L).
  const std::size_t L = 2;
  HermitianOperator h2(omega_q * ops::collective_j(CollectiveAxis::z, L));
  HermitianOperator a2(2.0 * g * ops::collective_j(CollectiveAxis::x, L));
  const double xi = gamma0 / (2.0 * g * g);
  const double expect = 2.0 * xi * (g * omega_q * L) * (g * L);
  CHECK(bounds::bound_commutator(h2, white_noise_bath(a2, gamma0, g)) ==
        doctest::Approx(expect).epsilon(1e-10));

  // m = L: within a factor 2 of bound1 by direct computation.
  const auto a_full = ops::m_body_noise(4, 4, g);
  HermitianOperator h4(omega_q * ops::collective_j(CollectiveAxis::z, 4));
  const auto bath = white_noise_bath(a_full, gamma0, g);
  const double b1 = bounds::bound1(h4, bath);
  const double bc = bounds::bound_commutator(h4, bath);
  CHECK(bc <= b1 * (1.0 + 1e-12));
  CHECK(bc >= 0.5 * b1);
}

TEST_CASE("delta_e examples") {
  const double omega_q = 1.0;
  // Collective coupling: Delta E = omega_q.
  HermitianOperator h(omega_q * ops::collective_j(CollectiveAxis::z, 4));
  HermitianOperator a(2.0 * ops::collective_j(CollectiveAxis::x, 4));
  const auto basis = hermitian_eig(h);
  CHECK(bounds::delta_e(a, basis).value == doctest::Approx(omega_q).epsilon(1e-12));

  // Full-body coupling: Delta E = L omega_q.
  const auto a_full = ops::m_body_noise(4, 4, 1.0);
  CHECK(bounds::delta_e(a_full, basis).value == doctest::Approx(4.0 * omega_q).epsilon(1e-12));

  // Superabsorption: omega_q + (L-1) Omega, both dense and on the sector.
  const std::size_t L = 5;
  const double Omega = 0.1;
  const ComplexMatrix jz = ops::collective_j(CollectiveAxis::z, L);
  HermitianOperator h_sa(omega_q * jz + Omega * (jz * jz));
  HermitianOperator a_sr(2.0 * ops::collective_j(CollectiveAxis::x, L));
  CHECK(bounds::delta_e(a_sr, hermitian_eig(h_sa)).value ==
        doctest::Approx(omega_q + (L - 1) * Omega).epsilon(1e-10));

  HermitianOperator h_sec = scenarios::superabsorption_sector_hamiltonian(L, omega_q, Omega);
  HermitianOperator a_sec = scenarios::superradiance_sector_noise(L);
  CHECK(bounds::delta_e(a_sec, hermitian_eig(h_sec)).value ==
        doctest::Approx(omega_q + (L - 1) * Omega).epsilon(1e-10));

  // Omega -> 0 reduces to the superradiance gap.
  HermitianOperator h_sec0 = scenarios::superabsorption_sector_hamiltonian(L, omega_q, 0.0);
  CHECK(bounds::delta_e(a_sec, hermitian_eig(h_sec0)).value ==
        doctest::Approx(omega_q).epsilon(1e-10));

  // Diagonal operator: Delta E = 0; zero operator flagged.
  HermitianOperator diag_a(ops::collective_j(CollectiveAxis::z, 4));
  CHECK(bounds::delta_e(diag_a, basis).value == 0.0);
  const auto zero_result = bounds::delta_e(HermitianOperator(ComplexMatrix(16, 16)), basis);
  CHECK(zero_result.value == 0.0);
  CHECK(zero_result.numerically_zero);
}

TEST_CASE("bound2 plug-ins") {
  const double omega_q = 1.0, gamma0 = 1.0, g = 1.0;
  // Superradiance: 2 Xi omega_q (gL)^2 = gamma0 omega_q L^2.
  for (std::size_t L : {3, 5, 9}) {
    HermitianOperator h(omega_q * ops::collective_j_sector(CollectiveAxis::z, L));
    HermitianOperator a(2.0 * ops::collective_j_sector(CollectiveAxis::x, L));
    const double expect = gamma0 * omega_q * static_cast<double>(L) * static_cast<double>(L);
    CHECK(bounds::bound2(h, white_noise_bath(a, gamma0, g)) ==
          doctest::Approx(expect).epsilon(1e-10));
  }
  // Diagonal A: zero.
  HermitianOperator h(omega_q * ops::collective_j(CollectiveAxis::z, 3));
  HermitianOperator diag_a(ops::collective_j(CollectiveAxis::z, 3));
  CHECK(bounds::bound2(h, white_noise_bath(diag_a, gamma0, g)) == 0.0);

  // Superabsorption: 2 Xi (omega_q + (L-1) Omega)(gL)^2 grows as Theta(L^3).
  const std::size_t L = 7;
  const double Omega = 0.2;
  HermitianOperator h_sec = scenarios::superabsorption_sector_hamiltonian(L, omega_q, Omega);
  HermitianOperator a_sec = scenarios::superradiance_sector_noise(L);
  const double expect =
      gamma0 * (omega_q + (L - 1) * Omega) * static_cast<double>(L) * static_cast<double>(L);
  CHECK(bounds::bound2(h_sec, white_noise_bath(a_sec, gamma0, g)) ==
        doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("commutator lemma") {
  // Superradiance L = 4: equality ||[2gJx, wJz]|| = omega_q ||A||.
  const double g = 1.0, omega_q = 1.0;
  HermitianOperator h(omega_q * ops::collective_j(CollectiveAxis::z, 4));
  HermitianOperator a(2.0 * g * ops::collective_j(CollectiveAxis::x, 4));
  const double de = bounds::delta_e(a, hermitian_eig(h)).value;
  const auto check = bounds::commutator_lemma_check(a, h, de);
  CHECK(check.ok);
  CHECK(check.commutator_norm == doctest::Approx(4.0 * g * omega_q).epsilon(1e-10));
  CHECK(std::abs(check.margin) <= 1e-9);

  // Diagonal A: 0 <= 0.
  HermitianOperator diag_a(ops::collective_j(CollectiveAxis::z, 4));
  const auto check_diag = bounds::commutator_lemma_check(diag_a, h, 0.0);
  CHECK(check_diag.ok);

  // Randomized pairs with Delta E from delta_e.
  std::mt19937_64 rng(117);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 15;
    const auto hr = random_hermitian(n, rng);
    const auto ar = random_hermitian(n, rng);
    const auto basis = hermitian_eig(hr);
    const double de_r = bounds::delta_e(ar, basis).value;
    CHECK(bounds::commutator_lemma_check(ar, hr, de_r).ok);
  }
}

TEST_CASE("check_bounds saturation ratios") {
  // m = L: ratio_1 exactly 1 under the half-delta convention.
  const auto mb = scenarios::mbody_simulate(6, 6, 0.8, 1.1);
  REQUIRE(mb.bound_eval.violations.empty());
  REQUIRE(mb.bound_eval.report.saturation_ratio_1.has_value());
  CHECK(*mb.bound_eval.report.saturation_ratio_1 == doctest::Approx(1.0).epsilon(1e-9));

  // Superradiance L = 99: ratio_2 = (L+1)^2 / (4 L^2).
  const auto sr = scenarios::superradiance_simulate(99, 1.0, 1.0);
  REQUIRE(sr.bound_eval.report.saturation_ratio_2.has_value());
  CHECK(*sr.bound_eval.report.saturation_ratio_2 ==
        doctest::Approx(100.0 * 100.0 / (4.0 * 99.0 * 99.0)).epsilon(1e-9));
  CHECK(*sr.bound_eval.report.saturation_ratio_2 == doctest::Approx(0.2551).epsilon(1e-3));

  // Zero coupling: all bounds and ratios collapse.
  HermitianOperator h(ops::collective_j(CollectiveAxis::z, 2));
  HermitianOperator zero(ComplexMatrix(4, 4));
  const auto eval = bounds::evaluate_bounds(h, white_noise_bath(zero, 1.0, 1.0), 0.0);
  CHECK(eval.report.bound1 == 0.0);
  CHECK(!eval.report.saturation_ratio_1.has_value());
  CHECK(!eval.report.saturation_ratio_2.has_value());
  CHECK(eval.violations.empty());
}

TEST_CASE("ordering chain and bound2 on randomized small systems") {
  std::mt19937_64 rng(131);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rep % 15;
    const auto h = random_hermitian(n, rng);
    const auto a = random_hermitian(n, rng);
    std::uniform_real_distribution<double> beta_dist(0.1, 2.0);
    const double beta = beta_dist(rng);
    BathSpec bath{"t", beta, {BathChannel{a, SpectralModel::flat_thermal(0.9, beta)}}, {}};
    const SystemSpec spec(h, {bath});
    master::MasterSolver solver(spec);
    const auto rho = random_diagonal_density(n, rng);
    // Diagonal in the energy basis, as the bound derivation assumes secular states.
    const ComplexMatrix rho_energy =
        solver.basis().from_energy_basis(rho.matrix());
    ComplexMatrix sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        sym(i, j) = 0.5 * (rho_energy(i, j) + std::conj(rho_energy(j, i)));
    const ComplexMatrix d = solver.dissipator(0, sym, master::EngineKind::redfield);
    const double current = std::abs(thermo::heat_current(h, d));
    const auto eval = bounds::evaluate_bounds(h, bath, current);
    CHECK(eval.violations.empty());
    REQUIRE(eval.report.bound2.has_value());
    CHECK(current <= *eval.report.bound2 * (1.0 + 1e-9) + 1e-12);
    CHECK(current <= eval.report.bound_commutator * (1.0 + 1e-9) + 1e-12);
    CHECK(eval.report.bound_commutator <= eval.report.bound1 * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("broken Xi overrides are caught") {
  const double omega_q = 1.0, gamma0 = 1.0;
  HermitianOperator h(omega_q * ops::collective_j_sector(CollectiveAxis::z, 5));
  HermitianOperator a(2.0 * ops::collective_j_sector(CollectiveAxis::x, 5));
  BathSpec bath{"broken", std::numeric_limits<double>::infinity(),
                {BathChannel{a, SpectralModel::flat_zero_temperature(gamma0).with_xi(1e-6)}},
                {}};
  const double measured = 0.25 * gamma0 * omega_q * 36.0;  // |J(0)| at L = 5
  const auto eval = bounds::evaluate_bounds(h, bath, measured);
  CHECK(!eval.violations.empty());
  CHECK_THROWS_AS(bounds::check_bounds(h, bath, measured), std::runtime_error);
}
