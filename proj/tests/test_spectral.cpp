#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heatlab/operators.hpp"
#include "heatlab/spectral.hpp"

using namespace heatlab;
using spectral::SpectralModel;

TEST_CASE("flat zero temperature rates") {
  const auto model = SpectralModel::flat_zero_temperature(2.0);
  CHECK(spectral::rate(model, 1.0) == 2.0);
  CHECK(spectral::rate(model, -1.0) == 0.0);
  CHECK(spectral::rate(model, 0.0) == 0.0);
}

TEST_CASE("flat thermal rates and detailed balance") {
  const auto model = SpectralModel::flat_thermal(1.0, 2.0);
  CHECK(spectral::rate(model, -1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(spectral::rate(model, 0.0) == 1.0);

  const auto beta1 = SpectralModel::flat_thermal(1.0, 1.0);
  CHECK(spectral::rate(beta1, 3.0) / spectral::rate(beta1, -3.0) ==
        doctest::Approx(std::exp(3.0)).epsilon(1e-13));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> omega_dist(-10.0, 10.0);
  std::uniform_real_distribution<double> beta_dist(0.05, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double beta = beta_dist(rng);
    const double omega = omega_dist(rng);
    const auto m = SpectralModel::flat_thermal(0.7, beta);
    const double lhs = spectral::rate(m, omega);
    const double rhs = std::exp(beta * omega) * spectral::rate(m, -omega);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
  }
}

TEST_CASE("zero-temperature limit of the thermal model") {
  const auto zt = SpectralModel::flat_zero_temperature(1.3);
  const auto frozen = SpectralModel::flat_thermal(1.3, std::numeric_limits<double>::infinity());
  for (double omega : {-5.0, -0.3, 0.2, 1.0, 9.0}) {
    CHECK(spectral::rate(zt, omega) == spectral::rate(frozen, omega));
  }
}

TEST_CASE("band pass window") {
  const auto model = SpectralModel::band_pass(0.5, -1.2, -0.8);
  CHECK(spectral::rate(model, -1.0) == 0.5);
  CHECK(spectral::rate(model, -1.2) == 0.5);
  CHECK(spectral::rate(model, -0.7) == 0.0);
  CHECK(spectral::rate(model, 1.0) == 0.0);
  CHECK_THROWS_AS(SpectralModel::band_pass(1.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("xi defaults and overrides") {
  CHECK(spectral::xi(SpectralModel::white_noise(1.0, 1.0)) == 0.5);
  // Coupling reference rescales the bare correlation.
  CHECK(spectral::xi(SpectralModel::white_noise(1.0, 2.0)) == doctest::Approx(0.125));
  CHECK(spectral::rate(SpectralModel::white_noise(1.0, 2.0), 1.0) == doctest::Approx(0.25));

  const auto overridden = SpectralModel::white_noise(1.0).with_xi(0.3);
  CHECK(spectral::xi(overridden) == 0.3);

  // Linearity in the physical rate.
  CHECK(spectral::xi(SpectralModel::white_noise(2.0, 1.0)) ==
        2.0 * spectral::xi(SpectralModel::white_noise(1.0, 1.0)));

  CHECK_THROWS_AS(SpectralModel::white_noise(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralModel::white_noise(1.0).with_xi(-0.1), std::invalid_argument);
}

TEST_CASE("system spec validates channel dimensions") {
  HermitianOperator h(ops::collective_j(ops::CollectiveAxis::z, 2));
  HermitianOperator a_ok(ops::collective_j(ops::CollectiveAxis::x, 2));
  HermitianOperator a_bad(ops::collective_j(ops::CollectiveAxis::x, 1));
  const auto model = SpectralModel::white_noise(1.0);

  CHECK_NOTHROW(spectral::SystemSpec(
      h, {spectral::BathSpec{"b", 1.0, {spectral::BathChannel{a_ok, model}}, {}}}));
  CHECK_THROWS_AS(
      spectral::SystemSpec(
          h, {spectral::BathSpec{"b", 1.0, {spectral::BathChannel{a_bad, model}}, {}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(spectral::SystemSpec(h, {spectral::BathSpec{"empty", 1.0, {}, {}}}),
                  std::invalid_argument);
}
