#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heatlab/scaling.hpp"

using namespace heatlab;
using scaling::fit_exponent;

TEST_CASE("fit_exponent on exact power laws") {
  std::vector<std::pair<double, double>> quadratic, cubic;
  for (double l : {2.0, 3.0, 5.0, 8.0, 13.0}) {
    quadratic.emplace_back(l, l * l);
    cubic.emplace_back(l, 3.0 * l * l * l);
  }
  const auto f2 = fit_exponent(quadratic);
  CHECK(f2.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f2.r2 == doctest::Approx(1.0).epsilon(1e-12));
  const auto f3 = fit_exponent(cubic);
  CHECK(f3.exponent == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f3.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("fit_exponent finite-size correction of the quadratic") {
  std::vector<std::pair<double, double>> vals;
  for (double l = 11.0; l <= 101.0; l += 10.0) {
    vals.emplace_back(l, 0.25 * (l + 1.0) * (l + 1.0));
  }
  const auto fit = fit_exponent(vals);
  // The exact OLS value for this grid; see the superradiance acceptance note.
  CHECK(fit.exponent == doctest::Approx(1.9358).epsilon(1e-3));
  CHECK(fit.exponent < 2.0);
  CHECK(fit.r2 >= 0.999);
}

TEST_CASE("fit_exponent rejects nonpositive values naming the index") {
  std::vector<std::pair<double, double>> vals{{2.0, 4.0}, {3.0, 0.0}, {4.0, 16.0}};
  try {
    fit_exponent(vals);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
}

TEST_CASE("sweep requires three distinct L values and reports the failing L") {
  CHECK_THROWS_AS(scaling::sweep_superradiance({3, 5}, 1.0, 1.0), std::invalid_argument);
  try {
    // Even L = 4 fails inside the superradiance family.
    scaling::sweep_superradiance({3, 4, 5}, 1.0, 1.0);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("L = 4") != std::string::npos);
  }
}

TEST_CASE("m = L family scales as L^3 and saturates Bound 1") {
  const auto report = scaling::sweep_mbody_full_body({2, 3, 4, 5, 6, 7, 8}, 1.0, 1.0);
  CHECK(report.value_fit.exponent == doctest::Approx(3.0).epsilon(1e-6));
  REQUIRE(report.bound1_fit.has_value());
  CHECK(report.bound1_fit->exponent == doctest::Approx(3.0).epsilon(1e-6));
  REQUIRE(report.parallel_fit.has_value());
  CHECK(report.parallel_fit->exponent == doctest::Approx(1.0).epsilon(1e-6));
  for (const auto& s : report.samples) {
    REQUIRE(s.bound1.has_value());
    CHECK(s.value <= *s.bound1 * (1.0 + 1e-9));
    REQUIRE(s.bound2.has_value());
    CHECK(s.value <= *s.bound2 * (1.0 + 1e-9));
  }
  // Monotone consistency.
  for (std::size_t i = 1; i < report.samples.size(); ++i) {
    CHECK(report.samples[i].value > report.samples[i - 1].value);
  }
}

TEST_CASE("superradiance family: quadratic growth, bounds dominate") {
  std::vector<std::size_t> ls;
  for (std::size_t l = 11; l <= 101; l += 10) ls.push_back(l);
  const auto report = scaling::sweep_superradiance(ls, 1.0, 1.0);
  // Finite-size corrected quadratic; the asymptotic exponent is 2.
  CHECK(report.value_fit.exponent >= 1.90);
  CHECK(report.value_fit.exponent <= 2.0);
  REQUIRE(report.bound2_fit.has_value());
  CHECK(report.bound2_fit->exponent == doctest::Approx(2.0).epsilon(1e-9));
  REQUIRE(report.bound1_fit.has_value());
  CHECK(report.bound1_fit->exponent == doctest::Approx(3.0).epsilon(1e-9));
  for (const auto& s : report.samples) {
    CHECK(s.value <= *s.bound2 * (1.0 + 1e-9));
    CHECK(s.value <= *s.bound1 * (1.0 + 1e-9));
  }
  REQUIRE(report.parallel_fit.has_value());
  CHECK(report.parallel_fit->exponent == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("superabsorption family: current Theta(L^2) against a Theta(L^3) bound") {
  std::vector<std::size_t> ls;
  for (std::size_t l = 51; l <= 501; l += 50) ls.push_back(l);
  const auto report = scaling::sweep_superabsorption(ls, 0.5, 1.0, 1.0);
  CHECK(std::abs(report.value_fit.exponent - 2.0) <= 0.05);
  REQUIRE(report.bound2_fit.has_value());
  CHECK(std::abs(report.bound2_fit->exponent - 3.0) <= 0.02);
  for (const auto& s : report.samples) {
    CHECK(s.value <= *s.bound2 * (1.0 + 1e-9));
  }
}

TEST_CASE("engine family: exact cubic power scaling") {
  std::vector<std::size_t> ls;
  for (std::size_t l = 2; l <= 32; l += 3) ls.push_back(l);
  const auto report = scaling::sweep_engine_power(ls, {0.8, 0.2}, {0.1, 0.9}, {0.6, 0.4}, 1.0);
  CHECK(std::abs(report.value_fit.exponent - 3.0) <= 1e-6);
  CHECK(report.value_fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("battery family: quantum advantage slope 2") {
  std::vector<std::size_t> ls;
  for (std::size_t l = 1; l <= 16; ++l) ls.push_back(l);
  const auto report =
      scaling::sweep_battery_advantage(ls, 1.0, 2.0, 0.0, 0.5, 2.0, 1.0, 1.0);
  CHECK(std::abs(report.value_fit.exponent - 2.0) <= 0.02);
}
