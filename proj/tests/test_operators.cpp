#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heatlab/operators.hpp"
#include "test_helpers.hpp"

using namespace heatlab;
using ops::CollectiveAxis;
using ops::Ladder;
using ops::PauliAxis;
using testing::max_abs_diff;

TEST_CASE("pauli embedding and site convention") {
  const auto sz = ops::pauli(PauliAxis::z, 1, 1);
  CHECK(sz.matrix()(0, 0) == cdouble{1.0, 0.0});
  CHECK(sz.matrix()(1, 1) == cdouble{-1.0, 0.0});

  // pauli(x, 2, 2) = I ⊗ σ_x: site 2 is the least significant qubit.
  const auto sx2 = ops::pauli(PauliAxis::x, 2, 2);
  ComplexMatrix expect(4, 4);
  expect(0, 1) = expect(1, 0) = expect(2, 3) = expect(3, 2) = 1.0;
  CHECK(max_abs_diff(sx2.matrix(), expect) == 0.0);

  // Disjoint sites commute.
  const auto sx1 = ops::pauli(PauliAxis::x, 1, 2);
  CHECK(commutator(sx1.matrix(), sx2.matrix()).max_abs() == 0.0);

  CHECK_THROWS_AS(ops::pauli(PauliAxis::x, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(ops::pauli(PauliAxis::x, 0, 2), std::invalid_argument);
}

TEST_CASE("pauli y is hermitian with the usual algebra") {
  const auto sy = ops::pauli(PauliAxis::y, 1, 1);
  const auto sx = ops::pauli(PauliAxis::x, 1, 1);
  const auto sz = ops::pauli(PauliAxis::z, 1, 1);
  // [σ_x, σ_y] = 2i σ_z
  const ComplexMatrix lhs = commutator(sx.matrix(), sy.matrix());
  const ComplexMatrix rhs = cdouble{0.0, 2.0} * sz.matrix();
  CHECK(max_abs_diff(lhs, rhs) <= 1e-14);
}

TEST_CASE("collective operators") {
  const ComplexMatrix jz1 = ops::collective_j(CollectiveAxis::z, 1);
  CHECK(jz1(0, 0) == cdouble{0.5, 0.0});
  CHECK(jz1(1, 1) == cdouble{-0.5, 0.0});

  for (std::size_t L : {2, 3, 4}) {
    const double g = 0.7;
    const ComplexMatrix a = cdouble{2.0 * g, 0.0} * ops::collective_j(CollectiveAxis::x, L);
    CHECK(operator_norm(a) ==
          doctest::Approx(g * static_cast<double>(L)).epsilon(1e-12));
  }

  // su(2): [J_z, J_+] = J_+
  for (std::size_t L : {1, 2, 3}) {
    const ComplexMatrix jz = ops::collective_j(CollectiveAxis::z, L);
    const ComplexMatrix jp = ops::collective_j(CollectiveAxis::plus, L);
    CHECK(max_abs_diff(commutator(jz, jp), jp) <= 1e-12);
    const ComplexMatrix jm = ops::collective_j(CollectiveAxis::minus, L);
    CHECK(max_abs_diff(jm, jp.adjoint()) == 0.0);
  }

  // Collective ops assembled from single-site paulis.
  const std::size_t L = 3;
  ComplexMatrix sum(8, 8);
  for (std::size_t site = 1; site <= L; ++site) {
    sum += ops::pauli(PauliAxis::y, site, L).matrix();
  }
  sum *= cdouble{0.5, 0.0};
  CHECK(max_abs_diff(sum, ops::collective_j(CollectiveAxis::y, L)) <= 1e-14);
}

TEST_CASE("dicke states") {
  const auto top = ops::dicke_state(2, 1.0);
  CHECK(top[0] == cdouble{1.0, 0.0});  // |ee⟩ is index 0
  CHECK(vector_norm(top) == doctest::Approx(1.0).epsilon(1e-14));

  const auto sym = ops::dicke_state(2, 0.0);
  CHECK(std::abs(sym[1] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(sym[2] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(sym[0]) == 0.0);
  CHECK(std::abs(sym[3]) == 0.0);

  // J_- |3/2⟩ = sqrt(3) |1/2⟩ for L = 3.
  const auto top3 = ops::dicke_state(3, 1.5);
  const auto lowered = ops::collective_j(CollectiveAxis::minus, 3) * top3;
  const auto expect = ops::dicke_state(3, 0.5);
  const double c = ops::ladder_coefficient(3, 1.5, Ladder::minus);
  CHECK(c == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    CHECK(std::abs(lowered[i] - c * expect[i]) <= 1e-12);
  }

  CHECK_THROWS_AS(ops::dicke_state(2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ops::dicke_state(2, 2.0), std::invalid_argument);
}

TEST_CASE("dicke states are J² and J_z eigenvectors") {
  for (std::size_t L : {2, 3, 5}) {
    const ComplexMatrix jx = ops::collective_j(CollectiveAxis::x, L);
    const ComplexMatrix jy = ops::collective_j(CollectiveAxis::y, L);
    const ComplexMatrix jz = ops::collective_j(CollectiveAxis::z, L);
    const ComplexMatrix j2 = jx * jx + jy * jy + jz * jz;
    const double l = 0.5 * static_cast<double>(L);
    for (double m = -l; m <= l + 0.1; m += 1.0) {
      const auto v = ops::dicke_state(L, m);
      const auto j2v = j2 * v;
      const auto jzv = jz * v;
      for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(std::abs(j2v[i] - l * (l + 1.0) * v[i]) <= 1e-10);
        CHECK(std::abs(jzv[i] - m * v[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("ladder coefficients") {
  CHECK(ops::ladder_coefficient(4, 2.0, Ladder::plus) == 0.0);
  CHECK(ops::ladder_coefficient(7, 3.5, Ladder::plus) == 0.0);
  CHECK(ops::ladder_coefficient(3, 0.5, Ladder::minus) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ops::ladder_coefficient(1, 0.5, Ladder::minus) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(ops::ladder_coefficient(3, 2.5, Ladder::plus), std::invalid_argument);
}

TEST_CASE("m-body noise operator") {
  const auto a11 = ops::m_body_noise(1, 1, 1.0);
  CHECK(max_abs_diff(a11.matrix(), ops::pauli(PauliAxis::x, 1, 1).matrix()) == 0.0);

  // L=2, m=1 reduces to the collective coupling 2 J_x.
  const auto a21 = ops::m_body_noise(2, 1, 1.0);
  const ComplexMatrix expect = cdouble{2.0, 0.0} * ops::collective_j(CollectiveAxis::x, 2);
  CHECK(max_abs_diff(a21.matrix(), expect) == 0.0);

  // L=3, m=3, g=2: 6 σ_x⊗σ_x⊗σ_x with norm 6.
  const auto a33 = ops::m_body_noise(3, 3, 2.0);
  CHECK(a33.matrix()(0, 7) == cdouble{6.0, 0.0});
  CHECK(a33.matrix()(3, 4) == cdouble{6.0, 0.0});
  CHECK(a33.matrix()(0, 3) == cdouble{0.0, 0.0});
  CHECK(operator_norm(a33.matrix()) == doctest::Approx(6.0).epsilon(1e-12));

  CHECK_THROWS_AS(ops::m_body_noise(3, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ops::m_body_noise(3, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ops::m_body_noise(13, 2, 1.0), std::invalid_argument);
}

TEST_CASE("m-body norm is gL and the top state maps down m rungs") {
  const double g = 1.3;
  for (std::size_t L = 1; L <= 7; ++L) {
    for (std::size_t m = 1; m <= L; ++m) {
      const auto a = ops::m_body_noise(L, m, g);
      CHECK(operator_norm(a.matrix()) ==
            doctest::Approx(g * static_cast<double>(L)).epsilon(1e-9));

      // Â |L/2⟩ = (gL/√C(L,m)) |L/2 − m⟩
      const auto top = ops::dicke_state(L, 0.5 * static_cast<double>(L));
      const auto mapped = a.matrix() * top;
      const auto target = ops::dicke_state(L, 0.5 * static_cast<double>(L) -
                                                  static_cast<double>(m));
      const double coeff = g * static_cast<double>(L) /
                           std::sqrt(static_cast<double>(ops::binomial(L, m)));
      for (std::size_t i = 0; i < mapped.size(); ++i) {
        CHECK(std::abs(mapped[i] - coeff * target[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("battery operators") {
  const auto batt = ops::battery_operators(1.0, 2.0, 0.0);
  CHECK(batt.h_single.matrix()(0, 0) == cdouble{1.0, 0.0});
  CHECK(batt.h_single.matrix()(1, 1) == cdouble{2.0, 0.0});
  CHECK(batt.h_single.matrix()(2, 2) == cdouble{0.0, 0.0});

  // σ_{+x}² acts as identity on span{|1⟩, |0⟩}.
  const ComplexMatrix sq = batt.sigma_plus_x.matrix() * batt.sigma_plus_x.matrix();
  CHECK(sq(0, 0) == cdouble{1.0, 0.0});
  CHECK(sq(1, 1) == cdouble{1.0, 0.0});
  CHECK(sq(2, 2) == cdouble{0.0, 0.0});

  // ⟨−1|σ_{+x}|0⟩ = 0: channel selectivity.
  CHECK(batt.sigma_plus_x.matrix()(2, 1) == cdouble{0.0, 0.0});
  CHECK(batt.sigma_minus_x.matrix()(2, 1) == cdouble{1.0, 0.0});

  CHECK_THROWS_AS(ops::battery_operators(2.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ops::battery_operators(0.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("sector operators mirror the collective algebra") {
  for (std::size_t L : {1, 2, 5, 8}) {
    const ComplexMatrix jz = ops::collective_j_sector(CollectiveAxis::z, L);
    const ComplexMatrix jp = ops::collective_j_sector(CollectiveAxis::plus, L);
    const ComplexMatrix jm = ops::collective_j_sector(CollectiveAxis::minus, L);
    CHECK(max_abs_diff(commutator(jz, jp), jp) <= 1e-12);
    CHECK(max_abs_diff(jm, jp.adjoint()) == 0.0);
    const ComplexMatrix jx = ops::collective_j_sector(CollectiveAxis::x, L);
    CHECK(operator_norm(cdouble{2.0, 0.0} * jx) ==
          doctest::Approx(static_cast<double>(L)).epsilon(1e-12));
  }
}

TEST_CASE("binomial is exact") {
  CHECK(ops::binomial(10, 5) == 252ULL);
  CHECK(ops::binomial(60, 30) == 118264581564861424ULL);
  CHECK(ops::binomial(5, 7) == 0ULL);
  CHECK_THROWS_AS(ops::binomial(70, 35), std::overflow_error);
}
