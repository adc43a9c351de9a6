#include "heatlab/operators.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heatlab::ops {

namespace {

std::size_t dim_of(std::size_t num_qubits) {
  if (num_qubits == 0) throw std::invalid_argument("need at least one qubit");
  if (num_qubits > 12) {
    throw std::invalid_argument(
        "dense operator constructors are limited to 12 qubits; use the sector builders above that");
  }
  return std::size_t{1} << num_qubits;
}

// Site s (1-based, site 1 = MSB) maps to bit L−s. Bit value 0 = excited.
std::size_t site_mask(std::size_t site, std::size_t num_qubits) {
  if (site < 1 || site > num_qubits) throw std::invalid_argument("pauli: site out of range");
  return std::size_t{1} << (num_qubits - site);
}

int popcount(std::size_t v) { return std::popcount(v); }

// Number of ground qubits for a ladder index m, validating m against L.
std::size_t ground_count(std::size_t num_qubits, double m) {
  const double l_total = 0.5 * static_cast<double>(num_qubits);
  const double k = l_total - m;
  const double k_rounded = std::round(k);
  if (std::abs(k - k_rounded) > 1e-9 || k_rounded < 0.0 ||
      k_rounded > static_cast<double>(num_qubits)) {
    std::ostringstream msg;
    msg << "invalid magnetic quantum number m = " << m << " for L = " << num_qubits;
    throw std::invalid_argument(msg.str());
  }
  return static_cast<std::size_t>(k_rounded);
}

}  // namespace

unsigned long long binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (n > 62) throw std::overflow_error("binomial: n > 62 overflows uint64");
  k = std::min(k, n - k);
  unsigned long long c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // Exact at every step: c is divisible by i after the multiply.
    c = c * (n - k + i) / i;
  }
  return c;
}

HermitianOperator pauli(PauliAxis axis, std::size_t site, std::size_t num_qubits) {
  const std::size_t dim = dim_of(num_qubits);
  const std::size_t mask = site_mask(site, num_qubits);
  ComplexMatrix m(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const bool ground = (b & mask) != 0;
    switch (axis) {
      case PauliAxis::z:
        m(b, b) = ground ? -1.0 : 1.0;
        break;
      case PauliAxis::x:
        m(b ^ mask, b) = 1.0;
        break;
      case PauliAxis::y:
        // ⟨e|σ_y|g⟩ = −i, ⟨g|σ_y|e⟩ = +i
        m(b ^ mask, b) = ground ? cdouble{0.0, -1.0} : cdouble{0.0, 1.0};
        break;
    }
  }
  return HermitianOperator(std::move(m));
}

ComplexMatrix collective_j(CollectiveAxis axis, std::size_t num_qubits) {
  const std::size_t L = num_qubits;
  const std::size_t dim = dim_of(L);
  ComplexMatrix m(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    switch (axis) {
      case CollectiveAxis::z:
        m(b, b) = 0.5 * static_cast<double>(static_cast<long long>(L) - 2 * popcount(b));
        break;
      case CollectiveAxis::x:
        for (std::size_t s = 0; s < L; ++s) m(b ^ (std::size_t{1} << s), b) += 0.5;
        break;
      case CollectiveAxis::y:
        for (std::size_t s = 0; s < L; ++s) {
          const std::size_t mask = std::size_t{1} << s;
          m(b ^ mask, b) += (b & mask) ? cdouble{0.0, -0.5} : cdouble{0.0, 0.5};
        }
        break;
      case CollectiveAxis::plus:
        // σ_+ = |e⟩⟨g| flips a set (ground) bit to 0.
        for (std::size_t s = 0; s < L; ++s) {
          const std::size_t mask = std::size_t{1} << s;
          if (b & mask) m(b ^ mask, b) += 1.0;
        }
        break;
      case CollectiveAxis::minus:
        for (std::size_t s = 0; s < L; ++s) {
          const std::size_t mask = std::size_t{1} << s;
          if (!(b & mask)) m(b ^ mask, b) += 1.0;
        }
        break;
    }
  }
  return m;
}

ComplexMatrix collective_j_sector(CollectiveAxis axis, std::size_t num_qubits) {
  const std::size_t L = num_qubits;
  if (L == 0) throw std::invalid_argument("need at least one qubit");
  const std::size_t n = L + 1;
  ComplexMatrix m(n, n);
  auto m_of = [&](std::size_t k) { return 0.5 * static_cast<double>(L) - static_cast<double>(k); };
  for (std::size_t k = 0; k < n; ++k) {
    const double mk = m_of(k);
    switch (axis) {
      case CollectiveAxis::z:
        m(k, k) = mk;
        break;
      case CollectiveAxis::plus:
        if (k >= 1) m(k - 1, k) = ladder_coefficient(L, mk, Ladder::plus);
        break;
      case CollectiveAxis::minus:
        if (k + 1 < n) m(k + 1, k) = ladder_coefficient(L, mk, Ladder::minus);
        break;
      case CollectiveAxis::x:
        if (k >= 1) m(k - 1, k) += 0.5 * ladder_coefficient(L, mk, Ladder::plus);
        if (k + 1 < n) m(k + 1, k) += 0.5 * ladder_coefficient(L, mk, Ladder::minus);
        break;
      case CollectiveAxis::y:
        if (k >= 1) m(k - 1, k) += cdouble{0.0, -0.5} * ladder_coefficient(L, mk, Ladder::plus);
        if (k + 1 < n) m(k + 1, k) += cdouble{0.0, 0.5} * ladder_coefficient(L, mk, Ladder::minus);
        break;
    }
  }
  return m;
}

ComplexVector dicke_state(std::size_t num_qubits, double m) {
  const std::size_t dim = dim_of(num_qubits);
  const std::size_t k = ground_count(num_qubits, m);
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(num_qubits, k)));
  ComplexVector v(dim, cdouble{0.0, 0.0});
  for (std::size_t b = 0; b < dim; ++b) {
    if (static_cast<std::size_t>(popcount(b)) == k) v[b] = amp;
  }
  return v;
}

double ladder_coefficient(std::size_t num_qubits, double m, Ladder sign) {
  const double l = 0.5 * static_cast<double>(num_qubits);
  ground_count(num_qubits, m);  // validates m
  const double s = (sign == Ladder::plus) ? 1.0 : -1.0;
  return std::sqrt((l - s * m) * (l + s * m + 1.0));
}

HermitianOperator m_body_noise(std::size_t num_qubits, std::size_t m, double g,
                               std::size_t max_qubits) {
  if (num_qubits > max_qubits) {
    std::ostringstream msg;
    msg << "m_body_noise: L = " << num_qubits << " exceeds dense limit " << max_qubits;
    throw std::invalid_argument(msg.str());
  }
  if (m < 1 || m > num_qubits) throw std::invalid_argument("m_body_noise: need 1 <= m <= L");
  const std::size_t dim = dim_of(num_qubits);
  const double coeff = g * static_cast<double>(num_qubits) /
                       static_cast<double>(binomial(num_qubits, m));
  ComplexMatrix a(dim, dim);
  // Each σ_x string over an m-site subset flips exactly those m bits, so the
  // (i,j) entry is coeff precisely when i and j differ in m bits.
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (static_cast<std::size_t>(popcount(i ^ j)) == m) a(i, j) = coeff;
    }
  }
  return HermitianOperator(std::move(a));
}

BatteryOperators battery_operators(double e1, double e0, double em1) {
  if (!(em1 < e1 && e1 < e0)) {
    throw std::invalid_argument("battery_operators: requires E_-1 < E_1 < E_0");
  }
  ComplexMatrix h(3, 3);
  h(0, 0) = e1;
  h(1, 1) = e0;
  h(2, 2) = em1;
  ComplexMatrix sp(3, 3);
  sp(0, 1) = 1.0;
  sp(1, 0) = 1.0;
  ComplexMatrix sm(3, 3);
  sm(1, 2) = 1.0;
  sm(2, 1) = 1.0;
  return BatteryOperators{HermitianOperator(std::move(h)), HermitianOperator(std::move(sp)),
                          HermitianOperator(std::move(sm))};
}

}  // namespace heatlab::ops
