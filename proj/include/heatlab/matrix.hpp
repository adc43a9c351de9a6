// matrix.hpp — Dense row-major complex matrices and small vector helpers.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace heatlab {

using cdouble = std::complex<double>;
using ComplexVector = std::vector<cdouble>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  cdouble operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cdouble* data() { return data_.data(); }
  const cdouble* data() const { return data_.data(); }
  cdouble* row(std::size_t i) { return data_.data() + i * cols_; }
  const cdouble* row(std::size_t i) const { return data_.data() + i * cols_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cdouble trace() const;
  double max_abs() const;
  // max_ij |m_ij - conj(m_ji)|
  double hermiticity_defect() const;
  bool all_finite() const;
  void set_zero();

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cdouble scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cdouble s);
ComplexMatrix operator-(ComplexMatrix m);

// Dense products; dispatch to the kernel backend selected at startup.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x);

// Tr(a b) without forming the product.
cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// u v† as a dense matrix.
ComplexMatrix outer_product(const ComplexVector& u, const ComplexVector& v);

double vector_norm(const ComplexVector& v);
// ⟨a|b⟩ with the left argument conjugated.
cdouble vector_dot(const ComplexVector& a, const ComplexVector& b);

}  // namespace heatlab
