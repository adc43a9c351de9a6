#include "heatlab/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "heatlab/kernels.hpp"

namespace heatlab {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cdouble{0.0, 0.0}) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

cdouble ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: non-square matrix");
  cdouble t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cdouble& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw std::invalid_argument("hermiticity_defect: non-square matrix");
  double d = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool ComplexMatrix::all_finite() const {
  for (const cdouble& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void ComplexMatrix::set_zero() {
  std::fill(data_.begin(), data_.end(), cdouble{0.0, 0.0});
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data()[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data()[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scale) {
  for (cdouble& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cdouble s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, cdouble s) { return m *= s; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= cdouble{-1.0, 0.0}; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c;
  kernels::matmul(a, b, c, kernels::default_backend());
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
  ComplexVector y;
  kernels::matvec(a, x, y, kernels::default_backend());
  return y;
}

cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_product: shape mismatch");
  }
  cdouble t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const cdouble* arow = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) t += arow[k] * b(k, i);
  }
  return t;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix outer_product(const ComplexVector& u, const ComplexVector& v) {
  ComplexMatrix m(u.size(), v.size());
  kernels::rank1_accumulate(m, cdouble{1.0, 0.0}, u, v, kernels::default_backend());
  return m;
}

double vector_norm(const ComplexVector& v) {
  double s = 0.0;
  for (const cdouble& z : v) s += std::norm(z);
  return std::sqrt(s);
}

cdouble vector_dot(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector_dot: size mismatch");
  cdouble s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace heatlab
