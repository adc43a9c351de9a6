#include "heatlab/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heatlab::kernels {

namespace {

Backend g_backend =
#ifdef _OPENMP
    Backend::openmp;
#else
    Backend::serial;
#endif

void require_matmul_shapes(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
}

// Shared inner body: accumulate row i of c += a(i,k) * b(k,:) over all k.
// The k-order is fixed, so serial and OpenMP results match bit for bit.
inline void matmul_row(const ComplexMatrix& a, const ComplexMatrix& b,
                       ComplexMatrix& c, std::size_t i) {
  const std::size_t kk = a.cols();
  const std::size_t m = b.cols();
  cdouble* crow = c.row(i);
  const cdouble* arow = a.row(i);
  for (std::size_t k = 0; k < kk; ++k) {
    const double ar = arow[k].real();
    const double ai = arow[k].imag();
    const cdouble* brow = b.row(k);
#pragma omp simd
    for (std::size_t j = 0; j < m; ++j) {
      const double br = brow[j].real();
      const double bi = brow[j].imag();
      crow[j] += cdouble{ar * br - ai * bi, ar * bi + ai * br};
    }
  }
}

inline void matvec_row(const ComplexMatrix& a, const ComplexVector& x,
                       ComplexVector& y, std::size_t i) {
  const cdouble* arow = a.row(i);
  double sr = 0.0, si = 0.0;
  const std::size_t n = a.cols();
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = arow[j].real(), ai = arow[j].imag();
    const double xr = x[j].real(), xi = x[j].imag();
    sr += ar * xr - ai * xi;
    si += ar * xi + ai * xr;
  }
  y[i] = cdouble{sr, si};
}

inline void rank1_row(ComplexMatrix& c, cdouble alpha, const ComplexVector& u,
                      const ComplexVector& v, std::size_t i) {
  const cdouble ui = alpha * u[i];
  const double ur = ui.real(), uim = ui.imag();
  cdouble* crow = c.row(i);
  const std::size_t m = v.size();
#pragma omp simd
  for (std::size_t j = 0; j < m; ++j) {
    const double vr = v[j].real(), vi = -v[j].imag();  // conj(v_j)
    crow[j] += cdouble{ur * vr - uim * vi, ur * vi + uim * vr};
  }
}

}  // namespace

Backend default_backend() { return g_backend; }
void set_default_backend(Backend b) { g_backend = b; }

int configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("HEATLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  require_matmul_shapes(a, b);
  c = ComplexMatrix(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
}

void matmul_openmp(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  require_matmul_shapes(a, b);
  c = ComplexMatrix(a.rows(), b.cols());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    matmul_row(a, b, c, static_cast<std::size_t>(i));
  }
}

// Below these sizes the parallel-region overhead dominates; the dispatchers
// fall back to the serial body (bit-identical results either way).
constexpr std::size_t kMatmulParallelFlops = 64 * 64 * 64;
constexpr std::size_t kElementwiseParallelSize = 64 * 64;

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
            Backend backend) {
  const bool parallel = backend == Backend::openmp &&
                        a.rows() * a.cols() * b.cols() >= kMatmulParallelFlops;
  parallel ? matmul_openmp(a, b, c) : matmul_serial(a, b, c);
}

void matvec_serial(const ComplexMatrix& a, const ComplexVector& x, ComplexVector& y) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  y.assign(a.rows(), cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i) matvec_row(a, x, y, i);
}

void matvec_openmp(const ComplexMatrix& a, const ComplexVector& x, ComplexVector& y) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  y.assign(a.rows(), cdouble{0.0, 0.0});
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    matvec_row(a, x, y, static_cast<std::size_t>(i));
  }
}

void matvec(const ComplexMatrix& a, const ComplexVector& x, ComplexVector& y,
            Backend backend) {
  const bool parallel =
      backend == Backend::openmp && a.size() >= kElementwiseParallelSize;
  parallel ? matvec_openmp(a, x, y) : matvec_serial(a, x, y);
}

void rank1_accumulate_serial(ComplexMatrix& c, cdouble alpha, const ComplexVector& u,
                             const ComplexVector& v) {
  if (c.rows() != u.size() || c.cols() != v.size()) {
    throw std::invalid_argument("rank1_accumulate: dimension mismatch");
  }
  for (std::size_t i = 0; i < u.size(); ++i) rank1_row(c, alpha, u, v, i);
}

void rank1_accumulate_openmp(ComplexMatrix& c, cdouble alpha, const ComplexVector& u,
                             const ComplexVector& v) {
  if (c.rows() != u.size() || c.cols() != v.size()) {
    throw std::invalid_argument("rank1_accumulate: dimension mismatch");
  }
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    rank1_row(c, alpha, u, v, static_cast<std::size_t>(i));
  }
}

void rank1_accumulate(ComplexMatrix& c, cdouble alpha, const ComplexVector& u,
                      const ComplexVector& v, Backend backend) {
  const bool parallel =
      backend == Backend::openmp && c.size() >= kElementwiseParallelSize;
  parallel ? rank1_accumulate_openmp(c, alpha, u, v) : rank1_accumulate_serial(c, alpha, u, v);
}

void axpy_serial(ComplexMatrix& c, cdouble alpha, const ComplexMatrix& a) {
  if (c.rows() != a.rows() || c.cols() != a.cols()) {
    throw std::invalid_argument("axpy: shape mismatch");
  }
  cdouble* cd = c.data();
  const cdouble* ad = a.data();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) cd[i] += alpha * ad[i];
}

void axpy_openmp(ComplexMatrix& c, cdouble alpha, const ComplexMatrix& a) {
  if (c.rows() != a.rows() || c.cols() != a.cols()) {
    throw std::invalid_argument("axpy: shape mismatch");
  }
  cdouble* cd = c.data();
  const cdouble* ad = a.data();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) cd[i] += alpha * ad[i];
}

void axpy(ComplexMatrix& c, cdouble alpha, const ComplexMatrix& a, Backend backend) {
  const bool parallel =
      backend == Backend::openmp && c.size() >= kElementwiseParallelSize;
  parallel ? axpy_openmp(c, alpha, a) : axpy_serial(c, alpha, a);
}

}  // namespace heatlab::kernels
