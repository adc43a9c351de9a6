// kernels.hpp — Serial and OpenMP variants of the dense compute kernels.
//
// Both variants accumulate each output element in the same order, so their
// results are bit-identical; the tests rely on that.

#pragma once

#include "heatlab/matrix.hpp"

namespace heatlab::kernels {

enum class Backend { serial, openmp };

Backend default_backend();
void set_default_backend(Backend b);

// Applies the HEATLAB_THREADS cap if the variable is set; returns the number
// of threads in effect.
int configure_threads_from_env();

// c = a · b
void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
            Backend backend);
void matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
void matmul_openmp(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);

// y = a · x
void matvec(const ComplexMatrix& a, const ComplexVector& x, ComplexVector& y,
            Backend backend);
void matvec_serial(const ComplexMatrix& a, const ComplexVector& x, ComplexVector& y);
void matvec_openmp(const ComplexMatrix& a, const ComplexVector& x, ComplexVector& y);

// c += alpha · u v†
void rank1_accumulate(ComplexMatrix& c, cdouble alpha, const ComplexVector& u,
                      const ComplexVector& v, Backend backend);
void rank1_accumulate_serial(ComplexMatrix& c, cdouble alpha, const ComplexVector& u,
                             const ComplexVector& v);
void rank1_accumulate_openmp(ComplexMatrix& c, cdouble alpha, const ComplexVector& u,
                             const ComplexVector& v);

// c += alpha · a
void axpy(ComplexMatrix& c, cdouble alpha, const ComplexMatrix& a, Backend backend);
void axpy_serial(ComplexMatrix& c, cdouble alpha, const ComplexMatrix& a);
void axpy_openmp(ComplexMatrix& c, cdouble alpha, const ComplexMatrix& a);

}  // namespace heatlab::kernels
