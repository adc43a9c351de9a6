// Kernel benchmark: serial reference vs OpenMP variants of the dense kernels.
// Outputs one line per (kernel, size) with timings, speedup, and a bitwise
// equality check between the two backends.

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "heatlab/kernels.hpp"

namespace {

using heatlab::cdouble;
using heatlab::ComplexMatrix;
using heatlab::ComplexVector;

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cdouble{gauss(rng), gauss(rng)};
  return m;
}

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(cdouble)) == 0;
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
  const int threads = heatlab::kernels::configure_threads_from_env();
  std::cout << "threads: " << threads << "\n";
  std::mt19937_64 rng(20240517);

  std::cout << "kernel,n,serial_s,openmp_s,speedup,gflops_openmp,bitwise_match\n";
  for (std::size_t n : {64, 128, 256, 512, 1024}) {
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix b = random_matrix(n, rng);
    ComplexMatrix c_serial, c_omp;
    const int reps = n <= 256 ? 5 : 3;
    const double ts = time_best_of(reps, [&] { heatlab::kernels::matmul_serial(a, b, c_serial); });
    const double tp = time_best_of(reps, [&] { heatlab::kernels::matmul_openmp(a, b, c_omp); });
    // 8 real flops per complex multiply-add.
    const double gflops = 8.0 * static_cast<double>(n) * n * n / tp / 1e9;
    std::cout << "matmul," << n << ',' << ts << ',' << tp << ',' << ts / tp << ',' << gflops
              << ',' << (bitwise_equal(c_serial, c_omp) ? "yes" : "NO") << "\n";
  }

  for (std::size_t dim : {1024, 2048}) {
    const ComplexMatrix a = random_matrix(dim, rng);
    ComplexVector x(dim);
    std::normal_distribution<double> gauss;
    for (auto& v : x) v = cdouble{gauss(rng), gauss(rng)};
    ComplexVector y_serial, y_omp;
    const double ts =
        time_best_of(10, [&] { heatlab::kernels::matvec_serial(a, x, y_serial); });
    const double tp = time_best_of(10, [&] { heatlab::kernels::matvec_openmp(a, x, y_omp); });
    const bool match = y_serial.size() == y_omp.size() &&
                       std::memcmp(y_serial.data(), y_omp.data(),
                                   y_serial.size() * sizeof(cdouble)) == 0;
    const double gflops = 8.0 * static_cast<double>(dim) * dim / tp / 1e9;
    std::cout << "matvec," << dim << ',' << ts << ',' << tp << ',' << ts / tp << ',' << gflops
              << ',' << (match ? "yes" : "NO") << "\n";
  }
  return 0;
}
