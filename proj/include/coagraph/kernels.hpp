#ifndef COAGRAPH_KERNELS_HPP_
#define COAGRAPH_KERNELS_HPP_

#include <cstddef>

namespace coagraph::kernels {

enum class Backend { scalar, avx2 };

/// Backend picked at startup (CPU probe; COAGRAPH_NO_SIMD=1 forces scalar).
Backend active_backend();

/// Test hook; affects subsequent dispatched calls.
void force_backend(Backend backend);

// Dispatched entry points.
void axpy(double* dst, const double* src, double scale, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);

// Scalar reference kernels, always available for equivalence tests.
void axpy_scalar(double* dst, const double* src, double scale, std::size_t n);
double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* x, std::size_t n);

#if COAGRAPH_HAVE_AVX2
void axpy_avx2(double* dst, const double* src, double scale, std::size_t n);
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
#endif

}  // namespace coagraph::kernels

#endif  // COAGRAPH_KERNELS_HPP_
