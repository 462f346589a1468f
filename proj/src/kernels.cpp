#include "coagraph/kernels.hpp"

#include <cstdlib>

namespace coagraph::kernels {

void axpy_scalar(double* dst, const double* src, double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += scale * src[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

namespace {

Backend pick_backend() {
  const char* off = std::getenv("COAGRAPH_NO_SIMD");
  if (off && off[0] != '\0' && off[0] != '0') return Backend::scalar;
#if COAGRAPH_HAVE_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
#endif
  return Backend::scalar;
}

Backend g_backend = pick_backend();

}  // namespace

Backend active_backend() { return g_backend; }

void force_backend(Backend backend) {
#if !COAGRAPH_HAVE_AVX2
  backend = Backend::scalar;
#endif
  g_backend = backend;
}

void axpy(double* dst, const double* src, double scale, std::size_t n) {
#if COAGRAPH_HAVE_AVX2
  if (g_backend == Backend::avx2) return axpy_avx2(dst, src, scale, n);
#endif
  axpy_scalar(dst, src, scale, n);
}

double dot(const double* a, const double* b, std::size_t n) {
#if COAGRAPH_HAVE_AVX2
  if (g_backend == Backend::avx2) return dot_avx2(a, b, n);
#endif
  return dot_scalar(a, b, n);
}

double sum(const double* x, std::size_t n) {
#if COAGRAPH_HAVE_AVX2
  if (g_backend == Backend::avx2) return sum_avx2(x, n);
#endif
  return sum_scalar(x, n);
}

}  // namespace coagraph::kernels
