#include <immintrin.h>

#include "coagraph/kernels.hpp"

namespace coagraph::kernels {

void axpy_avx2(double* dst, const double* src, double scale, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dst + i);
    const __m256d s = _mm256_loadu_pd(src + i);
    _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(vs, s, d));
  }
  for (; i < n; ++i) dst[i] += scale * src[i];
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double out = lane[0] + lane[1] + lane[2] + lane[3];
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double out = lane[0] + lane[1] + lane[2] + lane[3];
  for (; i < n; ++i) out += x[i];
  return out;
}

}  // namespace coagraph::kernels
