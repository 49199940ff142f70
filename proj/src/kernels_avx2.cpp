#include "adacrr/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>

// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma;
// nothing here runs unless the dispatcher verified CPU support.

namespace adacrr::kernels::detail {

namespace {

inline double hsum(__m256d v) noexcept {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double dot_avx2(const double* a, const double* b, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_avx2(const double* a, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d v0 = _mm256_loadu_pd(a + i);
    __m256d v1 = _mm256_loadu_pd(a + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(a + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) noexcept {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yy = _mm256_loadu_pd(y + i);
    yy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), yy);
    _mm256_storeu_pd(y + i, yy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void mat_vec_avx2(const double* a, std::size_t rows, std::size_t cols,
                  const double* x, double* y) noexcept {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_avx2(a + i * cols, x, cols);
}

void mat_t_vec_avx2(const double* a, std::size_t rows, std::size_t cols,
                    const double* x, double* y) noexcept {
  std::memset(y, 0, cols * sizeof(double));
  for (std::size_t i = 0; i < rows; ++i) axpy_avx2(x[i], a + i * cols, y, cols);
}

void gram_avx2(const double* a, std::size_t rows, std::size_t cols,
               double* g) noexcept {
  std::memset(g, 0, cols * cols * sizeof(double));
  for (std::size_t i = 0; i < rows; ++i) {
    const double* r = a + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      axpy_avx2(r[j], r + j, g + j * cols + j, cols - j);
    }
  }
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = 0; k < j; ++k) g[j * cols + k] = g[k * cols + j];
}

}  // namespace adacrr::kernels::detail

#endif  // x86_64
