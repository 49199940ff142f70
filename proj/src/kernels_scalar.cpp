#include "adacrr/kernels.hpp"

#include <cstring>

// Reference kernels. Kept free of manual unrolling so they stay an
// unambiguous oracle for the vectorized variants.

namespace adacrr::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_scalar(const double* a, std::size_t n) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void mat_vec_scalar(const double* a, std::size_t rows, std::size_t cols,
                    const double* x, double* y) noexcept {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_scalar(a + i * cols, x, cols);
}

void mat_t_vec_scalar(const double* a, std::size_t rows, std::size_t cols,
                      const double* x, double* y) noexcept {
  std::memset(y, 0, cols * sizeof(double));
  for (std::size_t i = 0; i < rows; ++i) axpy_scalar(x[i], a + i * cols, y, cols);
}

void gram_scalar(const double* a, std::size_t rows, std::size_t cols,
                 double* g) noexcept {
  std::memset(g, 0, cols * cols * sizeof(double));
  // accumulate upper triangle row by row, mirror afterwards
  for (std::size_t i = 0; i < rows; ++i) {
    const double* r = a + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      axpy_scalar(r[j], r + j, g + j * cols + j, cols - j);
    }
  }
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = 0; k < j; ++k) g[j * cols + k] = g[k * cols + j];
}

}  // namespace adacrr::kernels::detail
