#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace adacrr {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  double* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

  Matrix select_rows(const std::vector<std::size_t>& idx) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vector data_;
};

struct RankDeficientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vector helpers on top of the kernel layer.
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
Vector mat_vec(const Matrix& a, const Vector& x);    // A x
Vector mat_t_vec(const Matrix& a, const Vector& x);  // A^T x
Matrix gram(const Matrix& a);                        // A^T A
Vector sub(const Vector& a, const Vector& b);

// argmin_w ||Aw - b||^2 + ridge ||w||^2 via normal equations + Cholesky.
// Throws RankDeficientError when ridge == 0 and the normal matrix is not
// numerically positive definite.
Vector solve_least_squares(const Matrix& a, const Vector& b, double ridge = 0.0);

// Same, but on Cholesky failure retries once with ridge = 1e-8 tr(A^T A)/p.
Vector solve_least_squares_jittered(const Matrix& a, const Vector& b);

// Keep the k entries of largest magnitude (ties: lower index wins), zero the rest.
Vector top_k_project(const Vector& v, std::size_t k);

// lambda_max(A^T A) by power iteration: 200 iterations or relative change < 1e-9,
// deterministic start vector.
double spectral_norm_sq(const Matrix& a);

// sqrt(w^T Sigma w); quadratic form below -1e-12 reports a non-PSD input.
double sigma_norm(const Vector& w, const Matrix& sigma);

}  // namespace adacrr
