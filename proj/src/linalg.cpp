#include "adacrr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adacrr/kernels.hpp"

namespace adacrr {

namespace {

// In-place lower Cholesky of a symmetric positive definite matrix.
// Returns false on a non-positive (or negligible) pivot.
bool cholesky(Matrix& g) {
  const std::size_t p = g.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < p; ++i) max_diag = std::max(max_diag, std::abs(g(i, i)));
  const double tiny = max_diag * 1e-14;  // relative pivot floor, scale-invariant
  for (std::size_t j = 0; j < p; ++j) {
    double d = g(j, j) - kernels::sum_sq(g.row(j), j);
    if (!(d > tiny)) return false;
    d = std::sqrt(d);
    g(j, j) = d;
    for (std::size_t i = j + 1; i < p; ++i) {
      g(i, j) = (g(i, j) - kernels::dot(g.row(i), g.row(j), j)) / d;
    }
  }
  return true;
}

// Solve L L^T x = b given the factor from cholesky().
Vector cholesky_solve(const Matrix& l, const Vector& b) {
  const std::size_t p = l.rows();
  Vector x(b);
  for (std::size_t i = 0; i < p; ++i) {
    x[i] = (x[i] - kernels::dot(l.row(i), x.data(), i)) / l(i, i);
  }
  for (std::size_t ii = p; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < p; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

}  // namespace

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double* src = row(idx[i]);
    std::copy(src, src + cols_, out.row(i));
  }
  return out;
}

double dot(const Vector& a, const Vector& b) {
  return kernels::dot(a.data(), b.data(), std::min(a.size(), b.size()));
}

double norm2(const Vector& a) { return std::sqrt(kernels::sum_sq(a.data(), a.size())); }

Vector mat_vec(const Matrix& a, const Vector& x) {
  Vector y(a.rows());
  kernels::mat_vec(a.data(), a.rows(), a.cols(), x.data(), y.data());
  return y;
}

Vector mat_t_vec(const Matrix& a, const Vector& x) {
  Vector y(a.cols());
  kernels::mat_t_vec(a.data(), a.rows(), a.cols(), x.data(), y.data());
  return y;
}

Matrix gram(const Matrix& a) {
  Matrix g(a.cols(), a.cols());
  kernels::gram(a.data(), a.rows(), a.cols(), g.data());
  return g;
}

Vector sub(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector solve_least_squares(const Matrix& a, const Vector& b, double ridge) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("empty system");
  if (a.rows() != b.size()) throw std::invalid_argument("dimension mismatch");
  if (ridge < 0.0) throw std::invalid_argument("ridge must be >= 0");
  const std::size_t p = a.cols();
  Matrix g = gram(a);
  for (std::size_t i = 0; i < p; ++i) g(i, i) += ridge;
  Vector rhs = mat_t_vec(a, b);

  Matrix l = g;
  if (!cholesky(l)) throw RankDeficientError("normal matrix not positive definite");
  Vector w = cholesky_solve(l, rhs);

  // one refinement pass on the normal equations
  Vector gw = mat_vec(g, w);
  Vector resid(p);
  for (std::size_t i = 0; i < p; ++i) resid[i] = rhs[i] - gw[i];
  Vector dw = cholesky_solve(l, resid);
  for (std::size_t i = 0; i < p; ++i) w[i] += dw[i];
  return w;
}

Vector solve_least_squares_jittered(const Matrix& a, const Vector& b) {
  try {
    return solve_least_squares(a, b, 0.0);
  } catch (const RankDeficientError&) {
    Matrix g = gram(a);
    double tr = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) tr += g(i, i);
    return solve_least_squares(a, b, 1e-8 * tr / static_cast<double>(a.cols()));
  }
}

Vector top_k_project(const Vector& v, std::size_t k) {
  const std::size_t p = v.size();
  if (k > p) throw std::invalid_argument("k exceeds dimension");
  if (k == p) return v;
  Vector out(p, 0.0);
  if (k == 0) return out;
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  auto larger = [&v](std::size_t i, std::size_t j) {
    double ai = std::abs(v[i]), aj = std::abs(v[j]);
    return ai != aj ? ai > aj : i < j;
  };
  std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(), larger);
  for (std::size_t i = 0; i < k; ++i) out[idx[i]] = v[idx[i]];
  return out;
}

double spectral_norm_sq(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("empty matrix");
  const std::size_t p = a.cols();
  // deterministic pseudo-random start (splitmix64 on the index)
  Vector v(p);
  std::uint64_t s = 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(p) << 32 | a.rows());
  for (std::size_t i = 0; i < p; ++i) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    v[i] = 0.5 + static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
  }
  double nv = norm2(v);
  for (auto& x : v) x /= nv;

  double lambda = 0.0;
  Vector u(a.rows()), w(p);
  for (int it = 0; it < 200; ++it) {
    kernels::mat_vec(a.data(), a.rows(), a.cols(), v.data(), u.data());
    kernels::mat_t_vec(a.data(), a.rows(), a.cols(), u.data(), w.data());
    double next = kernels::dot(v.data(), w.data(), p);  // Rayleigh quotient, ||v|| = 1
    double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < p; ++i) v[i] = w[i] / nw;
    if (it > 0 && std::abs(next - lambda) <= 1e-9 * std::max(next, 1e-300)) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

double sigma_norm(const Vector& w, const Matrix& sigma) {
  if (sigma.rows() != w.size() || sigma.cols() != w.size())
    throw std::invalid_argument("sigma dimension mismatch");
  Vector sw = mat_vec(sigma, w);
  double q = dot(w, sw);
  if (q < -1e-12) throw std::domain_error("sigma is not positive semidefinite");
  return std::sqrt(std::max(q, 0.0));
}

}  // namespace adacrr
