#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "adacrr/linalg.hpp"
#include "adacrr/rng.hpp"

using namespace adacrr;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, RngStream& rng) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_gaussian();
  return m;
}

// test-only oracle: eigenvalues of a symmetric matrix by Jacobi rotations,
// independent of the power-iteration path it checks
std::vector<double> jacobi_eigenvalues(Matrix s) {
  const std::size_t n = s.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += s(i, j) * s(i, j);
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(s(p, q)) < 1e-300) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = s(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

TEST_CASE("least squares, identity design") {
  Matrix a = Matrix::identity(2);
  Vector w = solve_least_squares(a, {3.0, 4.0});
  CHECK(w[0] == doctest::Approx(3.0));
  CHECK(w[1] == doctest::Approx(4.0));
}

TEST_CASE("least squares, single column averages the responses") {
  Matrix a(2, 1);
  a(0, 0) = 1.0;
  a(1, 0) = 1.0;
  Vector w = solve_least_squares(a, {0.0, 2.0});
  CHECK(w[0] == doctest::Approx(1.0));
}

TEST_CASE("least squares with ridge, closed form 1x1") {
  Matrix a(1, 1);
  a(0, 0) = 1.0;
  Vector w = solve_least_squares(a, {2.0}, 1.0);
  CHECK(w[0] == doctest::Approx(1.0));  // 1*2/(1+1)
}

TEST_CASE("least squares signals rank deficiency, jitter path recovers") {
  Matrix a(3, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    a(i, 0) = static_cast<double>(i + 1);
    a(i, 1) = 2.0 * static_cast<double>(i + 1);  // collinear columns
  }
  Vector b{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(solve_least_squares(a, b), RankDeficientError);
  Vector w = solve_least_squares_jittered(a, b);
  CHECK(w.size() == 2);
  Vector r = mat_vec(a, w);
  CHECK(norm2(sub(r, b)) < 1e-3);
}

TEST_CASE("ridge makes an underdetermined system solvable") {
  Matrix a(1, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  Vector w = solve_least_squares(a, {5.0}, 0.1);
  // closed form: w = A^T (A A^T + ridge)^{-1} b-ish via the regularized normal equations
  Vector r = mat_vec(a, w);
  CHECK(r[0] == doctest::Approx(5.0).epsilon(0.05));
  CHECK(std::isfinite(w[0]));
  CHECK_THROWS_AS(solve_least_squares(a, {5.0}, 0.0), RankDeficientError);
}

TEST_CASE("normal-equation residual bound on random square systems") {
  RngStream rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 2 + rep % 7;
    Matrix a = random_matrix(n, n, rng);
    Vector b(n);
    for (auto& v : b) v = rng.next_gaussian();
    Vector w = solve_least_squares(a, b);
    Vector r = sub(b, mat_vec(a, w));
    Vector atr = mat_t_vec(a, r);
    Vector atb = mat_t_vec(a, b);
    double atr_inf = 0, atb_inf = 0, b_inf = 0, aw_minus_b = 0;
    for (double v : atr) atr_inf = std::max(atr_inf, std::abs(v));
    for (double v : atb) atb_inf = std::max(atb_inf, std::abs(v));
    for (double v : b) b_inf = std::max(b_inf, std::abs(v));
    for (double v : r) aw_minus_b = std::max(aw_minus_b, std::abs(v));
    CHECK(atr_inf <= 1e-8 * (1.0 + atb_inf));
    CHECK(aw_minus_b <= 1e-8 * b_inf);
  }
}

TEST_CASE("least squares is scale-invariant in the design") {
  RngStream rng(19);
  Matrix a = random_matrix(30, 3, rng);
  Vector b(30);
  for (auto& v : b) v = rng.next_gaussian();
  Vector w = solve_least_squares(a, b);
  Matrix a_small(30, 3);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 3; ++j) a_small(i, j) = 1e-8 * a(i, j);
  Vector w_small = solve_least_squares(a_small, b);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(w_small[j] == doctest::Approx(1e8 * w[j]).epsilon(1e-9));
}

TEST_CASE("top-k projection, stated examples") {
  CHECK(top_k_project({3, -1, 2}, 2) == Vector{3, 0, 2});
  CHECK(top_k_project({2, -2}, 1) == Vector{2, 0});  // tie -> lower index
  Vector v{0.5, -1.5, 0.25};
  CHECK(top_k_project(v, 3) == v);
  CHECK(top_k_project(v, 0) == Vector{0, 0, 0});
}

TEST_CASE("top-k projection is idempotent and L2-optimal (enumeration, p <= 6)") {
  RngStream rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t p = 2 + rep % 5;
    std::size_t k = 1 + static_cast<std::size_t>(rng.next_below(p));
    Vector v(p);
    for (auto& x : v) x = rng.next_gaussian();
    Vector proj = top_k_project(v, k);
    CHECK(top_k_project(proj, k) == proj);

    std::size_t nnz = 0;
    for (double x : proj) nnz += x != 0.0;
    CHECK(nnz <= k);

    // the best k-sparse approximation of v on support S is v restricted to S
    double best = norm2(sub(v, proj));
    for (std::size_t mask = 0; mask < (1u << p); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
      Vector u(p, 0.0);
      for (std::size_t j = 0; j < p; ++j)
        if (mask & (1u << j)) u[j] = v[j];
      CHECK(best <= norm2(sub(v, u)) + 1e-12);
    }
  }
}

TEST_CASE("spectral norm of diagonal and identity") {
  Matrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(spectral_norm_sq(d) == doctest::Approx(9.0));
  CHECK(spectral_norm_sq(Matrix::identity(5)) == doctest::Approx(1.0));
  CHECK(spectral_norm_sq(Matrix(3, 3)) == doctest::Approx(0.0));
}

TEST_CASE("spectral norm matches the Jacobi oracle and dominates Rayleigh quotients") {
  RngStream rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    std::size_t p = 2 + rep % 3;  // p <= 4
    Matrix a = random_matrix(5, p, rng);
    double lam = spectral_norm_sq(a);
    auto ev = jacobi_eigenvalues(gram(a));
    CHECK(lam == doctest::Approx(ev.back()).epsilon(1e-5));
    for (int i = 0; i < 100; ++i) {
      Vector x(p);
      for (auto& v : x) v = rng.next_gaussian();
      double num = 0;
      Vector ax = mat_vec(a, x);
      num = dot(ax, ax);
      CHECK(lam * dot(x, x) >= num * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("sigma norm") {
  CHECK(sigma_norm({3, 4}, Matrix::identity(2)) == doctest::Approx(5.0));
  Matrix s(2, 2);
  s(0, 0) = 4.0;
  s(1, 1) = 1.0;
  CHECK(sigma_norm({1, 1}, s) == doctest::Approx(std::sqrt(5.0)));
  CHECK(sigma_norm({0, 0}, s) == 0.0);
  CHECK(sigma_norm({1, 0}, Matrix::identity(2)) == norm2({1, 0}));
  Matrix neg(1, 1);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(sigma_norm({1}, neg), std::domain_error);
}
