#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "adacrr/estimator.hpp"

using namespace adacrr;

namespace {

AdaCrrConfig practical_config(std::size_t T, double sigma_hat, std::uint64_t seed) {
  AdaCrrConfig cfg;
  cfg.T = T;
  cfg.schedule.mode = ScheduleMode::practical;
  cfg.schedule.sigma_hat = sigma_hat;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("fold partition: disjoint, covering, remainder to fold 0") {
  for (std::size_t n : {23u, 100u, 101u, 107u}) {
    for (std::size_t T : {1u, 4u, 9u}) {
      RngStream rng(n * 31 + T);
      auto folds = make_folds(n, T, rng);
      REQUIRE(folds.size() == T + 1);
      const std::size_t nt = n / (T + 1);
      CHECK(folds[0].size() == nt + n % (T + 1));
      std::set<std::size_t> seen;
      for (std::size_t t = 0; t <= T; ++t) {
        if (t > 0) CHECK(folds[t].size() == nt);
        for (auto i : folds[t]) {
          CHECK(i < n);
          CHECK(seen.insert(i).second);  // disjoint
        }
      }
      CHECK(seen.size() == n);  // covering
    }
  }
}

TEST_CASE("update_gd on identity design takes one exact step") {
  Matrix x = Matrix::identity(2);
  Vector w = update_gd(x, {1.0, 1.0}, {0.0, 0.0}, 1.0, 1);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(update_gd(x, {1.0, 1.0}, {0.0, 0.0}, 1.0, 0), std::invalid_argument);
}

TEST_CASE("update_gd leaves a stationary point unchanged") {
  Matrix x(3, 2);
  x(0, 0) = 1;
  x(1, 1) = 1;
  x(2, 0) = 1;
  x(2, 1) = 1;
  Vector w_star{2.0, -1.0};
  Vector y = mat_vec(x, w_star);
  Vector w = update_gd(x, y, w_star, 0.0, 5);
  CHECK(norm2(sub(w, w_star)) < 1e-12);
}

TEST_CASE("iht fixed point and dense limit") {
  Matrix x = Matrix::identity(3);
  Vector w = iht(x, {3.0, 0.0, 2.0}, 2, 0.0, 500);
  CHECK(w[0] == doctest::Approx(3.0));
  CHECK(w[1] == 0.0);
  CHECK(w[2] == doctest::Approx(2.0));

  // k = p converges to the least-squares solution on a well-conditioned design
  RngStream rng(12);
  Matrix a(60, 4);
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = rng.next_gaussian();
  Vector y(60);
  for (auto& v : y) v = rng.next_gaussian();
  Vector w_iht = iht(a, y, 4, 0.0, 5000);
  Vector w_ls = solve_least_squares(a, y);
  CHECK(norm2(sub(w_iht, w_ls)) < 1e-6);

  Vector w0 = iht(a, Vector(60, 0.0), 2, 0.0, 100);
  CHECK(norm2(w0) == 0.0);
}

TEST_CASE("estimate_d0_ols: zero residual and frozen closed form") {
  Matrix x(20, 2);
  for (std::size_t i = 0; i < 20; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = static_cast<double>(i);
  }
  Vector w{1.0, 2.0};
  Vector y = mat_vec(x, w);
  CHECK(estimate_d0_ols(x, y, w) == 0.0);

  // p=4, n=10000, ||r|| = 100: d0 = 2 (1 + 4 sqrt(4 ln 1e4 / 1e4)) * (2/1e4) * 100
  const std::size_t n = 10000, p = 4;
  Matrix x0(n, p);
  Vector y0(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x0(i, i % p) = 1.0;
  y0[0] = 100.0;  // w0 = 0 leaves residual norm exactly 100
  Vector w0(p, 0.0);
  const double c = 4.0 * std::sqrt(4.0 * std::log(1e4) / 1e4);
  const double want = 2.0 * (1.0 + c) * (2.0 / 1e4) * 100.0;
  CHECK(estimate_d0_ols(x0, y0, w0) == doctest::Approx(want).epsilon(1e-12));

  Matrix fat(3, 5);
  CHECK_THROWS_AS(estimate_d0_ols(fat, Vector(3, 0.0), Vector(5, 0.0)), std::invalid_argument);
}

TEST_CASE("estimate_d0_ols brackets the initial error on clean data") {
  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    Vector w_star = gen_sparse_truth(10, 10, 900 + s);
    auto [data, truth] = gen_dataset(5000, 10, w_star, SigmaSpec::identity(),
                                     NoiseSpec::gaussian(1.0), CorruptionSpec::none(), 900 + s);
    Vector w0 = solve_least_squares(data.x, data.y);
    double d0 = estimate_d0_ols(data.x, data.y, w0);
    double err = sigma_norm(sub(w0, truth.w_star), truth.sigma);
    const double c = 4.0 * std::sqrt(10.0 * std::log(5000.0) / 5000.0);
    hits += err <= d0 && d0 <= 4.0 * (1.0 + 2.0 * c) * err;
  }
  CHECK(hits >= 4);
}

TEST_CASE("estimate_d0_signal: projection identities and consistency") {
  Matrix x(4, 1, 1.0);
  CHECK(estimate_d0_signal(x, {1.0, 1.0, 1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(estimate_d0_signal(x, {1.0, -1.0, 1.0, -1.0}) == doctest::Approx(0.0));

  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Vector w_star = gen_sparse_truth(5, 5, 70 + s);
    for (auto& v : w_star) v /= std::sqrt(5.0);  // ||w*||_Sigma = 1
    auto [data, truth] = gen_dataset(10000, 5, w_star, SigmaSpec::identity(),
                                     NoiseSpec::gaussian(0.1), CorruptionSpec::none(), 70 + s);
    double d0 = estimate_d0_signal(data.x, data.y);
    hits += d0 >= 0.9 && d0 <= 1.1;
  }
  CHECK(hits >= 18);
}

TEST_CASE("clean full-rank recovery in one fully corrective pass") {
  Vector w_star = gen_sparse_truth(5, 5, 1);
  auto [data, truth] = gen_dataset(200, 5, w_star, SigmaSpec::identity(), NoiseSpec::none(),
                                   CorruptionSpec::none(), 1);
  AdaCrrConfig cfg = practical_config(1, 0.01, 3);
  FitResult fit = adacrr_fit(data, cfg, &truth);
  CHECK(fit.w_trace.size() == 2);
  CHECK(fit.set_sizes.size() == 1);
  CHECK(norm2(sub(fit.w_final, w_star)) < 1e-8);
  CHECK(fit.errors_sigma_norm.size() == 2);
  for (double e : fit.errors_sigma_norm) CHECK(e < 1e-8);  // every iterate, w0 included

  AdaCrrConfig longer = practical_config(4, 0.01, 3);
  FitResult fit4 = adacrr_fit(data, longer, &truth);
  for (double e : fit4.errors_sigma_norm) CHECK(e < 1e-8);
}

TEST_CASE("fits are bit-reproducible for a fixed seed") {
  Vector w_star = gen_sparse_truth(4, 4, 5);
  auto [data, truth] = gen_dataset(300, 4, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(1.0), CorruptionSpec::uniform(0.3, 0, 50), 5);
  AdaCrrConfig cfg = practical_config(4, 2.0, 11);
  FitResult a = adacrr_fit(data, cfg);
  FitResult b = adacrr_fit(data, cfg);
  REQUIRE(a.w_trace.size() == b.w_trace.size());
  for (std::size_t t = 0; t < a.w_trace.size(); ++t) CHECK(a.w_trace[t] == b.w_trace[t]);
  CHECK(a.set_sizes == b.set_sizes);
}

TEST_CASE("trace-level scale equivariance: doubling y doubles every iterate") {
  Vector w_star = gen_sparse_truth(4, 4, 6);
  auto [data, truth] = gen_dataset(400, 4, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(1.0), CorruptionSpec::uniform(0.4, 0, 20), 6);
  AdaCrrConfig cfg = practical_config(5, 2.0, 13);
  cfg.d0.source = D0Source::estimate_ols;  // rescales with y automatically
  FitResult base = adacrr_fit(data, cfg);

  Dataset doubled = data;
  for (auto& v : doubled.y) v *= 2.0;
  AdaCrrConfig cfg2 = cfg;
  cfg2.schedule.sigma_hat *= 2.0;
  FitResult twice = adacrr_fit(doubled, cfg2);

  REQUIRE(base.w_trace.size() == twice.w_trace.size());
  CHECK(base.set_sizes == twice.set_sizes);
  for (std::size_t t = 0; t < base.w_trace.size(); ++t) {
    for (std::size_t j = 0; j < base.w_trace[t].size(); ++j) {
      CHECK(twice.w_trace[t][j] == doctest::Approx(2.0 * base.w_trace[t][j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("gradient-descent update path converges on a corrupted instance") {
  Vector w_star = gen_sparse_truth(3, 3, 33);
  auto [data, truth] = gen_dataset(1500, 3, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(1.0), CorruptionSpec::uniform(0.3, 20, 60),
                                   33);
  AdaCrrConfig cfg = practical_config(80, 2.0, 10);
  cfg.schedule.beta = 0.9;
  cfg.update = UpdateSpec::gradient_descent(0.0, 5);
  cfg.reuse_all_data = true;
  FitResult gd = adacrr_fit(data, cfg, &truth);
  Vector w_ols = solve_least_squares(data.x, data.y);
  CHECK(gd.errors_sigma_norm.back() < 0.2);
  CHECK(gd.errors_sigma_norm.back() < sigma_norm(sub(w_ols, w_star), truth.sigma));
}

TEST_CASE("fully corrective inner solve can run as a few warm-started gradient steps") {
  Vector w_star = gen_sparse_truth(3, 3, 44);
  auto [data, truth] = gen_dataset(900, 3, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(0.5), CorruptionSpec::uniform(0.25, 10, 40),
                                   44);
  AdaCrrConfig exact = practical_config(40, 1.0, 21);
  exact.schedule.beta = 0.9;
  exact.reuse_all_data = true;
  AdaCrrConfig approx = exact;
  approx.fc_gd_steps = 5;
  FitResult fe = adacrr_fit(data, exact, &truth);
  FitResult fa = adacrr_fit(data, approx, &truth);
  CHECK(fa.errors_sigma_norm.back() < 0.2);
  CHECK(std::abs(fa.errors_sigma_norm.back() - fe.errors_sigma_norm.back()) < 0.15);
}

TEST_CASE("sparse update keeps every iterate k-sparse") {
  Vector w_star = gen_sparse_truth(60, 4, 21);
  auto [data, truth] = gen_dataset(600, 60, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(0.5), CorruptionSpec::uniform(0.3, 0, 30), 21);
  AdaCrrConfig cfg = practical_config(3, 1.0, 9);
  cfg.update = UpdateSpec::sparse_iht(10, 200);
  cfg.d0 = D0Spec::given(sigma_norm(w_star, truth.sigma));
  FitResult fit = adacrr_fit(data, cfg, &truth);
  for (std::size_t t = 1; t < fit.w_trace.size(); ++t) {
    std::size_t nnz = 0;
    for (double v : fit.w_trace[t]) nnz += v != 0.0;
    CHECK(nnz <= 10);
  }
}

TEST_CASE("sparse update demands an explicit d0") {
  Vector w_star = gen_sparse_truth(20, 3, 2);
  auto [data, truth] = gen_dataset(200, 20, w_star, SigmaSpec::identity(), NoiseSpec::none(),
                                   CorruptionSpec::none(), 2);
  AdaCrrConfig cfg = practical_config(2, 1.0, 1);
  cfg.update = UpdateSpec::sparse_iht(5);
  cfg.d0 = D0Spec::estimate_ols();
  CHECK_THROWS_AS(adacrr_fit(data, cfg), std::invalid_argument);
}

TEST_CASE("an empty selection carries the iterate forward and is flagged") {
  Vector w_star = gen_sparse_truth(2, 2, 66);
  auto [data, truth] = gen_dataset(60, 2, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(1.0), CorruptionSpec::none(), 66);
  AdaCrrConfig cfg;
  cfg.T = 1;
  cfg.reuse_all_data = true;
  cfg.schedule.sigma_hat = 1e-9;  // interval far below the residual scale
  cfg.d0 = D0Spec::given(0.0);
  cfg.seed = 2;
  FitResult fit = adacrr_fit(data, cfg);
  CHECK(fit.set_sizes == std::vector<std::size_t>{0});
  CHECK(fit.flagged_iterations == std::vector<std::size_t>{1});
  CHECK(fit.w_trace[1] == fit.w_trace[0]);
}

TEST_CASE("fold preconditions") {
  Vector w_star = gen_sparse_truth(10, 10, 3);
  auto [data, truth] = gen_dataset(50, 10, w_star, SigmaSpec::identity(), NoiseSpec::none(),
                                   CorruptionSpec::none(), 3);
  AdaCrrConfig cfg = practical_config(10, 1.0, 1);  // needs 11 folds of >= 10 rows
  CHECK_THROWS_AS(adacrr_fit(data, cfg), std::invalid_argument);
  cfg.reuse_all_data = true;  // no splitting, 50 rows suffice
  CHECK_NOTHROW(adacrr_fit(data, cfg));
}

TEST_CASE("theoretical schedule runs end to end and recovers a clean instance") {
  Vector w_star = gen_sparse_truth(4, 4, 55);
  auto [data, truth] = gen_dataset(2000, 4, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(0.1), CorruptionSpec::none(), 55);
  AdaCrrConfig cfg;
  cfg.T = 5;
  cfg.schedule.mode = ScheduleMode::theoretical;
  cfg.schedule.sigma_hat = 0.2;
  cfg.schedule.beta = 0.5;
  cfg.gamma = 2.0 * std::log(2000.0 / 6.0) / std::log(std::log(2000.0 / 6.0));
  cfg.seed = 3;
  FitResult fit = adacrr_fit(data, cfg, &truth);
  CHECK(fit.set_sizes.size() == 5);
  for (auto s : fit.set_sizes) CHECK(s > 0);
  CHECK(fit.errors_sigma_norm.back() < 0.1);
}

TEST_CASE("heavy_fit recovers exactly under zero noise") {
  Vector w_star = gen_sparse_truth(6, 6, 8);
  auto [data, truth] = gen_dataset(600, 6, w_star, SigmaSpec::identity(), NoiseSpec::none(),
                                   CorruptionSpec::none(), 8);
  AdaCrrConfig cfg;
  cfg.T = 3;
  cfg.schedule.mode = ScheduleMode::heavy_tailed;
  cfg.schedule.rho = 0.3;
  cfg.seed = 4;
  FitResult fit = heavy_fit(data, cfg, &truth);
  CHECK(norm2(sub(fit.w_final, w_star)) < 1e-6);

  cfg.schedule.mode = ScheduleMode::practical;
  CHECK_THROWS_AS(heavy_fit(data, cfg), std::invalid_argument);
}

TEST_CASE("heavy and practical paths coincide when schedules produce equal intervals") {
  // practical: 3 sqrt(2) sigma_hat (constant when d0 = 0)
  // heavy:     18 rho / sqrt(8)   (constant when d0 = 0)
  const double rho = 0.4;
  const double sigma_hat = 18.0 * rho / (std::sqrt(8.0) * 3.0 * std::sqrt(2.0));
  ScheduleSpec prac{ScheduleMode::practical, sigma_hat, 0.0, 0.5, 0.0};
  ScheduleSpec heavy{ScheduleMode::heavy_tailed, 0.0, 0.0, 0.5, rho};
  CHECK(interval_length(1, prac, 50) == doctest::Approx(interval_length(1, heavy, 50)));

  Vector w_star = gen_sparse_truth(3, 3, 14);
  auto [data, truth] = gen_dataset(240, 3, w_star, SigmaSpec::identity(),
                                   NoiseSpec::gaussian(0.1), CorruptionSpec::none(), 14);
  AdaCrrConfig c1;
  c1.T = 3;
  c1.schedule = prac;
  c1.d0 = D0Spec::given(0.0);
  c1.seed = 77;
  AdaCrrConfig c2 = c1;
  c2.schedule = heavy;
  FitResult f1 = adacrr_fit(data, c1);
  FitResult f2 = heavy_fit(data, c2);
  for (std::size_t t = 0; t < f1.w_trace.size(); ++t) {
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(f1.w_trace[t][j] == doctest::Approx(f2.w_trace[t][j]).epsilon(1e-12));
  }
  CHECK(f1.set_sizes == f2.set_sizes);
}

TEST_CASE("heavy mode beats least squares under cauchy noise") {
  AdaCrrConfig cfg;
  cfg.T = 120;
  cfg.schedule.mode = ScheduleMode::heavy_tailed;
  cfg.schedule.rho = 0.3;
  cfg.schedule.beta = 0.9;
  cfg.reuse_all_data = true;
  std::size_t wins = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    Vector w_star = gen_sparse_truth(10, 10, 6000 + s);
    auto [data, truth] = gen_dataset(16000, 10, w_star, SigmaSpec::identity(),
                                     NoiseSpec::cauchy(1.0), CorruptionSpec::none(), 6000 + s);
    cfg.seed = s;
    Vector w_heavy = heavy_fit(data, cfg).w_final;
    Vector w_ols = solve_least_squares(data.x, data.y);
    wins += norm2(sub(w_heavy, w_star)) < norm2(sub(w_ols, w_star));
  }
  CHECK(wins >= 4);
}

TEST_CASE("mean estimation: exact on constant observations") {
  const std::size_t n = 64, p = 3;
  Matrix obs(n, p);
  Vector mu{1.5, -2.0, 0.25};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) obs(i, j) = mu[j];
  AdaCrrConfig cfg;
  cfg.T = 3;
  cfg.schedule.mode = ScheduleMode::heavy_tailed;
  cfg.schedule.rho = 0.3;
  cfg.seed = 5;
  Vector est = mean_estimate_symmetrized(obs, cfg);
  for (std::size_t j = 0; j < p; ++j) CHECK(est[j] == doctest::Approx(mu[j]).epsilon(1e-9));
}

TEST_CASE("mean estimation: gaussian accuracy and sign equivariance") {
  const std::size_t n = 10000, p = 3;
  Vector mu{1.0, 0.0, -1.0};
  AdaCrrConfig cfg;
  cfg.T = 30;
  cfg.reuse_all_data = true;
  cfg.schedule.mode = ScheduleMode::heavy_tailed;
  cfg.schedule.rho = 0.3;
  cfg.schedule.beta = 0.9;

  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    RngStream noise = RngStream::derive(400 + s, 9);
    Matrix obs(n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) obs(i, j) = mu[j] + noise.next_gaussian();
    cfg.seed = s;
    Vector est = mean_estimate_symmetrized(obs, cfg);
    double inf = 0;
    for (std::size_t j = 0; j < p; ++j) inf = std::max(inf, std::abs(est[j] - mu[j]));
    hits += inf <= 0.1;

    if (s == 0) {
      Matrix negated(n, p);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) negated(i, j) = -obs(i, j);
      Vector est_neg = mean_estimate_symmetrized(negated, cfg);
      for (std::size_t j = 0; j < p; ++j)
        CHECK(est_neg[j] == doctest::Approx(-est[j]).epsilon(1e-12));
    }
  }
  CHECK(hits >= 4);
}
