#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adacrr/adaht.hpp"
#include "adacrr/datagen.hpp"
#include "adacrr/linalg.hpp"

namespace adacrr {

enum class UpdateKind { fully_corrective, gradient_descent, sparse_iht };

struct UpdateSpec {
  UpdateKind kind = UpdateKind::fully_corrective;
  double eta = 0.0;          // <= 0 means auto
  std::size_t steps = 1;     // gradient_descent
  std::size_t k = 0;         // sparse_iht target sparsity
  std::size_t iht_iters = 300;

  static UpdateSpec fully_corrective() { return {}; }
  static UpdateSpec gradient_descent(double eta, std::size_t steps) {
    return {UpdateKind::gradient_descent, eta, steps, 0, 300};
  }
  static UpdateSpec sparse_iht(std::size_t k, std::size_t iht_iters = 300, double eta = 0.0) {
    return {UpdateKind::sparse_iht, eta, 1, k, iht_iters};
  }
};

enum class D0Source { given, estimate_ols, estimate_signal };

struct D0Spec {
  D0Source source = D0Source::estimate_ols;
  double value = 0.0;

  static D0Spec given(double v) { return {D0Source::given, v}; }
  static D0Spec estimate_ols() { return {D0Source::estimate_ols, 0.0}; }
  static D0Spec estimate_signal() { return {D0Source::estimate_signal, 0.0}; }
};

struct AdaCrrConfig {
  std::size_t T = 10;
  UpdateSpec update;
  double a = 1.0 / 18.0;
  double gamma = 4.0;
  ScheduleSpec schedule;
  D0Spec d0;
  std::uint64_t seed = 0;
  // Algorithm-faithful runs split the data into T+1 folds and consume one per
  // iteration; setting this reuses the full dataset every iteration instead.
  bool reuse_all_data = false;
  // Fully corrective inner solve: 0 = exact least squares, otherwise that many
  // warm-started gradient steps.
  std::size_t fc_gd_steps = 0;
};

struct FitResult {
  Vector w_final;
  std::vector<Vector> w_trace;          // length T+1, includes w0
  std::vector<std::size_t> set_sizes;   // length T
  std::vector<double> errors_sigma_norm;  // per trace entry, when truth given
  std::vector<std::size_t> flagged_iterations;  // iterations with empty S_t
  std::size_t iterations = 0;
  double wall_time_ms = 0.0;
};

/// Seeded shuffle of [0, n) split into T+1 folds of floor(n/(T+1)) rows,
/// remainder assigned to fold 0.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t T, RngStream& rng);

FitResult adacrr_fit(const Dataset& data, const AdaCrrConfig& config,
                     const GroundTruth* truth = nullptr);

/// adacrr_fit with the heavy-tailed schedule; requires schedule.mode ==
/// heavy_tailed and rho > 0.
FitResult heavy_fit(const Dataset& data, const AdaCrrConfig& config,
                    const GroundTruth* truth = nullptr);

/// Apply w <- w - eta X^T(Xw - y) `steps` times. eta <= 0 uses
/// 1/lambda_max(X^T X).
Vector update_gd(const Matrix& x, const Vector& y, const Vector& w_prev, double eta,
                 std::size_t steps);

/// Iterative hard thresholding from w = 0: gradient step followed by top-k
/// projection until `iters` or ||dw|| < 1e-9. eta <= 0 uses
/// 2/(3 lambda_max(X^T X)).
Vector iht(const Matrix& x, const Vector& y, std::size_t k, double eta, std::size_t iters);

/// Initial-error scale from the fold-0 OLS residual:
///   d0 = 2 (1 + c) sqrt(p)/n ||y - X w0||,  c = 4 sqrt(p ln n / n).
double estimate_d0_ols(const Matrix& x0, const Vector& y0, const Vector& w0);

/// Signal-strength estimate sqrt(max(0, (||y||^2 - ||y - X w_ols||^2)/n)),
/// for fits started at w0 = 0.
double estimate_d0_signal(const Matrix& x0, const Vector& y0);

/// Coordinate-wise heavy-tailed mean estimation by sign symmetrization:
/// flip a random half of the samples, regress s_i * Y_i(j) on s_i.
Vector mean_estimate_symmetrized(const Matrix& observations, const AdaCrrConfig& config);

}  // namespace adacrr
