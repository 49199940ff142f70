#include "adacrr/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace adacrr {

namespace {

constexpr std::uint64_t kShuffleStream = 0x51ull;
constexpr std::uint64_t kAdahtStream = 0x52ull;
constexpr std::uint64_t kMeanSignStream = 0x53ull;

std::size_t effective_dim(const AdaCrrConfig& cfg, std::size_t p) {
  return cfg.update.kind == UpdateKind::sparse_iht ? cfg.update.k : p;
}

void validate(const AdaCrrConfig& cfg, const Dataset& data) {
  if (cfg.T < 1) throw std::invalid_argument("T must be >= 1");
  if (cfg.a < 0.0 || cfg.a > 0.1) throw std::invalid_argument("a must lie in (0, 0.1]");
  if (!(cfg.gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  if (cfg.update.kind == UpdateKind::sparse_iht) {
    if (cfg.update.k == 0) throw std::invalid_argument("sparse update needs k >= 1");
    if (cfg.update.k > data.p()) throw std::invalid_argument("k exceeds dimension");
    if (cfg.d0.source != D0Source::given)
      throw std::invalid_argument("sparse update requires a given d0_hat");
  }
  if (cfg.update.kind == UpdateKind::gradient_descent && cfg.update.steps < 1)
    throw std::invalid_argument("gradient descent needs steps >= 1");
  if (cfg.schedule.mode == ScheduleMode::heavy_tailed && !(cfg.schedule.rho > 0.0))
    throw std::invalid_argument("heavy-tailed schedule needs rho > 0");
  if (!(cfg.schedule.beta > 0.0) || !(cfg.schedule.beta < 1.0))
    throw std::invalid_argument("beta must lie in (0,1)");

  const std::size_t p_eff = std::max<std::size_t>(effective_dim(cfg, data.p()), 2);
  if (cfg.reuse_all_data) {
    if (data.n() < p_eff) throw std::invalid_argument("dataset too small");
  } else if (data.n() < (cfg.T + 1) * p_eff) {
    throw std::invalid_argument("dataset too small for T+1 folds");
  }
}

// Exact normal-equations solve with the ridge fallbacks the iteration needs:
// thin subsets get ridge 1e-6 tr(G)/p up front, rank-deficient solves retry
// with jitter.
Vector fc_solve(const Matrix& xs, const Vector& ys) {
  if (xs.rows() >= xs.cols()) return solve_least_squares_jittered(xs, ys);
  Matrix g = gram(xs);
  double tr = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) tr += g(i, i);
  return solve_least_squares(xs, ys, 1e-6 * tr / static_cast<double>(xs.cols()));
}

}  // namespace

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t T, RngStream& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  const std::size_t n_tilde = n / (T + 1);
  const std::size_t fold0 = n_tilde + n % (T + 1);
  std::vector<std::vector<std::size_t>> folds(T + 1);
  std::size_t pos = 0;
  for (std::size_t t = 0; t <= T; ++t) {
    const std::size_t len = t == 0 ? fold0 : n_tilde;
    folds[t].assign(perm.begin() + pos, perm.begin() + pos + len);
    pos += len;
  }
  return folds;
}

Vector update_gd(const Matrix& x, const Vector& y, const Vector& w_prev, double eta,
                 std::size_t steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (eta <= 0.0) {
    double l = spectral_norm_sq(x);
    eta = l > 0.0 ? 1.0 / l : 1.0;
  }
  Vector w = w_prev;
  for (std::size_t s = 0; s < steps; ++s) {
    Vector r = mat_vec(x, w);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    Vector grad = mat_t_vec(x, r);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= eta * grad[j];
  }
  return w;
}

Vector iht(const Matrix& x, const Vector& y, std::size_t k, double eta, std::size_t iters) {
  if (k > x.cols()) throw std::invalid_argument("k exceeds dimension");
  if (iters < 1) throw std::invalid_argument("iters must be >= 1");
  if (eta <= 0.0) {
    double l = spectral_norm_sq(x);
    eta = l > 0.0 ? 2.0 / (3.0 * l) : 1.0;
  }
  Vector w(x.cols(), 0.0);
  for (std::size_t it = 0; it < iters; ++it) {
    Vector r = mat_vec(x, w);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    Vector grad = mat_t_vec(x, r);
    Vector wt = w;
    for (std::size_t j = 0; j < wt.size(); ++j) wt[j] -= eta * grad[j];
    Vector wn = top_k_project(wt, k);
    double delta = 0.0;
    for (std::size_t j = 0; j < wn.size(); ++j) {
      double d = wn[j] - w[j];
      delta += d * d;
    }
    w = std::move(wn);
    if (std::sqrt(delta) < 1e-9) break;
  }
  return w;
}

double estimate_d0_ols(const Matrix& x0, const Vector& y0, const Vector& w0) {
  const double n = static_cast<double>(x0.rows());
  const double p = static_cast<double>(x0.cols());
  if (x0.rows() <= x0.cols()) throw std::invalid_argument("d0 estimate needs n > p");
  Vector r = mat_vec(x0, w0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = y0[i] - r[i];
  const double c = 4.0 * std::sqrt(p * std::log(n) / n);
  return 2.0 * (1.0 + c) * std::sqrt(p) / n * norm2(r);
}

double estimate_d0_signal(const Matrix& x0, const Vector& y0) {
  if (x0.rows() <= x0.cols()) throw std::invalid_argument("d0 estimate needs n > p");
  Vector w = solve_least_squares_jittered(x0, y0);
  Vector r = mat_vec(x0, w);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = y0[i] - r[i];
  const double n = static_cast<double>(x0.rows());
  double ss = (dot(y0, y0) - dot(r, r)) / n;
  return std::sqrt(std::max(0.0, ss));
}

FitResult adacrr_fit(const Dataset& data, const AdaCrrConfig& cfg, const GroundTruth* truth) {
  validate(cfg, data);
  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t p = data.p();

  RngStream shuffle_rng = RngStream::derive(cfg.seed, kShuffleStream);
  RngStream select_rng = RngStream::derive(cfg.seed, kAdahtStream);

  std::vector<std::vector<std::size_t>> folds;
  std::size_t n_tilde = data.n();
  if (!cfg.reuse_all_data) {
    folds = make_folds(data.n(), cfg.T, shuffle_rng);
    n_tilde = data.n() / (cfg.T + 1);
  }

  auto fold_view = [&](std::size_t t) -> std::pair<Matrix, Vector> {
    if (cfg.reuse_all_data) return {data.x, data.y};
    const auto& idx = folds[t];
    Vector y(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) y[i] = data.y[idx[i]];
    return {data.x.select_rows(idx), std::move(y)};
  };

  // w0: fold-0 OLS for dense updates, zero for the sparse one
  auto [x0, y0] = fold_view(0);
  Vector w(p, 0.0);
  if (cfg.update.kind != UpdateKind::sparse_iht) {
    w = solve_least_squares_jittered(x0, y0);
  }

  ScheduleSpec schedule = cfg.schedule;
  switch (cfg.d0.source) {
    case D0Source::given:
      schedule.d0_hat = cfg.d0.value;
      break;
    case D0Source::estimate_ols:
      schedule.d0_hat = estimate_d0_ols(x0, y0, w);
      break;
    case D0Source::estimate_signal:
      schedule.d0_hat = estimate_d0_signal(x0, y0);
      break;
  }

  FitResult res;
  res.w_trace.push_back(w);
  for (std::size_t t = 1; t <= cfg.T; ++t) {
    auto [xt, yt] = fold_view(t);
    const double interval = interval_length(t, schedule, n_tilde);
    Vector r = mat_vec(xt, w);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = yt[i] - r[i];
    SelectionResult sel = adaht_select(r, interval, cfg.gamma, cfg.a, select_rng);
    res.set_sizes.push_back(sel.selected.size());
    if (sel.selected.empty()) {
      res.flagged_iterations.push_back(t);
      res.w_trace.push_back(w);
      continue;
    }
    Matrix xs = xt.select_rows(sel.selected);
    Vector ys(sel.selected.size());
    for (std::size_t i = 0; i < sel.selected.size(); ++i) ys[i] = yt[sel.selected[i]];

    switch (cfg.update.kind) {
      case UpdateKind::fully_corrective:
        w = cfg.fc_gd_steps > 0 ? update_gd(xs, ys, w, cfg.update.eta, cfg.fc_gd_steps)
                                : fc_solve(xs, ys);
        break;
      case UpdateKind::gradient_descent:
        w = update_gd(xs, ys, w, cfg.update.eta, cfg.update.steps);
        break;
      case UpdateKind::sparse_iht:
        w = iht(xs, ys, cfg.update.k, cfg.update.eta, cfg.update.iht_iters);
        break;
    }
    res.w_trace.push_back(w);
  }

  res.w_final = w;
  res.iterations = cfg.T;
  if (truth != nullptr) {
    for (const Vector& wt : res.w_trace) {
      res.errors_sigma_norm.push_back(sigma_norm(sub(wt, truth->w_star), truth->sigma));
    }
  }
  res.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

FitResult heavy_fit(const Dataset& data, const AdaCrrConfig& cfg, const GroundTruth* truth) {
  if (cfg.schedule.mode != ScheduleMode::heavy_tailed)
    throw std::invalid_argument("heavy_fit requires the heavy-tailed schedule");
  return adacrr_fit(data, cfg, truth);
}

Vector mean_estimate_symmetrized(const Matrix& observations, const AdaCrrConfig& cfg) {
  const std::size_t n = observations.rows();
  const std::size_t p = observations.cols();
  if (cfg.schedule.mode != ScheduleMode::heavy_tailed)
    throw std::invalid_argument("mean estimation runs in heavy-tailed mode");
  if (!cfg.reuse_all_data && n < 2 * (cfg.T + 1))
    throw std::invalid_argument("need n >= 2(T+1) samples");

  Vector mu(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    RngStream sign_rng = RngStream::derive(cfg.seed, mix_seed(kMeanSignStream, j));
    Vector signs(n, 1.0);
    for (std::size_t idx : sign_rng.sample_indices(n, n / 2)) signs[idx] = -1.0;

    Dataset d;
    d.x = Matrix(n, 1);
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      d.x(i, 0) = signs[i];
      d.y[i] = signs[i] * observations(i, j);
    }
    AdaCrrConfig coord_cfg = cfg;
    coord_cfg.seed = mix_seed(cfg.seed, 0xC00Dull, j);
    mu[j] = heavy_fit(d, coord_cfg).w_final[0];
  }
  return mu;
}

}  // namespace adacrr
