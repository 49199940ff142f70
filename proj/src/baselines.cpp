#include "adacrr/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace adacrr {

namespace {

void finish(FitResult& res, const Vector& w, const GroundTruth* truth,
            std::chrono::steady_clock::time_point t0) {
  res.w_final = w;
  if (truth != nullptr) {
    for (const Vector& wt : res.w_trace)
      res.errors_sigma_norm.push_back(sigma_norm(sub(wt, truth->w_star), truth->sigma));
  }
  res.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

FitResult ols_fit(const Dataset& data, const GroundTruth* truth) {
  const auto t0 = std::chrono::steady_clock::now();
  FitResult res;
  Vector w = solve_least_squares_jittered(data.x, data.y);
  res.w_trace.push_back(w);
  res.iterations = 1;
  finish(res, w, truth, t0);
  return res;
}

FitResult torrent_fit(const Dataset& data, const TorrentConfig& cfg, const Vector* w_init,
                      const GroundTruth* truth) {
  if (cfg.alpha < 0.0 || cfg.alpha >= 1.0) throw std::invalid_argument("alpha must be in [0,1)");
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  const std::size_t n = data.n();
  const std::size_t p = data.p();
  const std::size_t keep = static_cast<std::size_t>((1.0 - cfg.alpha) * static_cast<double>(n));
  if (keep < p) throw std::invalid_argument("kept subset smaller than dimension");

  const auto t0 = std::chrono::steady_clock::now();
  FitResult res;
  Vector w = w_init != nullptr ? *w_init : Vector(p, 0.0);
  res.w_trace.push_back(w);

  std::vector<std::size_t> order(n);
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    Vector r = mat_vec(data.x, w);
    for (std::size_t i = 0; i < n; ++i) r[i] = std::abs(data.y[i] - r[i]);
    std::iota(order.begin(), order.end(), 0);
    std::nth_element(order.begin(), order.begin() + (keep - 1), order.end(),
                     [&r](std::size_t i, std::size_t j) {
                       return r[i] != r[j] ? r[i] < r[j] : i < j;
                     });
    std::vector<std::size_t> subset(order.begin(), order.begin() + keep);
    std::sort(subset.begin(), subset.end());

    Matrix xs = data.x.select_rows(subset);
    Vector ys(keep);
    for (std::size_t i = 0; i < keep; ++i) ys[i] = data.y[subset[i]];
    Vector w_next = solve_least_squares_jittered(xs, ys);

    double delta = norm2(sub(w_next, w));
    w = std::move(w_next);
    res.w_trace.push_back(w);
    res.set_sizes.push_back(keep);
    res.iterations = it + 1;
    if (delta < cfg.tol) break;
  }
  finish(res, w, truth, t0);
  return res;
}

std::map<double, double> torrent_fixed_point_trajectory(std::size_t n, double alpha,
                                                        const std::vector<double>& w_init_grid,
                                                        std::size_t iters, std::uint64_t seed) {
  auto [data, truth] = torrent_counterexample(n, alpha, seed);
  TorrentConfig cfg;
  cfg.alpha = alpha;
  cfg.max_iters = iters;
  cfg.tol = 0.0;  // run the full budget
  std::map<double, double> out;
  for (double w0 : w_init_grid) {
    Vector init{w0};
    out[w0] = torrent_fit(data, cfg, &init).w_final[0];
  }
  return out;
}

double huber_objective(const Vector& residuals, double delta) {
  double obj = 0.0;
  for (double r : residuals) {
    double ar = std::abs(r);
    obj += ar <= delta ? 0.5 * r * r : delta * (ar - 0.5 * delta);
  }
  return obj;
}

FitResult huber_fit(const Dataset& data, const HuberConfig& cfg, const GroundTruth* truth) {
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (data.n() < data.p()) throw std::invalid_argument("need n >= p");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = data.n();
  const std::size_t p = data.p();

  FitResult res;
  Vector w = solve_least_squares_jittered(data.x, data.y);
  res.w_trace.push_back(w);

  Matrix xw(n, p);
  Vector yw(n);
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    Vector r = mat_vec(data.x, w);
    for (std::size_t i = 0; i < n; ++i) r[i] = data.y[i] - r[i];
    // weighted least squares with sqrt(weight)-scaled rows
    for (std::size_t i = 0; i < n; ++i) {
      double ar = std::abs(r[i]);
      double s = std::sqrt(ar <= cfg.delta || ar == 0.0 ? 1.0 : cfg.delta / ar);
      const double* src = data.x.row(i);
      double* dst = xw.row(i);
      for (std::size_t j = 0; j < p; ++j) dst[j] = s * src[j];
      yw[i] = s * data.y[i];
    }
    Vector w_next = solve_least_squares_jittered(xw, yw);
    double delta_w = norm2(sub(w_next, w));
    w = std::move(w_next);
    res.w_trace.push_back(w);
    res.iterations = it + 1;
    if (delta_w < cfg.tol) break;
  }
  finish(res, w, truth, t0);
  return res;
}

}  // namespace adacrr
