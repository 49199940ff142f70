#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adacrr/datagen.hpp"
#include "adacrr/estimator.hpp"
#include "adacrr/linalg.hpp"

namespace adacrr {

struct TorrentConfig {
  double alpha = 0.0;  // assumed corruption fraction
  std::size_t max_iters = 100;
  double tol = 1e-9;
};

struct HuberConfig {
  double delta = 1.345;
  std::size_t max_iters = 100;
  double tol = 1e-9;
};

FitResult ols_fit(const Dataset& data, const GroundTruth* truth = nullptr);

/// Fixed-level hard thresholding: keep the floor((1-alpha)n) rows of smallest
/// absolute residual (ties to the lower index), refit by least squares,
/// repeat until ||dw|| < tol or max_iters. Starts from w = 0 unless an
/// explicit initial point is supplied.
FitResult torrent_fit(const Dataset& data, const TorrentConfig& cfg,
                      const Vector* w_init = nullptr, const GroundTruth* truth = nullptr);

/// Run torrent_fit from each grid start on one counterexample instance and
/// record where it lands.
std::map<double, double> torrent_fixed_point_trajectory(std::size_t n, double alpha,
                                                        const std::vector<double>& w_init_grid,
                                                        std::size_t iters, std::uint64_t seed);

double huber_objective(const Vector& residuals, double delta);

/// IRLS for the Huber loss: row weights min(1, delta/|r_i|), weighted least
/// squares, iterate to tol. The objective is non-increasing across iterations.
FitResult huber_fit(const Dataset& data, const HuberConfig& cfg,
                    const GroundTruth* truth = nullptr);

}  // namespace adacrr
