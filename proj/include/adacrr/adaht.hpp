#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "adacrr/linalg.hpp"
#include "adacrr/rng.hpp"

namespace adacrr {

enum class ScheduleMode { theoretical, practical, heavy_tailed };

/// Interval-length schedule for the thresholding operator.
///   theoretical:  I_t = 18 sqrt((2 sigma_hat^2 + 2 beta^{2(t-1)} d0_hat^2) ln n)
///   practical:    I_t =  3 sqrt( 2 sigma_hat^2 + 2 beta^{2(t-2)} d0_hat^2)
///   heavy_tailed: I_t = 18 (rho/sqrt(8) + beta^{t-1} d0_hat sqrt(ln n))
struct ScheduleSpec {
  ScheduleMode mode = ScheduleMode::practical;
  double sigma_hat = 0.0;
  double d0_hat = 0.0;
  double beta = 0.98;
  double rho = 0.0;  // heavy_tailed only
};

struct SelectionResult {
  std::vector<std::size_t> selected;  // S_t, ascending
  std::size_t chosen_interval = 0;    // j_t
  double tau = 0.0;                   // (j_t - 1/2) I_t
  double interval_length = 0.0;
  std::vector<std::size_t> counts;    // counts[j-1] = points in interval j
};

double interval_length(std::size_t t, const ScheduleSpec& schedule, std::size_t n_tilde);

/// Histogram the absolute residuals into intervals [(j-1)I, jI) and return the
/// smallest j in 1..ceil(n^(1/gamma))+1 whose count is strictly below
/// gamma*n/(j ln n), together with the per-interval counts. When no searched
/// interval qualifies (floating-point ties only), the searched interval with
/// the minimum count wins, lowest index on ties.
std::pair<std::size_t, std::vector<std::size_t>> select_interval(const Vector& abs_residuals,
                                                                 double interval, double gamma);

/// The randomized thresholding operator: keep everything left of interval j,
/// drop everything right of it, and for each point inside interval j keep it
/// iff |r| < tau + eta*I with eta ~ Uniform[-a, a] drawn per point in
/// ascending index order.
SelectionResult adaht_select(const Vector& residuals, double interval, double gamma, double a,
                             RngStream& rng);

}  // namespace adacrr
