#include "adacrr/adaht.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace adacrr {

namespace {

// Interval index of |r|: floor(|r|/I) + 1. A residual exactly on the boundary
// j*I belongs to interval j+1 (half-open intervals).
std::uint64_t interval_of(double abs_r, double interval) {
  double q = std::floor(abs_r / interval);
  if (q >= 9.007199254740992e15) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(q) + 1;
}

}  // namespace

double interval_length(std::size_t t, const ScheduleSpec& schedule, std::size_t n_tilde) {
  if (t < 1) throw std::invalid_argument("iteration index starts at 1");
  const double td = static_cast<double>(t);
  switch (schedule.mode) {
    case ScheduleMode::theoretical: {
      if (n_tilde < 2) throw std::invalid_argument("theoretical schedule needs n >= 2");
      const double log_n = std::log(static_cast<double>(n_tilde));
      const double decayed = std::pow(schedule.beta, 2.0 * (td - 1.0)) * schedule.d0_hat * schedule.d0_hat;
      return 18.0 * std::sqrt((2.0 * schedule.sigma_hat * schedule.sigma_hat + 2.0 * decayed) * log_n);
    }
    case ScheduleMode::practical: {
      const double decayed = std::pow(schedule.beta, 2.0 * (td - 2.0)) * schedule.d0_hat * schedule.d0_hat;
      return 3.0 * std::sqrt(2.0 * schedule.sigma_hat * schedule.sigma_hat + 2.0 * decayed);
    }
    case ScheduleMode::heavy_tailed: {
      if (n_tilde < 2) throw std::invalid_argument("heavy-tailed schedule needs n >= 2");
      const double log_n = std::log(static_cast<double>(n_tilde));
      return 18.0 * (schedule.rho / std::sqrt(8.0) +
                     std::pow(schedule.beta, td - 1.0) * schedule.d0_hat * std::sqrt(log_n));
    }
  }
  throw std::logic_error("unreachable");
}

std::pair<std::size_t, std::vector<std::size_t>> select_interval(const Vector& abs_residuals,
                                                                 double interval, double gamma) {
  const std::size_t n = abs_residuals.size();
  if (n < 2) throw std::invalid_argument("need at least two residuals");
  if (!(interval > 0.0)) throw std::invalid_argument("interval length must be positive");
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");

  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  const std::size_t search_limit =
      static_cast<std::size_t>(std::ceil(std::pow(nd, 1.0 / gamma))) + 1;

  std::map<std::uint64_t, std::size_t> histogram;
  std::uint64_t last = 0;
  for (double r : abs_residuals) {
    std::uint64_t j = interval_of(std::abs(r), interval);
    ++histogram[j];
    last = std::max(last, j);
  }

  auto count_of = [&histogram](std::uint64_t j) -> std::size_t {
    auto it = histogram.find(j);
    return it == histogram.end() ? 0 : it->second;
  };

  std::size_t chosen = 0;
  for (std::size_t j = 1; j <= search_limit; ++j) {
    if (static_cast<double>(count_of(j)) < gamma * nd / (static_cast<double>(j) * log_n)) {
      chosen = j;
      break;
    }
  }
  if (chosen == 0) {
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 1; j <= search_limit; ++j) {
      if (count_of(j) < best_count) {
        best_count = count_of(j);
        chosen = j;
      }
    }
  }

  // densify; anything past the cap is folded into the final slot so the
  // counts always sum to n even for extreme residual/interval ratios
  const std::uint64_t cap =
      std::max<std::uint64_t>(search_limit, std::min<std::uint64_t>(last, (1u << 20)));
  std::vector<std::size_t> counts(static_cast<std::size_t>(cap), 0);
  for (const auto& [j, c] : histogram) {
    counts[static_cast<std::size_t>(std::min<std::uint64_t>(j, cap)) - 1] += c;
  }
  return {chosen, std::move(counts)};
}

SelectionResult adaht_select(const Vector& residuals, double interval, double gamma, double a,
                             RngStream& rng) {
  if (a < 0.0 || a > 0.1) throw std::invalid_argument("a must lie in [0, 0.1]");
  Vector abs_res(residuals.size());
  for (std::size_t i = 0; i < residuals.size(); ++i) abs_res[i] = std::abs(residuals[i]);

  auto [j, counts] = select_interval(abs_res, interval, gamma);
  const double tau = (static_cast<double>(j) - 0.5) * interval;

  SelectionResult out;
  out.chosen_interval = j;
  out.tau = tau;
  out.interval_length = interval;
  out.counts = std::move(counts);
  for (std::size_t i = 0; i < abs_res.size(); ++i) {
    const std::uint64_t ji = interval_of(abs_res[i], interval);
    if (ji < j) {
      out.selected.push_back(i);
    } else if (ji == j) {
      const double eta = a == 0.0 ? 0.0 : rng.next_uniform(-a, a);
      if (abs_res[i] < tau + eta * interval) out.selected.push_back(i);
    }
  }
  return out;
}

}  // namespace adacrr
