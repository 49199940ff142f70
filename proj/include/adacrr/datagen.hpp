#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "adacrr/linalg.hpp"

namespace adacrr {

enum class SigmaKind { identity, diagonal_conditioned, explicit_diagonal };

/// Diagonal covariance specification. diagonal_conditioned draws entries
/// uniform(0,1) and rescales them affinely so max = 1 and min = 1/kappa.
struct SigmaSpec {
  SigmaKind kind = SigmaKind::identity;
  double kappa = 1.0;
  Vector values;

  static SigmaSpec identity() { return {}; }
  static SigmaSpec conditioned(double kappa) {
    return {SigmaKind::diagonal_conditioned, kappa, {}};
  }
  static SigmaSpec explicit_diag(Vector v) {
    return {SigmaKind::explicit_diagonal, 1.0, std::move(v)};
  }
};

enum class NoiseKind { none, gaussian, cauchy, student_t };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;  // gaussian std dev
  double scale = 1.0;  // cauchy / student-t scale
  double dof = 3.0;    // student-t degrees of freedom

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian(double sigma) { return {NoiseKind::gaussian, sigma, 1.0, 3.0}; }
  static NoiseSpec cauchy(double scale) { return {NoiseKind::cauchy, 0.0, scale, 3.0}; }
  static NoiseSpec student_t(double dof, double scale) {
    return {NoiseKind::student_t, 0.0, scale, dof};
  }
};

enum class CorruptionScheme { paper_noisy, paper_noiseless, uniform_range, explicit_values };

// Response corruptions, supported on floor(alpha*n) indices drawn
// independently of covariates and noise.
//   paper_noisy:     n/4 entries 1000, n/4 entries sqrt(1000), rest uniform(0,10)
//   paper_noiseless: n/4 entries 1, n/4 entries 1/sqrt(n), rest 1/n
struct CorruptionSpec {
  double alpha = 0.0;
  CorruptionScheme scheme = CorruptionScheme::paper_noisy;
  double lo = 0.0, hi = 0.0;  // uniform_range
  Vector values;              // explicit_values, one per corrupted index

  static CorruptionSpec none() { return {0.0, CorruptionScheme::uniform_range, 0, 0, {}}; }
  static CorruptionSpec paper_noisy(double alpha) {
    return {alpha, CorruptionScheme::paper_noisy, 0, 0, {}};
  }
  static CorruptionSpec paper_noiseless(double alpha) {
    return {alpha, CorruptionScheme::paper_noiseless, 0, 0, {}};
  }
  static CorruptionSpec uniform(double alpha, double lo, double hi) {
    return {alpha, CorruptionScheme::uniform_range, lo, hi, {}};
  }
};

struct GroundTruth {
  Vector w_star;
  Matrix sigma;
  NoiseSpec noise;
  Vector b_star;
  Vector epsilon;
  std::vector<std::size_t> corrupted_indices;
  std::uint64_t seed = 0;
};

struct Dataset {
  Matrix x;
  Vector y;
  std::size_t n() const { return x.rows(); }
  std::size_t p() const { return x.cols(); }
};

struct Corruption {
  std::vector<std::size_t> indices;
  Vector dense;  // length n, zero off the corrupted set
};

Matrix make_sigma(std::size_t p, const SigmaSpec& spec, std::uint64_t seed);

/// Corruption vector as a function of (n, spec, seed) alone; gen_dataset uses
/// this so b* is oblivious to the covariate and noise draws.
Corruption make_corruption(std::size_t n, const CorruptionSpec& spec, std::uint64_t seed);

std::pair<Dataset, GroundTruth> gen_dataset(std::size_t n, std::size_t p,
                                            const Vector& w_star, const SigmaSpec& sigma,
                                            const NoiseSpec& noise,
                                            const CorruptionSpec& corruption,
                                            std::uint64_t seed);

/// 1-d instance where fixed-level hard thresholding has bad fixed points:
/// w* = 0, x ~ N(0,1), b* = 1 on the first floor(alpha*n) indices, y = b*.
std::pair<Dataset, GroundTruth> torrent_counterexample(std::size_t n, double alpha,
                                                       std::uint64_t seed);

/// Exactly k_star entries of +-1 at uniformly random positions.
Vector gen_sparse_truth(std::size_t p, std::size_t k_star, std::uint64_t seed);

}  // namespace adacrr
