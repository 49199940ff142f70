#include "adacrr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adacrr/rng.hpp"

namespace adacrr {

namespace {

// substream tags within a dataset seed
constexpr std::uint64_t kSigmaStream = 0;
constexpr std::uint64_t kCovariateStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kCorruptIndexStream = 3;
constexpr std::uint64_t kCorruptValueStream = 4;

Vector draw_noise(std::size_t n, const NoiseSpec& spec, RngStream& rng) {
  Vector eps(n, 0.0);
  switch (spec.kind) {
    case NoiseKind::none:
      break;
    case NoiseKind::gaussian:
      if (spec.sigma < 0) throw std::invalid_argument("gaussian sigma must be >= 0");
      for (auto& e : eps) e = spec.sigma * rng.next_gaussian();
      break;
    case NoiseKind::cauchy:
      if (spec.scale <= 0) throw std::invalid_argument("cauchy scale must be positive");
      for (auto& e : eps) e = rng.next_cauchy(spec.scale);
      break;
    case NoiseKind::student_t:
      if (spec.dof <= 0 || spec.scale <= 0)
        throw std::invalid_argument("student-t parameters must be positive");
      for (auto& e : eps) e = rng.next_student_t(spec.dof, spec.scale);
      break;
  }
  return eps;
}

}  // namespace

Matrix make_sigma(std::size_t p, const SigmaSpec& spec, std::uint64_t seed) {
  if (p == 0) throw std::invalid_argument("p must be >= 1");
  switch (spec.kind) {
    case SigmaKind::identity:
      return Matrix::identity(p);
    case SigmaKind::explicit_diagonal: {
      if (spec.values.size() != p) throw std::invalid_argument("diagonal length mismatch");
      for (double v : spec.values)
        if (!(v > 0.0) || v > 1.0) throw std::invalid_argument("diagonal entries must be in (0,1]");
      return Matrix::diagonal(spec.values);
    }
    case SigmaKind::diagonal_conditioned: {
      if (spec.kappa < 1.0) throw std::invalid_argument("kappa must be >= 1");
      if (p == 1) return Matrix::identity(1);
      RngStream rng = RngStream::derive(seed, kSigmaStream);
      Vector d(p);
      for (auto& v : d) v = rng.next_unit();
      double lo = *std::min_element(d.begin(), d.end());
      double hi = *std::max_element(d.begin(), d.end());
      double span = hi - lo;
      double target_lo = 1.0 / spec.kappa;
      for (auto& v : d) {
        v = span > 0 ? target_lo + (v - lo) * (1.0 - target_lo) / span : 1.0;
      }
      return Matrix::diagonal(d);
    }
  }
  throw std::logic_error("unreachable");
}

Corruption make_corruption(std::size_t n, const CorruptionSpec& spec, std::uint64_t seed) {
  if (spec.alpha < 0.0 || spec.alpha >= 1.0) throw std::invalid_argument("alpha must be in [0,1)");
  const std::size_t m = static_cast<std::size_t>(spec.alpha * static_cast<double>(n));
  Corruption out;
  out.dense.assign(n, 0.0);
  if (m == 0) return out;

  RngStream idx_rng = RngStream::derive(seed, kCorruptIndexStream);
  RngStream val_rng = RngStream::derive(seed, kCorruptValueStream);
  out.indices = idx_rng.sample_indices(n, m);

  Vector vals(m);
  switch (spec.scheme) {
    case CorruptionScheme::paper_noisy:
    case CorruptionScheme::paper_noiseless: {
      const std::size_t q = n / 4;
      if (m < 2 * q)
        throw std::invalid_argument("paper corruption schemes need floor(alpha n) >= 2 floor(n/4)");
      const bool noisy = spec.scheme == CorruptionScheme::paper_noisy;
      const double big = noisy ? 1000.0 : 1.0;
      const double mid = noisy ? std::sqrt(1000.0) : 1.0 / std::sqrt(static_cast<double>(n));
      for (std::size_t i = 0; i < q; ++i) vals[i] = big;
      for (std::size_t i = q; i < 2 * q; ++i) vals[i] = mid;
      for (std::size_t i = 2 * q; i < m; ++i)
        vals[i] = noisy ? val_rng.next_uniform(0.0, 10.0) : 1.0 / static_cast<double>(n);
      break;
    }
    case CorruptionScheme::uniform_range:
      if (!(spec.hi > spec.lo)) throw std::invalid_argument("uniform corruption needs hi > lo");
      for (auto& v : vals) v = val_rng.next_uniform(spec.lo, spec.hi);
      break;
    case CorruptionScheme::explicit_values:
      if (spec.values.size() != m)
        throw std::invalid_argument("explicit corruption values must have floor(alpha n) entries");
      vals = spec.values;
      break;
  }
  for (std::size_t i = 0; i < m; ++i) out.dense[out.indices[i]] = vals[i];
  return out;
}

std::pair<Dataset, GroundTruth> gen_dataset(std::size_t n, std::size_t p, const Vector& w_star,
                                            const SigmaSpec& sigma_spec, const NoiseSpec& noise,
                                            const CorruptionSpec& corruption,
                                            std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (w_star.size() != p) throw std::invalid_argument("w_star length mismatch");

  Matrix sigma = make_sigma(p, sigma_spec, seed);
  Vector sqrt_diag(p);
  for (std::size_t j = 0; j < p; ++j) sqrt_diag[j] = std::sqrt(sigma(j, j));

  RngStream cov_rng = RngStream::derive(seed, kCovariateStream);
  Matrix x(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    double* r = x.row(i);
    for (std::size_t j = 0; j < p; ++j) r[j] = sqrt_diag[j] * cov_rng.next_gaussian();
  }

  RngStream noise_rng = RngStream::derive(seed, kNoiseStream);
  Vector eps = draw_noise(n, noise, noise_rng);
  Corruption corr = make_corruption(n, corruption, seed);

  Vector y = mat_vec(x, w_star);
  for (std::size_t i = 0; i < n; ++i) y[i] += eps[i] + corr.dense[i];

  GroundTruth truth;
  truth.w_star = w_star;
  truth.sigma = std::move(sigma);
  truth.noise = noise;
  truth.b_star = std::move(corr.dense);
  truth.epsilon = std::move(eps);
  truth.corrupted_indices = std::move(corr.indices);
  truth.seed = seed;
  return {Dataset{std::move(x), std::move(y)}, std::move(truth)};
}

std::pair<Dataset, GroundTruth> torrent_counterexample(std::size_t n, double alpha,
                                                       std::uint64_t seed) {
  if (n < 10) throw std::invalid_argument("n must be >= 10");
  if (alpha < 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in [0,1)");
  RngStream cov_rng = RngStream::derive(seed, kCovariateStream);
  const std::size_t m = static_cast<std::size_t>(alpha * static_cast<double>(n));
  Matrix x(n, 1);
  Vector y(n, 0.0);
  GroundTruth truth;
  truth.w_star = {0.0};
  truth.sigma = Matrix::identity(1);
  truth.noise = NoiseSpec::none();
  truth.b_star.assign(n, 0.0);
  truth.epsilon.assign(n, 0.0);
  truth.seed = seed;
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = cov_rng.next_gaussian();
  for (std::size_t i = 0; i < m; ++i) {
    truth.b_star[i] = 1.0;
    y[i] = 1.0;
    truth.corrupted_indices.push_back(i);
  }
  return {Dataset{std::move(x), std::move(y)}, std::move(truth)};
}

Vector gen_sparse_truth(std::size_t p, std::size_t k_star, std::uint64_t seed) {
  if (k_star == 0 || k_star > p) throw std::invalid_argument("need 1 <= k_star <= p");
  RngStream rng = RngStream::derive(seed, 0x77C0FFEEull);
  Vector w(p, 0.0);
  for (std::size_t idx : rng.sample_indices(p, k_star)) {
    w[idx] = rng.next_unit() < 0.5 ? -1.0 : 1.0;
  }
  return w;
}

}  // namespace adacrr
