#pragma once

#include <cstdint>
#include <vector>

namespace adacrr {

/// Deterministic splitmix64 stream with explicit substream derivation.
/// Gaussian draws use Box-Muller, Cauchy draws use the inverse CDF, so a
/// stream's output is fully pinned by (seed, substream) and reproducible
/// across platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Independent substream: same (seed, stream) pair always yields the
  /// same sequence regardless of what other substreams consumed.
  static RngStream derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_unit();  // [0, 1)
  double next_uniform(double lo, double hi);
  double next_gaussian();  // standard normal
  double next_cauchy(double scale);
  double next_student_t(double dof, double scale);
  std::uint64_t next_below(std::uint64_t n);  // uniform on [0, n), unbiased

  /// First k entries of a Fisher-Yates shuffle of [0, n): a uniformly random
  /// k-subset in random order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);
  void shuffle(std::vector<std::size_t>& v);

 private:
  double next_gamma(double shape);  // Marsaglia-Tsang, unit scale

  std::uint64_t state_;
  bool has_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

/// One 64-bit mix of arbitrary components, used for composing seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                       std::uint64_t d = 0);

}  // namespace adacrr
