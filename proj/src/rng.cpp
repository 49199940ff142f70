#include "adacrr/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace adacrr {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  std::uint64_t s = a;
  std::uint64_t out = splitmix(s);
  s ^= b * kGolden;
  out ^= splitmix(s);
  s ^= c * kGolden;
  out ^= splitmix(s);
  s ^= d * kGolden;
  out ^= splitmix(s);
  return out;
}

RngStream::RngStream(std::uint64_t seed) : state_(mix_seed(seed, 0x5DEECE66Dull)) {}

RngStream RngStream::derive(std::uint64_t seed, std::uint64_t stream) {
  return RngStream(mix_seed(seed, stream, 0xD1B54A32D192ED03ull));
}

std::uint64_t RngStream::next_u64() { return splitmix(state_); }

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

double RngStream::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u1 = 1.0 - next_unit();  // (0, 1]
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = r * std::sin(angle);
  has_cached_gaussian_ = true;
  return r * std::cos(angle);
}

double RngStream::next_cauchy(double scale) {
  return scale * std::tan(std::numbers::pi * (next_unit() - 0.5));
}

double RngStream::next_gamma(double shape) {
  if (shape < 1.0) {
    // boost: Gamma(a) = Gamma(a+1) * U^{1/a}
    double u = 1.0 - next_unit();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = next_gaussian();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = 1.0 - next_unit();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

double RngStream::next_student_t(double dof, double scale) {
  if (dof <= 0.0) throw std::invalid_argument("student-t dof must be positive");
  double z = next_gaussian();
  double g = next_gamma(dof / 2.0) * 2.0;  // chi-square with `dof` degrees
  return scale * z / std::sqrt(g / dof);
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below(0)");
  const std::uint64_t limit = ~0ull - ~0ull % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

std::vector<std::size_t> RngStream::sample_indices(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("sample size exceeds population");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(next_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

void RngStream::shuffle(std::vector<std::size_t>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    std::size_t j = i + static_cast<std::size_t>(next_below(v.size() - i));
    std::swap(v[i], v[j]);
  }
}

}  // namespace adacrr
