#include "adacrr/kernels.hpp"

#include <cstdlib>

namespace adacrr::kernels {

namespace detail {

double dot_scalar(const double*, const double*, std::size_t) noexcept;
double sum_sq_scalar(const double*, std::size_t) noexcept;
void axpy_scalar(double, const double*, double*, std::size_t) noexcept;
void mat_vec_scalar(const double*, std::size_t, std::size_t, const double*, double*) noexcept;
void mat_t_vec_scalar(const double*, std::size_t, std::size_t, const double*, double*) noexcept;
void gram_scalar(const double*, std::size_t, std::size_t, double*) noexcept;

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double*, const double*, std::size_t) noexcept;
double sum_sq_avx2(const double*, std::size_t) noexcept;
void axpy_avx2(double, const double*, double*, std::size_t) noexcept;
void mat_vec_avx2(const double*, std::size_t, std::size_t, const double*, double*) noexcept;
void mat_t_vec_avx2(const double*, std::size_t, std::size_t, const double*, double*) noexcept;
void gram_avx2(const double*, std::size_t, std::size_t, double*) noexcept;
#endif

}  // namespace detail

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  double (*sum_sq)(const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  void (*mat_vec)(const double*, std::size_t, std::size_t, const double*, double*) noexcept;
  void (*mat_t_vec)(const double*, std::size_t, std::size_t, const double*, double*) noexcept;
  void (*gram)(const double*, std::size_t, std::size_t, double*) noexcept;
};

constexpr Table kScalar{detail::dot_scalar,     detail::sum_sq_scalar,
                        detail::axpy_scalar,    detail::mat_vec_scalar,
                        detail::mat_t_vec_scalar, detail::gram_scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{detail::dot_avx2,     detail::sum_sq_avx2,
                      detail::axpy_avx2,    detail::mat_vec_avx2,
                      detail::mat_t_vec_avx2, detail::gram_avx2};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#else
bool cpu_has_avx2() noexcept { return false; }
#endif

// ADACRR_FORCE_SCALAR=1 pins the reference kernels (debugging, benchmarks)
Isa initial_isa() noexcept {
  const char* force = std::getenv("ADACRR_FORCE_SCALAR");
  if (force != nullptr && force[0] == '1') return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa g_isa = initial_isa();

const Table& table() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  return g_isa == Isa::avx2 ? kAvx2 : kScalar;
#else
  return kScalar;
#endif
}

}  // namespace

Isa active_isa() noexcept { return g_isa; }

const char* isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa force_isa(Isa isa) noexcept {
  Isa prev = g_isa;
  if (isa == Isa::avx2 && !cpu_has_avx2()) isa = Isa::scalar;
  g_isa = isa;
  return prev;
}

double dot(const double* a, const double* b, std::size_t n) noexcept {
  return table().dot(a, b, n);
}
double sum_sq(const double* a, std::size_t n) noexcept { return table().sum_sq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  table().axpy(alpha, x, y, n);
}
void mat_vec(const double* a, std::size_t rows, std::size_t cols, const double* x,
             double* y) noexcept {
  table().mat_vec(a, rows, cols, x, y);
}
void mat_t_vec(const double* a, std::size_t rows, std::size_t cols, const double* x,
               double* y) noexcept {
  table().mat_t_vec(a, rows, cols, x, y);
}
void gram(const double* a, std::size_t rows, std::size_t cols, double* g) noexcept {
  table().gram(a, rows, cols, g);
}

}  // namespace adacrr::kernels
