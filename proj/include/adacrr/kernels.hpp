#pragma once

#include <cstddef>

// Double-precision primitives behind the dense linear algebra layer.
// A scalar reference implementation always exists; an AVX2 variant is
// selected at startup when the CPU supports it. Matrices are row-major.

namespace adacrr::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa() noexcept;
const char* isa_name(Isa) noexcept;

// Test hook: pin the implementation. Returns the previously active ISA.
// Requesting an unsupported ISA falls back to scalar.
Isa force_isa(Isa) noexcept;

double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum_sq(const double* a, std::size_t n) noexcept;

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;

// y = A x          (A is rows x cols, row-major)
void mat_vec(const double* a, std::size_t rows, std::size_t cols,
             const double* x, double* y) noexcept;

// y = A^T x
void mat_t_vec(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y) noexcept;

// g = A^T A        (g is cols x cols, row-major, symmetric)
void gram(const double* a, std::size_t rows, std::size_t cols,
          double* g) noexcept;

}  // namespace adacrr::kernels
