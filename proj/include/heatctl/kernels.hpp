#pragma once

#include <cstddef>
#include <string_view>

namespace heatctl::kernels {

enum class Backend { scalar, avx2, neon };

// Backend is resolved once per process: the widest instruction set the CPU
// supports, unless the HEATCTL_KERNELS environment variable
// (scalar|avx2|neon) forces a choice. An unavailable choice falls back to
// scalar.
Backend active();
std::string_view backend_name();

double dot(const double* a, const double* b, std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

// x *= alpha
void scal(double alpha, double* x, std::size_t n);

// C += A * B, all row-major: A is m x k, B is k x n, C is m x n.
void gemm_acc(const double* a, const double* b, double* c,
              std::size_t m, std::size_t k, std::size_t n);

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void scal_scalar(double alpha, double* x, std::size_t n);

#if defined(HEATCTL_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void scal_avx2(double alpha, double* x, std::size_t n);
#endif

#if defined(HEATCTL_HAVE_NEON)
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void scal_neon(double alpha, double* x, std::size_t n);
#endif

}  // namespace detail

}  // namespace heatctl::kernels
