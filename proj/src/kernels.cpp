#include "heatctl/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace heatctl::kernels {

namespace detail {

// Reference implementations. These define the semantics the vectorized
// variants are tested against.

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace detail

namespace {

struct Ops {
    Backend backend;
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
};

Ops resolve() {
    using namespace detail;
    const Ops scalar{Backend::scalar, dot_scalar, axpy_scalar, scal_scalar};

    const char* force = std::getenv("HEATCTL_KERNELS");
    const std::string_view want = force ? std::string_view(force) : std::string_view();
    if (want == "scalar") return scalar;

#if defined(HEATCTL_HAVE_AVX2)
    const bool cpu_ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (cpu_ok && (want.empty() || want == "avx2"))
        return Ops{Backend::avx2, dot_avx2, axpy_avx2, scal_avx2};
#endif
#if defined(HEATCTL_HAVE_NEON)
    if (want.empty() || want == "neon")
        return Ops{Backend::neon, dot_neon, axpy_neon, scal_neon};
#endif
    return scalar;
}

const Ops& ops() {
    static const Ops o = resolve();
    return o;
}

}  // namespace

Backend active() { return ops().backend; }

std::string_view backend_name() {
    switch (ops().backend) {
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
        default: return "scalar";
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    return ops().dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    ops().axpy(alpha, x, y, n);
}

void scal(double alpha, double* x, std::size_t n) {
    ops().scal(alpha, x, n);
}

void gemm_acc(const double* a, const double* b, double* c,
              std::size_t m, std::size_t k, std::size_t n) {
    auto* axpy_fn = ops().axpy;
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = arow[p];
            if (aip != 0.0) axpy_fn(aip, b + p * n, crow, n);
        }
    }
}

}  // namespace heatctl::kernels
