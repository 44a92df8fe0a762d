#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "heatctl/kernels.hpp"

using namespace heatctl;

TEST_CASE("dot, axpy, scal basics") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{-1.0, 0.5, 4.0};
    CHECK(kernels::dot(a.data(), b.data(), 3) == doctest::Approx(12.0));

    std::vector<double> y{1.0, 1.0, 1.0};
    kernels::axpy(2.0, a.data(), y.data(), 3);
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[1] == doctest::Approx(5.0));
    CHECK(y[2] == doctest::Approx(7.0));

    kernels::scal(-0.5, y.data(), 3);
    CHECK(y[2] == doctest::Approx(-3.5));

    CHECK(kernels::dot(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("gemm_acc matches a plain triple loop") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::size_t m = 7, k = 5, n = 9;
    std::vector<double> a(m * k), b(k * n), c(m * n, 0.5), ref;
    for (double& v : a) v = dist(rng);
    for (double& v : b) v = dist(rng);
    ref = c;

    kernels::gemm_acc(a.data(), b.data(), c.data(), m, k, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = ref[i * n + j];
            for (std::size_t p = 0; p < k; ++p) acc += a[i * k + p] * b[p * n + j];
            CHECK(c[i * n + j] == doctest::Approx(acc).epsilon(1e-12));
        }
}

TEST_CASE("backend reporting") {
    const auto name = kernels::backend_name();
    CHECK((name == "scalar" || name == "avx2" || name == "neon"));
}

#if defined(HEATCTL_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (std::size_t len : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 64u, 255u, 517u}) {
        std::vector<double> a(len), b(len);
        for (double& v : a) v = dist(rng);
        for (double& v : b) v = dist(rng);

        double abssum = 0.0;
        for (std::size_t i = 0; i < len; ++i) abssum += std::abs(a[i] * b[i]);
        const double tol = 1e-14 * (1.0 + abssum);
        CHECK(std::abs(kernels::detail::dot_avx2(a.data(), b.data(), len) -
                       kernels::detail::dot_scalar(a.data(), b.data(), len)) <= tol);

        std::vector<double> y1(len, 0.25), y2(len, 0.25);
        kernels::detail::axpy_avx2(1.7, a.data(), y1.data(), len);
        kernels::detail::axpy_scalar(1.7, a.data(), y2.data(), len);
        for (std::size_t i = 0; i < len; ++i)
            CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

        kernels::detail::scal_avx2(-0.3, y1.data(), len);
        kernels::detail::scal_scalar(-0.3, y2.data(), len);
        for (std::size_t i = 0; i < len; ++i)
            CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
    }
}
#endif

#if defined(HEATCTL_HAVE_NEON)
TEST_CASE("neon kernels agree with the scalar reference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (std::size_t len : {0u, 1u, 2u, 3u, 5u, 16u, 255u}) {
        std::vector<double> a(len), b(len);
        for (double& v : a) v = dist(rng);
        for (double& v : b) v = dist(rng);
        double abssum = 0.0;
        for (std::size_t i = 0; i < len; ++i) abssum += std::abs(a[i] * b[i]);
        CHECK(std::abs(kernels::detail::dot_neon(a.data(), b.data(), len) -
                       kernels::detail::dot_scalar(a.data(), b.data(), len)) <=
              1e-14 * (1.0 + abssum));
        std::vector<double> y1(len, 0.25), y2(len, 0.25);
        kernels::detail::axpy_neon(1.7, a.data(), y1.data(), len);
        kernels::detail::axpy_scalar(1.7, a.data(), y2.data(), len);
        for (std::size_t i = 0; i < len; ++i)
            CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
    }
}
#endif
