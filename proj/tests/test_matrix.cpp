#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "heatctl/errors.hpp"
#include "heatctl/matrix.hpp"

using namespace heatctl;

TEST_CASE("construction and arithmetic") {
    Matrix a{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 2);
    CHECK(a.trace() == doctest::Approx(5.0));

    Matrix b = Matrix::identity(2);
    Matrix c = a * b;
    CHECK(c(1, 0) == doctest::Approx(3.0));

    Matrix d = a + a;
    CHECK(d(0, 1) == doctest::Approx(4.0));
    d -= a;
    CHECK(d(0, 1) == doctest::Approx(2.0));

    Matrix t = a.transpose();
    CHECK(t(0, 1) == doctest::Approx(3.0));

    CHECK(a.norm_one() == doctest::Approx(6.0));
    CHECK(a.norm_inf() == doctest::Approx(7.0));
    CHECK(a.norm_fro() == doctest::Approx(std::sqrt(30.0)));
}

TEST_CASE("dimension mismatches throw") {
    Matrix a{{1.0, 2.0}};
    Matrix b{{1.0, 2.0, 3.0}};
    CHECK_THROWS_AS(a + b, ValidationError);
    CHECK_THROWS_AS(a * a, ValidationError);
    CHECK_THROWS_AS(Matrix(0, 3), ValidationError);
    CHECK_THROWS_AS((Matrix{{1.0}, {2.0, 3.0}}), ValidationError);
}

TEST_CASE("finite-entry enforcement") {
    Matrix a{{1.0, std::numeric_limits<double>::quiet_NaN()}};
    CHECK(!a.is_finite());
    CHECK_THROWS_AS(a.require_finite("probe"), ValidationError);
    Matrix b{{1.0, 2.0}};
    CHECK_NOTHROW(b.require_finite("probe"));
}

TEST_CASE("vector products") {
    Matrix a{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
    const std::vector<double> x{1.0, -1.0};
    const auto y = a.mul_vec(x);
    CHECK(y[0] == doctest::Approx(-1.0));
    CHECK(y[2] == doctest::Approx(-1.0));
    const std::vector<double> z{1.0, 0.0, -1.0};
    const auto w = a.tmul_vec(z);
    CHECK(w[0] == doctest::Approx(-4.0));
    CHECK(w[1] == doctest::Approx(-4.0));
}

TEST_CASE("hstack") {
    const Matrix blocks[] = {Matrix{{1.0}, {2.0}}, Matrix{{3.0, 4.0}, {5.0, 6.0}}};
    Matrix h = hstack(blocks);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 3);
    CHECK(h(1, 2) == doctest::Approx(6.0));
}
