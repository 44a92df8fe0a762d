#include "heatctl/expm.hpp"

#include <array>
#include <cmath>

#include "heatctl/errors.hpp"

namespace heatctl {

namespace detail {

Matrix lu_solve(Matrix a, Matrix b) {
    const std::size_t n = a.rows();
    if (!a.square() || b.rows() != n)
        throw ValidationError("lu_solve: dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best == 0.0) throw NumericalError("lu_solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
        }
        const double inv = 1.0 / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) * inv;
            if (f == 0.0) continue;
            a(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        const double inv = 1.0 / a(kk, kk);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = b(kk, j);
            for (std::size_t i = kk + 1; i < n; ++i) s -= a(kk, i) * b(i, j);
            b(kk, j) = s * inv;
        }
    }
    return b;
}

}  // namespace detail

Matrix expm(const Matrix& m, double t) {
    if (!m.square()) throw ValidationError("expm: matrix must be square");
    m.require_finite("expm input");
    if (!std::isfinite(t)) throw ValidationError("expm: time must be finite");

    const std::size_t n = m.rows();
    Matrix a = m * t;

    // theta_13 from the standard scaling analysis of the [13/13] Pade form.
    const double theta13 = 5.371920351148152;
    const double nrm = a.norm_one();
    int squarings = 0;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        a *= std::ldexp(1.0, -squarings);
    }

    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};

    const Matrix ident = Matrix::identity(n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;

    Matrix u_inner = a6 * b[13] + a4 * b[11] + a2 * b[9];
    Matrix u = a * (a6 * u_inner + a6 * b[7] + a4 * b[5] + a2 * b[3] + ident * b[1]);
    Matrix v_inner = a6 * b[12] + a4 * b[10] + a2 * b[8];
    Matrix v = a6 * v_inner + a6 * b[6] + a4 * b[4] + a2 * b[2] + ident * b[0];

    Matrix r = detail::lu_solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

}  // namespace heatctl
