#include "heatctl/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "heatctl/errors.hpp"
#include "heatctl/kernels.hpp"

namespace heatctl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// One-sided Jacobi on a tall matrix (rows >= cols). Columns are rotated
// until mutually orthogonal; their norms are the singular values. Rotations
// are accumulated into Vt so that M = U diag(sigma) Vt.
SvdResult svd_tall(const Matrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();

    // Work on the transpose: rows of `w` are columns of `m`, contiguous.
    Matrix w = m.transpose();
    Matrix vt = Matrix::identity(c);

    const double orth_tol = 1e-15;
    // Column pairs whose norm product falls below eps^2 * ||M||_F^2 cannot
    // influence the decomposition at working precision; skipping them keeps
    // clusters of negligible columns from cycling the sweeps.
    const double fro = m.norm_fro();
    const double pair_floor = (kEps * fro) * (kEps * fro);
    const int max_sweeps = 100;
    int sweep = 0;
    bool rotated = true;
    while (rotated && sweep < max_sweeps) {
        rotated = false;
        ++sweep;
        for (std::size_t p = 0; p + 1 < c; ++p) {
            for (std::size_t q = p + 1; q < c; ++q) {
                double* up = w.data() + p * r;
                double* uq = w.data() + q * r;
                const double app = kernels::dot(up, up, r);
                const double aqq = kernels::dot(uq, uq, r);
                const double apq = kernels::dot(up, uq, r);
                if (apq == 0.0 || app == 0.0 || aqq == 0.0) continue;
                const double scale = std::sqrt(app) * std::sqrt(aqq);
                if (scale <= pair_floor) continue;
                if (std::abs(apq) <= orth_tol * scale) continue;
                rotated = true;

                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;

                for (std::size_t i = 0; i < r; ++i) {
                    const double a = up[i];
                    const double b = uq[i];
                    up[i] = cs * a - sn * b;
                    uq[i] = sn * a + cs * b;
                }
                double* vp = vt.data() + p * c;
                double* vq = vt.data() + q * c;
                for (std::size_t i = 0; i < c; ++i) {
                    const double a = vp[i];
                    const double b = vq[i];
                    vp[i] = cs * a - sn * b;
                    vq[i] = sn * a + cs * b;
                }
            }
        }
    }
    if (rotated)
        throw NumericalError("svd: Jacobi sweeps did not converge");

    std::vector<double> sig(c);
    for (std::size_t i = 0; i < c; ++i) {
        const double* row = w.data() + i * r;
        sig[i] = std::sqrt(kernels::dot(row, row, r));
    }
    std::vector<std::size_t> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sig[a] > sig[b]; });

    SvdResult out;
    out.U = Matrix(r, c);
    out.V = Matrix(c, c);
    out.sigma.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        const std::size_t j = order[i];
        out.sigma[i] = sig[j];
        const double* wrow = w.data() + j * r;
        if (sig[j] > 0.0) {
            const double inv = 1.0 / sig[j];
            for (std::size_t k = 0; k < r; ++k) out.U(k, i) = wrow[k] * inv;
        }
        const double* vrow = vt.data() + j * c;
        for (std::size_t k = 0; k < c; ++k) out.V(k, i) = vrow[k];
    }
    return out;
}

}  // namespace

SvdResult svd(const Matrix& m) {
    if (m.empty()) throw ValidationError("svd: empty matrix");
    m.require_finite("svd input");
    if (m.rows() >= m.cols()) return svd_tall(m);
    SvdResult t = svd_tall(m.transpose());
    return SvdResult{std::move(t.V), std::move(t.sigma), std::move(t.U)};
}

double RankTolerance::cutoff(double sigma_max, std::size_t rows,
                             std::size_t cols) const {
    if (absolute) return *absolute;
    return sigma_max * static_cast<double>(std::max(rows, cols)) * kEps;
}

std::vector<double> singular_values(const Matrix& m) { return svd(m).sigma; }

std::size_t numerical_rank(const SvdResult& s, std::size_t rows, std::size_t cols,
                           RankTolerance tol) {
    if (s.sigma.empty()) return 0;
    const double cut = tol.cutoff(s.sigma.front(), rows, cols);
    std::size_t rank = 0;
    for (double v : s.sigma)
        if (v > cut) ++rank;
    return rank;
}

std::size_t numerical_rank(const Matrix& m, RankTolerance tol) {
    return numerical_rank(svd(m), m.rows(), m.cols(), tol);
}

LstsqResult min_norm_lstsq(const Matrix& m, std::span<const double> rhs,
                           RankTolerance tol) {
    if (rhs.size() != m.rows())
        throw ValidationError("min_norm_lstsq: rhs length must equal row count");
    const SvdResult s = svd(m);
    const double cut = tol.cutoff(s.sigma.empty() ? 0.0 : s.sigma.front(),
                                  m.rows(), m.cols());

    LstsqResult out;
    out.x.assign(m.cols(), 0.0);
    out.rank = 0;
    const std::size_t k = s.sigma.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (s.sigma[i] <= cut) continue;
        ++out.rank;
        double proj = 0.0;
        for (std::size_t row = 0; row < m.rows(); ++row)
            proj += s.U(row, i) * rhs[row];
        const double coeff = proj / s.sigma[i];
        for (std::size_t col = 0; col < m.cols(); ++col)
            out.x[col] += coeff * s.V(col, i);
    }
    std::vector<double> mx = m.mul_vec(out.x);
    double acc = 0.0;
    for (std::size_t row = 0; row < m.rows(); ++row) {
        const double d = mx[row] - rhs[row];
        acc += d * d;
    }
    out.residual = std::sqrt(acc);
    return out;
}

Matrix pinv(const Matrix& m, RankTolerance tol) {
    const SvdResult s = svd(m);
    const double cut = tol.cutoff(s.sigma.empty() ? 0.0 : s.sigma.front(),
                                  m.rows(), m.cols());
    Matrix p(m.cols(), m.rows());
    for (std::size_t i = 0; i < s.sigma.size(); ++i) {
        if (s.sigma[i] <= cut) continue;
        const double inv = 1.0 / s.sigma[i];
        for (std::size_t a = 0; a < m.cols(); ++a) {
            const double coef = s.V(a, i) * inv;
            if (coef == 0.0) continue;
            for (std::size_t b = 0; b < m.rows(); ++b)
                p(a, b) += coef * s.U(b, i);
        }
    }
    return p;
}

std::optional<Matrix> kernel_basis(const Matrix& m, RankTolerance tol) {
    if (m.rows() < m.cols())
        throw ValidationError("kernel_basis: requires rows >= cols");
    const SvdResult s = svd(m);
    const std::size_t rank = numerical_rank(s, m.rows(), m.cols(), tol);
    const std::size_t dim = m.cols() - rank;
    if (dim == 0) return std::nullopt;
    Matrix basis(m.cols(), dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t row = 0; row < m.cols(); ++row)
            basis(row, i) = s.V(row, rank + i);
    return basis;
}

}  // namespace heatctl
