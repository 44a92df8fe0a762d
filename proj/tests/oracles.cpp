#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heatctl/decomp.hpp"

namespace heatctl::testing {

Matrix naive_matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

std::vector<double> jacobi_symmetric_eigenvalues(Matrix m) {
    const std::size_t n = m.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (m(p, q) == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
    std::sort(eig.rbegin(), eig.rend());
    return eig;
}

double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t n) {
    if (n % 2 == 1) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * f(a + static_cast<double>(i) * h);
    }
    return acc * h / 3.0;
}

namespace {

struct Block2 {
    double a, b, c, d;  // [[a, b], [c, d]]

    Block2 inverse() const {
        const double det = a * d - b * c;
        if (det == 0.0) throw std::runtime_error("singular 2x2 block");
        const double inv = 1.0 / det;
        return {d * inv, -b * inv, -c * inv, a * inv};
    }
    Block2 operator*(const Block2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                c * o.b + d * o.d};
    }
    Block2 operator-(const Block2& o) const {
        return {a - o.a, b - o.b, c - o.c, d - o.d};
    }
    void apply(double x0, double x1, double& y0, double& y1) const {
        y0 = a * x0 + b * x1;
        y1 = c * x0 + d * x1;
    }
};

}  // namespace

CoupledHeatFd crank_nicolson_coupled(const Matrix& a_coupling, double length,
                                     std::size_t npts, double dt, double horizon,
                                     CoupledHeatFd state) {
    const double h = length / static_cast<double>(npts + 1);
    const double mu = dt / (h * h);

    const Block2 acpl{a_coupling(0, 0), a_coupling(0, 1), a_coupling(1, 0),
                      a_coupling(1, 1)};
    // LHS diagonal block and scalar off-diagonal coupling (E = -mu/2 I).
    const Block2 diag{1.0 + mu + 0.5 * dt * acpl.a, 0.5 * dt * acpl.b,
                      0.5 * dt * acpl.c, 1.0 + mu + 0.5 * dt * acpl.d};
    const Block2 rdiag{1.0 - mu - 0.5 * dt * acpl.a, -0.5 * dt * acpl.b,
                       -0.5 * dt * acpl.c, 1.0 - mu - 0.5 * dt * acpl.d};
    const double e = -0.5 * mu;

    std::vector<Block2> cfac(npts);
    std::vector<double> d0(npts), d1(npts), r0(npts), r1(npts);

    double t = 0.0;
    while (t < horizon - 1e-15) {
        const double step = std::min(dt, horizon - t);
        const bool shortened = step != dt;
        const double mu_s = step / (h * h);
        const Block2 diag_s =
            shortened ? Block2{1.0 + mu_s + 0.5 * step * acpl.a, 0.5 * step * acpl.b,
                               0.5 * step * acpl.c, 1.0 + mu_s + 0.5 * step * acpl.d}
                      : diag;
        const Block2 rdiag_s =
            shortened
                ? Block2{1.0 - mu_s - 0.5 * step * acpl.a, -0.5 * step * acpl.b,
                         -0.5 * step * acpl.c, 1.0 - mu_s - 0.5 * step * acpl.d}
                : rdiag;
        const double e_s = shortened ? -0.5 * mu_s : e;

        for (std::size_t i = 0; i < npts; ++i) {
            const double left0 = (i > 0) ? state.comp0[i - 1] : 0.0;
            const double left1 = (i > 0) ? state.comp1[i - 1] : 0.0;
            const double right0 = (i + 1 < npts) ? state.comp0[i + 1] : 0.0;
            const double right1 = (i + 1 < npts) ? state.comp1[i + 1] : 0.0;
            double y0, y1;
            rdiag_s.apply(state.comp0[i], state.comp1[i], y0, y1);
            r0[i] = y0 + 0.5 * mu_s * (left0 + right0);
            r1[i] = y1 + 0.5 * mu_s * (left1 + right1);
        }

        // Block Thomas sweep (off-diagonal blocks are e_s * I).
        Block2 w = diag_s;
        Block2 winv = w.inverse();
        cfac[0] = {winv.a * e_s, winv.b * e_s, winv.c * e_s, winv.d * e_s};
        winv.apply(r0[0], r1[0], d0[0], d1[0]);
        for (std::size_t i = 1; i < npts; ++i) {
            const Block2 sub{e_s * cfac[i - 1].a, e_s * cfac[i - 1].b,
                             e_s * cfac[i - 1].c, e_s * cfac[i - 1].d};
            w = diag_s - sub;
            winv = w.inverse();
            cfac[i] = {winv.a * e_s, winv.b * e_s, winv.c * e_s, winv.d * e_s};
            const double rr0 = r0[i] - e_s * d0[i - 1];
            const double rr1 = r1[i] - e_s * d1[i - 1];
            winv.apply(rr0, rr1, d0[i], d1[i]);
        }
        state.comp0[npts - 1] = d0[npts - 1];
        state.comp1[npts - 1] = d1[npts - 1];
        for (std::size_t i = npts - 1; i-- > 0;) {
            double y0, y1;
            cfac[i].apply(state.comp0[i + 1], state.comp1[i + 1], y0, y1);
            state.comp0[i] = d0[i] - y0;
            state.comp1[i] = d1[i] - y1;
        }
        t += step;
    }
    return state;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                     double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
    return m;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo,
                                  double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

ControlPair random_controllable_pair(std::mt19937_64& rng, std::size_t n,
                                     std::size_t m, double lo, double hi) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        ControlPair pair{random_matrix(rng, n, n, lo, hi),
                         random_matrix(rng, n, m, lo, hi)};
        if (is_kalman_controllable(pair)) return pair;
    }
    throw std::runtime_error("random_controllable_pair: no controllable draw");
}

}  // namespace heatctl::testing
