#include "heatctl/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "heatctl/errors.hpp"

namespace heatctl {

namespace {

using cplx = std::complex<double>;

// Faddeev-LeVerrier recursion. Returns coefficients of the monic
// characteristic polynomial, ascending by degree.
std::vector<double> faddeev_leverrier(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> c(n + 1, 0.0);  // c[k] multiplies lambda^k, c[n] = 1
    c[n] = 1.0;
    Matrix mk = a;
    for (std::size_t k = 1; k <= n; ++k) {
        const double ck = mk.trace() / static_cast<double>(k);
        c[n - k] = -ck;
        if (k == n) break;
        Matrix shifted = mk;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= ck;
        mk = a * shifted;
    }
    c.pop_back();  // drop the leading 1
    return c;
}

// Greedy conjugate pairing. Roots of a real polynomial come in conjugate
// pairs up to iteration error; this snaps them to exact pairs and collapses
// stragglers with negligible imaginary part onto the real axis.
std::vector<cplx> symmetrize_conjugates(std::vector<cplx> roots) {
    std::vector<cplx> out;
    out.reserve(roots.size());
    std::vector<char> used(roots.size(), 0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const cplx z = roots[i];
        used[i] = 1;
        if (std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z))) {
            out.emplace_back(z.real(), 0.0);
            continue;
        }
        std::size_t best = roots.size();
        double best_dist = 0.0;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(roots[j] - std::conj(z));
            if (best == roots.size() || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best == roots.size()) {
            out.emplace_back(z.real(), 0.0);
            continue;
        }
        used[best] = 1;
        const cplx w = 0.5 * (z + std::conj(roots[best]));
        out.emplace_back(w.real(), std::abs(w.imag()));
        out.emplace_back(w.real(), -std::abs(w.imag()));
    }
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace

std::complex<double> poly_eval(const std::vector<double>& coeffs, cplx z) {
    cplx acc(1.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

std::vector<cplx> poly_roots(const std::vector<double>& coeffs) {
    const std::size_t n = coeffs.size();
    if (n == 0) return {};
    if (n == 1) return {cplx(-coeffs[0], 0.0)};

    std::vector<double> dcoeffs(n - 1);  // derivative, non-monic leading n
    for (std::size_t i = 1; i < n; ++i)
        dcoeffs[i - 1] = coeffs[i] * static_cast<double>(i);
    auto deval = [&](cplx z) {
        cplx acc(static_cast<double>(n), 0.0);
        for (std::size_t i = n - 1; i-- > 0;) acc = acc * z + dcoeffs[i];
        return acc;
    };

    double radius = 0.0;
    for (double a : coeffs) radius = std::max(radius, std::abs(a));
    radius = 1.0 + radius;

    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ang =
            2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n) +
            0.7;
        z[i] = radius * cplx(std::cos(ang), std::sin(ang));
    }

    const int max_iter = 400;
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx pz = poly_eval(coeffs, z[i]);
            if (pz == cplx(0.0, 0.0)) continue;
            cplx dz = deval(z[i]);
            if (dz == cplx(0.0, 0.0)) {
                z[i] += cplx(1e-8 * (1.0 + std::abs(z[i])), 1e-8);
                worst = 1.0;
                continue;
            }
            const cplx newton = pz / dz;
            cplx repel(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx diff = z[i] - z[j];
                if (diff == cplx(0.0, 0.0)) diff = cplx(1e-12, 1e-12);
                repel += 1.0 / diff;
            }
            const cplx denom = 1.0 - newton * repel;
            const cplx step = (denom == cplx(0.0, 0.0)) ? newton : newton / denom;
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (worst <= 5e-15) return z;
    }
    throw NumericalError(
        "poly_roots: Aberth iteration did not converge (ill-conditioned polynomial)");
}

CharPoly char_poly(const Matrix& m) {
    if (!m.square()) throw ValidationError("char_poly: matrix must be square");
    m.require_finite("char_poly input");
    const std::size_t n = m.rows();
    const double s = m.max_abs();
    if (s == 0.0) return CharPoly{std::vector<double>(n, 0.0)};

    Matrix scaled = m;
    scaled *= 1.0 / s;
    std::vector<double> cs = faddeev_leverrier(scaled);
    // Undo the scaling: coefficient of lambda^i picks up s^(n-i).
    double f = s;
    for (std::size_t i = n; i-- > 0;) {
        cs[i] *= f;
        f *= s;
    }
    return CharPoly{std::move(cs)};
}

Spectrum eigenvalues(const Matrix& m) {
    if (!m.square()) throw ValidationError("eigenvalues: matrix must be square");
    if (m.rows() > kEigenDimCap)
        throw ValidationError("eigenvalues: dimension exceeds the supported cap of 32");
    m.require_finite("eigenvalues input");
    const std::size_t n = m.rows();
    if (n == 1) return Spectrum{{cplx(m(0, 0), 0.0)}};

    const double s = m.max_abs();
    if (s == 0.0) return Spectrum{std::vector<cplx>(n, cplx(0.0, 0.0))};

    Matrix scaled = m;
    scaled *= 1.0 / s;
    const std::vector<double> cs = faddeev_leverrier(scaled);
    std::vector<cplx> roots = poly_roots(cs);
    for (auto& r : roots) r *= s;
    roots = symmetrize_conjugates(std::move(roots));

    // Residual acceptance: every root must nearly annihilate the
    // characteristic polynomial of the unscaled matrix.
    const CharPoly cp = char_poly(m);
    for (const cplx& r : roots) {
        const double bound = 1e-8 * std::pow(1.0 + std::abs(r), static_cast<double>(n));
        if (std::abs(poly_eval(cp.coeffs, r)) > bound)
            throw NumericalError("eigenvalues: root residual exceeds tolerance");
    }
    cplx sum(0.0, 0.0);
    for (const cplx& r : roots) sum += r;
    const double tr = m.trace();
    if (std::abs(sum - cplx(tr, 0.0)) > 1e-8 * (1.0 + std::abs(tr)))
        throw NumericalError("eigenvalues: eigenvalue sum drifted from the trace");

    return Spectrum{std::move(roots)};
}

}  // namespace heatctl
