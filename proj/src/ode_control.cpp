#include "heatctl/ode_control.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heatctl/eigen.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/expm.hpp"
#include "heatctl/tolerances.hpp"

namespace heatctl {

void ControlPair::validate() const {
    if (!A.square()) throw ValidationError("A must be square");
    if (B.rows() != A.rows())
        throw ValidationError("B must have as many rows as A");
    A.require_finite("A");
    B.require_finite("B");
}

void InstantSequence::validate() const {
    if (instants.empty()) throw ValidationError("instants: at least one is required");
    for (double t : instants)
        if (!std::isfinite(t)) throw ValidationError("instants: must be finite");
    for (std::size_t i = 1; i < instants.size(); ++i)
        if (!(instants[i] > instants[i - 1]))
            throw ValidationError("instants: must be strictly increasing");
    if (horizon) {
        if (!std::isfinite(*horizon) || *horizon <= 0.0)
            throw ValidationError("horizon: must be a positive finite time");
        if (!(instants.front() > 0.0))
            throw ValidationError("instants: must be strictly positive on a horizon");
        if (!(instants.back() < *horizon))
            throw ValidationError("instants: must lie strictly before the horizon");
    }
}

CompanionSystem CompanionSystem::from_matrix(const Matrix& a) {
    CharPoly cp = char_poly(a);
    const std::size_t n = cp.coeffs.size();
    Matrix ahat(n, n);
    for (std::size_t i = 1; i < n; ++i) ahat(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < n; ++i) ahat(i, n - 1) = -cp.coeffs[i];
    return CompanionSystem{std::move(cp.coeffs), std::move(ahat)};
}

FactorizationPair::FactorizationPair(double b_, double c_, double t0_)
    : b(b_), c(c_), t0(t0_) {
    if (c == 0.0)
        throw ValidationError(
            "factorization pair: c must be nonzero (a zero imaginary part "
            "factors through first-order shifts directly)");
}

double FactorizationPair::half_width() const {
    return std::numbers::pi / (2.0 * std::abs(c));
}

bool FactorizationPair::in_domain(double t) const {
    return std::abs(t - t0) < half_width();
}

double FactorizationPair::phi1(double t) const {
    return -b * (t - t0) + std::log(std::cos(c * (t - t0)));
}

double FactorizationPair::phi2(double t) const {
    return -b * (t - t0) - std::log(std::cos(c * (t - t0)));
}

double FactorizationPair::dphi1(double t) const {
    return -b - c * std::tan(c * (t - t0));
}

double FactorizationPair::dphi2(double t) const {
    return -b + c * std::tan(c * (t - t0));
}

double FactorizationPair::ddphi2(double t) const {
    const double sec = 1.0 / std::cos(c * (t - t0));
    return c * c * sec * sec;
}

Matrix kalman_matrix(const ControlPair& pair) {
    pair.validate();
    const std::size_t n = pair.n();
    std::vector<Matrix> blocks;
    blocks.reserve(n);
    Matrix power = pair.B;
    blocks.push_back(power);
    for (std::size_t i = 1; i < n; ++i) {
        power = pair.A * power;
        blocks.push_back(power);
    }
    return hstack(blocks);
}

bool is_kalman_controllable(const ControlPair& pair, RankTolerance tol) {
    return numerical_rank(kalman_matrix(pair), tol) == pair.n();
}

double critical_window(const Matrix& a) {
    if (!a.square()) throw ValidationError("critical_window: matrix must be square");
    const Spectrum spec = eigenvalues(a);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& lambda : spec.values) {
        const double im = std::abs(lambda.imag());
        if (im <= tol::kRealImagCut * (1.0 + std::abs(lambda))) continue;
        best = std::min(best, std::numbers::pi / im);
    }
    return best;
}

Matrix sampled_controllability_matrix(const ControlPair& pair,
                                      const InstantSequence& instants,
                                      SampleMode mode) {
    pair.validate();
    instants.validate();
    if (mode == SampleMode::time_reversed && !instants.horizon)
        throw ValidationError(
            "sampled matrix: time-reversed mode needs a horizon T");
    std::vector<Matrix> blocks;
    blocks.reserve(instants.count());
    for (double tau : instants.instants) {
        const double t = (mode == SampleMode::forward) ? tau : *instants.horizon - tau;
        blocks.push_back(expm(pair.A, t) * pair.B);
    }
    return hstack(blocks);
}

WindowRankReport window_rank_check(const ControlPair& pair,
                                   const InstantSequence& instants,
                                   RankTolerance tol) {
    pair.validate();
    instants.validate();
    if (instants.count() != pair.n())
        throw ValidationError(
            "window check: expected exactly n = " + std::to_string(pair.n()) +
            " instants, got " + std::to_string(instants.count()));
    WindowRankReport rep{};
    rep.window = instants.span();
    rep.d_A = critical_window(pair.A);
    rep.window_ok = rep.window < rep.d_A;
    rep.boundary_case = std::isfinite(rep.d_A) &&
                        std::abs(rep.window - rep.d_A) < tol::kWindowBoundaryBand;
    rep.rank = numerical_rank(
        sampled_controllability_matrix(pair, instants, SampleMode::forward), tol);
    rep.rank_full = rep.rank == pair.n();
    return rep;
}

OdeSteering steer_ode(const ControlPair& pair, const InstantSequence& instants,
                      std::span<const double> z0, std::span<const double> z1,
                      RankTolerance tol) {
    pair.validate();
    instants.validate();
    if (!instants.horizon)
        throw ValidationError("steer_ode: instants need a horizon T");
    const std::size_t n = pair.n();
    const std::size_t m = pair.m();
    if (z0.size() != n || z1.size() != n)
        throw ValidationError("steer_ode: state vectors must have length n");

    const Matrix stacked =
        sampled_controllability_matrix(pair, instants, SampleMode::time_reversed);
    const std::vector<double> drift = expm(pair.A, *instants.horizon).mul_vec(z0);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = z1[i] - drift[i];

    LstsqResult ls = min_norm_lstsq(stacked, rhs, tol);
    OdeSteering out;
    out.residual = ls.residual;
    out.controls.resize(instants.count());
    for (std::size_t k = 0; k < instants.count(); ++k)
        out.controls[k] = {ls.x.begin() + static_cast<std::ptrdiff_t>(k * m),
                           ls.x.begin() + static_cast<std::ptrdiff_t>((k + 1) * m)};
    return out;
}

std::vector<double> companion_flow_coeffs(const Matrix& a, double t) {
    if (!a.square())
        throw ValidationError("companion_flow_coeffs: matrix must be square");
    const CompanionSystem comp = CompanionSystem::from_matrix(a);
    const Matrix flow = expm(comp.Ahat, t);
    return flow.col(0);  // e^{Ahat t} e_1
}

CoeffSampleMatrix coeff_sample_matrix(const Matrix& a,
                                      const InstantSequence& instants,
                                      RankTolerance tol) {
    instants.validate();
    const std::size_t n = a.rows();
    if (instants.count() != n)
        throw ValidationError("coeff_sample_matrix: needs exactly n instants");
    const CompanionSystem comp = CompanionSystem::from_matrix(a);
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::vector<double> f = expm(comp.Ahat, instants.instants[k]).col(0);
        for (std::size_t i = 0; i < n; ++i) m(i, k) = f[i];
    }
    const std::size_t rank = numerical_rank(m, tol);
    return CoeffSampleMatrix{std::move(m), rank};
}

double factorization_defect(double b, double c, double t0, std::size_t samples,
                            double margin) {
    FactorizationPair fp(b, c, t0);
    if (samples == 0) throw ValidationError("factorization_defect: samples >= 1");
    margin = std::max(margin, 1e-3);
    if (margin >= 1.0)
        throw ValidationError("factorization_defect: margin must stay below 1");
    const double h = fp.half_width() * (1.0 - margin);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double frac = (samples == 1)
                                ? 0.0
                                : -1.0 + 2.0 * static_cast<double>(i) /
                                             static_cast<double>(samples - 1);
        const double t = t0 + frac * h;
        const double d1 = fp.dphi1(t);
        const double d2 = fp.dphi2(t);
        const double dd2 = fp.ddphi2(t);
        const double defect_sum = std::abs(d1 + d2 + 2.0 * b);
        const double defect_prod = std::abs(d1 * d2 + dd2 - (b * b + c * c));
        worst = std::max({worst, defect_sum, defect_prod});
    }
    return worst;
}

}  // namespace heatctl
