#include "heatctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatctl/errors.hpp"
#include "heatctl/expm.hpp"
#include "heatctl/kernels.hpp"

namespace heatctl {

namespace {

double frobenius_inner(const Matrix& a, const Matrix& b) {
    return kernels::dot(a.data(), b.data(), a.rows() * a.cols());
}

}  // namespace

void DomainSpec::validate() const {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ValidationError("domain.length: must be positive and finite");
    if (modes < 1) throw ValidationError("domain.modes: at least one mode required");
    std::vector<Interval> sorted = omega;
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& iv = sorted[i];
        if (!(iv.a >= 0.0 && iv.a < iv.b && iv.b <= length))
            throw ValidationError(
                "domain.omega[" + std::to_string(i) +
                "]: intervals must satisfy 0 <= a < b <= length");
        if (i > 0 && sorted[i - 1].b > iv.a)
            throw ValidationError("domain.omega: intervals must be disjoint");
    }
}

double DomainSpec::omega_measure() const {
    double total = 0.0;
    for (const auto& iv : omega) total += iv.b - iv.a;
    return total;
}

bool DomainSpec::omega_is_full() const {
    return omega_measure() >= length - 1e-12;
}

SpectralState SpectralState::zero(std::size_t modes, std::size_t components) {
    return SpectralState{Matrix(modes, components)};
}

SpectralControl SpectralControl::zero(std::size_t modes, std::size_t inputs) {
    return SpectralControl{Matrix(modes, inputs)};
}

double control_set_norm(const ControlSet& controls) {
    double acc = 0.0;
    for (const auto& u : controls) {
        const double n = u.norm();
        acc += n * n;
    }
    return std::sqrt(acc);
}

void SystemSpec::validate() const {
    pair.validate();
    domain.validate();
}

void ImpulseSchedule::validate() const {
    if (instants.empty()) throw ValidationError("schedule.instants: none given");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ValidationError("schedule.T: must be positive and finite");
    if (!(instants.front() > 0.0))
        throw ValidationError("schedule.instants: must be strictly positive");
    for (std::size_t i = 1; i < instants.size(); ++i)
        if (!(instants[i] > instants[i - 1]))
            throw ValidationError("schedule.instants: must be strictly increasing");
    if (!(instants.back() < horizon))
        throw ValidationError("schedule.instants: must end strictly before T");
}

InstantSequence ImpulseSchedule::as_sequence() const {
    return InstantSequence{instants, horizon};
}

std::vector<double> laplacian_eigenvalues(const DomainSpec& domain) {
    std::vector<double> lambda(domain.modes);
    for (std::size_t j = 0; j < domain.modes; ++j) {
        const double k = static_cast<double>(j + 1) * std::numbers::pi / domain.length;
        lambda[j] = k * k;
    }
    return lambda;
}

double basis_value(const DomainSpec& domain, std::size_t j, double x) {
    const double l = domain.length;
    return std::sqrt(2.0 / l) *
           std::sin(static_cast<double>(j) * std::numbers::pi * x / l);
}

std::vector<double> constant_profile_coeffs(const DomainSpec& domain) {
    std::vector<double> c(domain.modes, 0.0);
    const double l = domain.length;
    for (std::size_t j = 1; j <= domain.modes; ++j) {
        if (j % 2 == 0) continue;  // even modes integrate to zero
        c[j - 1] = std::sqrt(2.0 / l) * 2.0 * l /
                   (static_cast<double>(j) * std::numbers::pi);
    }
    return c;
}

Matrix omega_gram(const DomainSpec& domain) {
    domain.validate();
    const std::size_t n = domain.modes;
    // Full-domain control: the basis is orthonormal, so W is exactly the
    // identity. Evaluating the primitives would leave O(eps) residue at
    // multiples of pi instead.
    if (domain.omega_is_full()) return Matrix::identity(n);
    const double l = domain.length;
    const double pi = std::numbers::pi;
    Matrix w(n, n);

    // Closed-form primitives of sin(j pi x / L) sin(l pi x / L).
    auto off_diag_primitive = [&](std::size_t j, std::size_t k, double x) {
        const double dj = static_cast<double>(j);
        const double dk = static_cast<double>(k);
        return std::sin((dj - dk) * pi * x / l) * l / (2.0 * (dj - dk) * pi) -
               std::sin((dj + dk) * pi * x / l) * l / (2.0 * (dj + dk) * pi);
    };
    auto diag_primitive = [&](std::size_t j, double x) {
        const double dj = static_cast<double>(j);
        return x / 2.0 - std::sin(2.0 * dj * pi * x / l) * l / (4.0 * dj * pi);
    };

    for (const auto& iv : domain.omega) {
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t k = j; k <= n; ++k) {
                double contrib;
                if (j == k) {
                    contrib = diag_primitive(j, iv.b) - diag_primitive(j, iv.a);
                } else {
                    contrib = off_diag_primitive(j, k, iv.b) -
                              off_diag_primitive(j, k, iv.a);
                }
                contrib *= 2.0 / l;
                w(j - 1, k - 1) += contrib;
                if (j != k) w(k - 1, j - 1) += contrib;
            }
        }
    }
    return w;
}

namespace {

SpectralState flow_impl(const SpectralState& state, const Matrix& a,
                        std::span<const double> lambda, double dt, bool adjoint) {
    if (dt < 0.0) throw ValidationError("flow: dt must be nonnegative");
    if (!a.square() || a.rows() != state.components())
        throw ValidationError("flow: coupling matrix size must match components");
    if (lambda.size() != state.modes())
        throw ValidationError("flow: eigenvalue count must match modes");
    if (dt == 0.0) return state;

    const Matrix e = adjoint ? expm(a.transpose(), -dt) : expm(a, -dt);
    SpectralState out{state.coeffs * e.transpose()};
    for (std::size_t j = 0; j < out.modes(); ++j) {
        const double decay = std::exp(-lambda[j] * dt);
        kernels::scal(decay, out.coeffs.data() + j * out.components(),
                      out.components());
    }
    return out;
}

}  // namespace

SpectralState free_flow(const SpectralState& state, const Matrix& a,
                        std::span<const double> lambda, double dt) {
    return flow_impl(state, a, lambda, dt, false);
}

SpectralState adjoint_flow(const SpectralState& state, const Matrix& a,
                           std::span<const double> lambda, double dt) {
    return flow_impl(state, a, lambda, dt, true);
}

SpectralState apply_impulse(const SpectralState& state, const Matrix& gram,
                            const Matrix& b, const SpectralControl& u) {
    if (u.coeffs.cols() != b.cols())
        throw ValidationError("apply_impulse: control width must match B columns");
    if (u.coeffs.rows() != state.modes() || gram.rows() != state.modes() ||
        gram.cols() != state.modes() || b.rows() != state.components())
        throw ValidationError("apply_impulse: dimension mismatch");
    const Matrix jump = gram * (u.coeffs * b.transpose());
    SpectralState out = state;
    out.coeffs += jump;
    return out;
}

Trajectory evolve(const SystemSpec& spec, const SpectralState& y0,
                  const ImpulseSchedule& schedule, const ControlSet& controls) {
    spec.validate();
    schedule.validate();
    if (controls.size() != schedule.count())
        throw ValidationError("evolve: one control per instant required (got " +
                              std::to_string(controls.size()) + " controls for " +
                              std::to_string(schedule.count()) + " instants)");
    if (y0.modes() != spec.domain.modes || y0.components() != spec.pair.n())
        throw ValidationError("evolve: initial state shape mismatch");
    for (const auto& u : controls)
        if (u.coeffs.rows() != spec.domain.modes || u.coeffs.cols() != spec.pair.m())
            throw ValidationError("evolve: control shape mismatch");

    const std::vector<double> lambda = laplacian_eigenvalues(spec.domain);
    const Matrix gram = omega_gram(spec.domain);

    Trajectory traj;
    traj.points.push_back({0.0, TrajectoryEvent::initial, y0});
    SpectralState state = y0;
    double t = 0.0;
    for (std::size_t k = 0; k < schedule.count(); ++k) {
        const double tau = schedule.instants[k];
        state = free_flow(state, spec.pair.A, lambda, tau - t);
        traj.points.push_back({tau, TrajectoryEvent::pre_impulse, state});
        state = apply_impulse(state, gram, spec.pair.B, controls[k]);
        traj.points.push_back({tau, TrajectoryEvent::post_impulse, state});
        t = tau;
    }
    state = free_flow(state, spec.pair.A, lambda, schedule.horizon - t);
    traj.points.push_back({schedule.horizon, TrajectoryEvent::final_state, state});
    return traj;
}

DualityReport duality_pairing(const SystemSpec& spec, const SpectralState& y0,
                              const ImpulseSchedule& schedule,
                              const ControlSet& controls, const SpectralState& z) {
    if (z.modes() != spec.domain.modes || z.components() != spec.pair.n())
        throw ValidationError("duality_pairing: probe state shape mismatch");
    const Trajectory traj = evolve(spec, y0, schedule, controls);
    const double direct = frobenius_inner(traj.final_state().coeffs, z.coeffs);

    const std::vector<double> lambda = laplacian_eigenvalues(spec.domain);
    const Matrix gram = omega_gram(spec.domain);
    double adjoint_side = frobenius_inner(
        y0.coeffs, adjoint_flow(z, spec.pair.A, lambda, schedule.horizon).coeffs);
    for (std::size_t k = 0; k < schedule.count(); ++k) {
        const SpectralState zeta =
            adjoint_flow(z, spec.pair.A, lambda, schedule.horizon - schedule.instants[k]);
        const Matrix observed = gram * (zeta.coeffs * spec.pair.B);
        adjoint_side += frobenius_inner(controls[k].coeffs, observed);
    }
    return DualityReport{direct, adjoint_side, std::abs(direct - adjoint_side)};
}

}  // namespace heatctl
