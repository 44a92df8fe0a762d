#include "heatctl/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "heatctl/errors.hpp"
#include "heatctl/expm.hpp"
#include "heatctl/kernels.hpp"
#include "heatctl/tolerances.hpp"

namespace heatctl {

namespace {

std::vector<double> flatten_state(const SpectralState& s) {
    const double* d = s.coeffs.data();
    return std::vector<double>(d, d + s.modes() * s.components());
}

}  // namespace

ControlSet ReachabilityMap::unflatten(std::span<const double> x) const {
    if (x.size() != impulse_count * modes * inputs)
        throw ValidationError("unflatten: coefficient count mismatch");
    ControlSet controls;
    controls.reserve(impulse_count);
    for (std::size_t k = 0; k < impulse_count; ++k) {
        SpectralControl u = SpectralControl::zero(modes, inputs);
        std::copy(x.begin() + static_cast<std::ptrdiff_t>(k * modes * inputs),
                  x.begin() + static_cast<std::ptrdiff_t>((k + 1) * modes * inputs),
                  u.coeffs.data());
        controls.push_back(std::move(u));
    }
    return controls;
}

std::vector<double> ReachabilityMap::flatten(const ControlSet& controls) const {
    if (controls.size() != impulse_count)
        throw ValidationError("flatten: control count mismatch");
    std::vector<double> x;
    x.reserve(impulse_count * modes * inputs);
    for (const auto& u : controls) {
        const double* d = u.coeffs.data();
        x.insert(x.end(), d, d + modes * inputs);
    }
    return x;
}

ReachabilityMap assemble_reachability(const SystemSpec& spec,
                                      const ImpulseSchedule& schedule) {
    spec.validate();
    schedule.validate();
    const std::size_t nmodes = spec.domain.modes;
    const std::size_t n = spec.pair.n();
    const std::size_t m = spec.pair.m();
    const std::size_t p = schedule.count();
    const std::size_t rows = nmodes * n;
    const std::size_t cols = p * nmodes * m;
    if (rows * cols > 10'000'000)
        throw ValidationError("assemble_reachability: operator too large (" +
                              std::to_string(rows) + " x " + std::to_string(cols) +
                              " entries exceed the 1e7 guard)");

    const std::vector<double> lambda = laplacian_eigenvalues(spec.domain);
    const Matrix gram = omega_gram(spec.domain);

    ReachabilityMap map;
    map.G = Matrix(rows, cols);
    map.modes = nmodes;
    map.components = n;
    map.inputs = m;
    map.impulse_count = p;
    map.instants = schedule.instants;
    map.horizon = schedule.horizon;

    for (std::size_t k = 0; k < p; ++k) {
        const double dt = schedule.horizon - schedule.instants[k];
        const Matrix ekb = expm(spec.pair.A, -dt) * spec.pair.B;
        for (std::size_t l = 0; l < nmodes; ++l) {
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t col = map.col_index(k, l, i);
                for (std::size_t j = 0; j < nmodes; ++j) {
                    const double w = gram(j, l);
                    if (w == 0.0) continue;
                    const double decay = std::exp(-lambda[j] * dt) * w;
                    for (std::size_t comp = 0; comp < n; ++comp)
                        map.G(j * n + comp, col) = decay * ekb(comp, i);
                }
            }
        }
    }

    // Deterministic spot check: re-derive a 1% column sample through the
    // simulator and compare.
    const std::size_t checks = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::ceil(tol::kSpotCheckFraction * static_cast<double>(cols))));
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ (rows * 1315423911ull + cols));
    std::uniform_int_distribution<std::size_t> pick(0, cols - 1);
    const SpectralState zero_state = SpectralState::zero(nmodes, n);
    for (std::size_t t = 0; t < checks; ++t) {
        const std::size_t col = pick(rng);
        const std::size_t k = col / (nmodes * m);
        const std::size_t l = (col / m) % nmodes;
        const std::size_t i = col % m;
        ControlSet unit(p, SpectralControl::zero(nmodes, m));
        unit[k].coeffs(l, i) = 1.0;
        const std::vector<double> endpoint =
            flatten_state(evolve(spec, zero_state, schedule, unit).final_state());
        double diff = 0.0;
        double colnorm = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            const double g = map.G(r, col);
            diff = std::max(diff, std::abs(endpoint[r] - g));
            colnorm = std::max(colnorm, std::abs(g));
        }
        if (diff > tol::kIdentityDefect * std::max(1.0, colnorm))
            throw NumericalError(
                "assemble_reachability: column " + std::to_string(col) +
                " disagrees with the simulator by " + std::to_string(diff));
    }
    return map;
}

SteeringResult steer_approx(const SystemSpec& spec, const ImpulseSchedule& schedule,
                            const SpectralState& y0, const SpectralState& y1,
                            RankTolerance tol) {
    spec.validate();
    schedule.validate();
    if (y0.modes() != spec.domain.modes || y0.components() != spec.pair.n() ||
        y1.modes() != spec.domain.modes || y1.components() != spec.pair.n())
        throw ValidationError("steer_approx: state shape mismatch");

    const ReachabilityMap map = assemble_reachability(spec, schedule);
    const std::vector<double> lambda = laplacian_eigenvalues(spec.domain);
    const SpectralState drift = free_flow(y0, spec.pair.A, lambda, schedule.horizon);
    const std::vector<double> drift_flat = flatten_state(drift);
    const std::vector<double> target_flat = flatten_state(y1);
    std::vector<double> rhs(target_flat.size());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = target_flat[i] - drift_flat[i];

    const LstsqResult ls = min_norm_lstsq(map.G, rhs, tol);

    SteeringResult out;
    out.controls = map.unflatten(ls.x);
    out.residual = ls.residual;
    out.control_norm = vec_norm(ls.x);
    out.achieved = evolve(spec, y0, schedule, out.controls).final_state();

    // The simulated endpoint must reproduce G u + e^{A T} y0.
    const std::vector<double> gu = map.G.mul_vec(ls.x);
    const std::vector<double> achieved_flat = flatten_state(out.achieved);
    double diff = 0.0;
    for (std::size_t i = 0; i < gu.size(); ++i)
        diff = std::max(diff, std::abs(achieved_flat[i] - gu[i] - drift_flat[i]));
    if (diff > tol::kIdentityDefect * std::max(1.0, out.achieved.norm()))
        throw NumericalError("steer_approx: simulated endpoint drifted from the "
                             "assembled operator by " + std::to_string(diff));
    return out;
}

std::vector<Matrix> build_projections(const ControlPair& pair,
                                      const InstantSequence& instants,
                                      RankTolerance tol) {
    pair.validate();
    instants.validate();
    const std::size_t n = pair.n();
    const std::size_t m = pair.m();
    const std::size_t p = instants.count();
    const Matrix sampled =
        sampled_controllability_matrix(pair, instants, SampleMode::forward);
    if (numerical_rank(sampled, tol) != n)
        throw ValidationError(
            "build_projections: the sampled matrix (e^{A tau_1}B, ...) is rank "
            "deficient at these instants; the identity cannot be decomposed "
            "across the reachable subspaces");

    std::vector<Matrix> blocks;
    blocks.reserve(p);
    for (double tau : instants.instants) blocks.push_back(expm(pair.A, tau) * pair.B);

    std::vector<Matrix> projections(p, Matrix(n, n));
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        const LstsqResult ls = min_norm_lstsq(sampled, e, tol);
        for (std::size_t k = 0; k < p; ++k) {
            const std::span<const double> beta(ls.x.data() + k * m, m);
            const std::vector<double> column = blocks[k].mul_vec(beta);
            projections[k].set_col(j, column);
        }
    }
    return projections;
}

ControlSet null_control_full_domain(const SystemSpec& spec,
                                    const ImpulseSchedule& schedule,
                                    const SpectralState& y0, RankTolerance tol) {
    spec.validate();
    schedule.validate();
    if (!spec.domain.omega_is_full())
        throw ValidationError(
            "null control: the construction needs the control region to cover "
            "the whole domain; with a strict subregion no impulse schedule can "
            "reach the zero state exactly");
    const std::size_t n = spec.pair.n();
    if (schedule.count() != n)
        throw ValidationError("null control: exactly n = " + std::to_string(n) +
                              " impulse instants are required");
    if (y0.modes() != spec.domain.modes || y0.components() != n)
        throw ValidationError("null control: initial state shape mismatch");
    const double d_a = critical_window(spec.pair.A);
    if (!(schedule.span() < d_a))
        throw ValidationError(
            "null control: impulse window tau_n - tau_1 = " +
            std::to_string(schedule.span()) + " must be strictly less than d_A = " +
            std::to_string(d_a) + " for the sampled rank guarantee");
    if (!is_kalman_controllable(spec.pair, tol))
        throw ValidationError(
            "null control: the pair (A, B) fails the controllability rank test");

    const Matrix c = pinv(spec.pair.B, tol);
    const std::vector<Matrix> projections =
        build_projections(spec.pair, schedule.as_sequence(), tol);
    const std::vector<double> lambda = laplacian_eigenvalues(spec.domain);

    ControlSet controls;
    controls.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double tau = schedule.instants[k];
        const Matrix mk = c * expm(spec.pair.A, -tau) * projections[k];
        SpectralControl u{y0.coeffs * mk.transpose()};
        for (std::size_t j = 0; j < u.coeffs.rows(); ++j)
            kernels::scal(-std::exp(-lambda[j] * tau),
                          u.coeffs.data() + j * u.coeffs.cols(), u.coeffs.cols());
        controls.push_back(std::move(u));
    }
    return controls;
}

ObstructionWitness obstruction_witness(const SystemSpec& spec,
                                       const ImpulseSchedule& schedule) {
    spec.validate();
    schedule.validate();
    const std::size_t n = spec.pair.n();
    const Matrix kalman = kalman_matrix(spec.pair);
    if (numerical_rank(kalman) == n)
        throw ValidationError(
            "obstruction witness: the pair (A, B) passes the controllability "
            "rank test, so every direction is approximately reachable and no "
            "witness exists");

    const auto basis = kernel_basis(kalman.transpose());
    if (!basis)
        throw NumericalError("obstruction witness: kernel extraction failed");
    std::vector<double> alpha = basis->col(0);

    ObstructionWitness out;
    out.alpha = alpha;
    out.zhat = SpectralState::zero(spec.domain.modes, n);
    const std::vector<double> profile = constant_profile_coeffs(spec.domain);
    for (std::size_t j = 0; j < spec.domain.modes; ++j)
        for (std::size_t comp = 0; comp < n; ++comp)
            out.zhat.coeffs(j, comp) = profile[j] * alpha[comp];

    const ReachabilityMap map = assemble_reachability(spec, schedule);
    const std::vector<double> zflat = flatten_state(out.zhat);
    double defect = 0.0;
    for (std::size_t col = 0; col < map.G.cols(); ++col) {
        double acc = 0.0;
        for (std::size_t row = 0; row < map.G.rows(); ++row)
            acc += map.G(row, col) * zflat[row];
        defect = std::max(defect, std::abs(acc));
    }
    out.defect = defect;
    if (defect > tol::kIdentityDefect)
        throw NumericalError(
            "obstruction witness: a reachable direction overlaps the witness "
            "by " + std::to_string(defect));
    return out;
}

RotationObstructionReport rotation_obstruction_experiment(
    const RotationObstructionParams& params) {
    if (params.b == 0.0 || params.c * params.c + params.d * params.d == 0.0)
        throw ValidationError(
            "rotation obstruction: degenerate parameters, b (c^2 + d^2) must be "
            "nonzero");
    if (params.modes < 1)
        throw ValidationError("rotation obstruction: at least one mode required");

    ControlPair pair;
    pair.A = Matrix{{params.a, -params.b}, {params.b, params.a}};
    pair.B = Matrix{{params.c}, {params.d}};

    const double d_a = critical_window(pair.A);
    if (!(params.horizon > d_a))
        throw ValidationError(
            "rotation obstruction: horizon T = " + std::to_string(params.horizon) +
            " must exceed the critical spacing d_A = " + std::to_string(d_a));

    RotationObstructionReport rep{};
    rep.d_A = d_a;
    rep.tau_1 = (0.5 + d_a < params.horizon) ? 0.5 : 0.5 * (params.horizon - d_a);
    rep.tau_2 = rep.tau_1 + d_a;

    SystemSpec spec;
    spec.pair = pair;
    spec.domain.length = std::numbers::pi;
    spec.domain.omega = {{0.0, std::numbers::pi}};
    spec.domain.modes = params.modes;

    const ImpulseSchedule schedule{{rep.tau_1, rep.tau_2}, params.horizon};

    // Direction annihilated by both sampled columns.
    const Matrix sampled =
        sampled_controllability_matrix(pair, schedule.as_sequence(),
                                       SampleMode::forward);
    const double smax = singular_values(sampled).front();
    const auto basis = kernel_basis(
        sampled.transpose(),
        RankTolerance::absolute_tol(std::max(tol::kExactRankAbs, 1e-13 * smax)));
    if (!basis)
        throw NumericalError(
            "rotation obstruction: sampled matrix unexpectedly has full rank at "
            "the critical spacing");
    const std::vector<double> alpha_hat = basis->col(0);

    const std::vector<double> alpha_t =
        expm(pair.A.transpose(), params.horizon).mul_vec(alpha_hat);
    const std::vector<double> y0_dir = expm(pair.A, params.horizon).mul_vec(alpha_t);

    const std::vector<double> profile = constant_profile_coeffs(spec.domain);
    SpectralState zhat_t = SpectralState::zero(params.modes, 2);
    SpectralState y0 = SpectralState::zero(params.modes, 2);
    for (std::size_t j = 0; j < params.modes; ++j) {
        for (std::size_t comp = 0; comp < 2; ++comp) {
            zhat_t.coeffs(j, comp) = profile[j] * alpha_t[comp];
            y0.coeffs(j, comp) = profile[j] * y0_dir[comp];
        }
    }

    const ReachabilityMap map = assemble_reachability(spec, schedule);
    const std::vector<double> zflat = flatten_state(zhat_t);
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double pairing = 0.0;
    std::vector<double> u(map.G.cols());
    for (std::size_t trial = 0; trial < params.random_controls; ++trial) {
        for (double& v : u) v = unit(rng);
        const std::vector<double> gu = map.G.mul_vec(u);
        pairing = std::max(pairing, std::abs(vec_dot(gu, zflat)));
    }
    rep.pairing_defect = pairing;

    const std::vector<double> lambda = laplacian_eigenvalues(spec.domain);
    double half_heated_sq = 0.0;
    for (std::size_t j = 0; j < params.modes; ++j) {
        const double decay = std::exp(-lambda[j] * params.horizon / 2.0);
        for (std::size_t comp = 0; comp < 2; ++comp) {
            const double v = decay * zhat_t.coeffs(j, comp);
            half_heated_sq += v * v;
        }
    }
    rep.lower_bound = half_heated_sq / zhat_t.norm();

    const SpectralState zero_target = SpectralState::zero(params.modes, 2);
    rep.min_residual_found =
        steer_approx(spec, schedule, y0, zero_target).residual;

    // Contrast run: half the spacing, safely inside the admissible window.
    rep.contrast_tau_2 = rep.tau_1 + d_a / 2.0;
    const ImpulseSchedule contrast{{rep.tau_1, rep.contrast_tau_2}, params.horizon};
    rep.contrast_same_target_residual =
        steer_approx(spec, contrast, y0, zero_target).residual;

    ControlSet known(contrast.count(), SpectralControl::zero(params.modes, 1));
    for (auto& ctrl : known)
        for (std::size_t j = 0; j < params.modes; ++j)
            ctrl.coeffs(j, 0) = unit(rng);
    const SpectralState generated =
        evolve(spec, y0, contrast, known).final_state();
    rep.contrast_recover_residual =
        steer_approx(spec, contrast, y0, generated).residual;
    return rep;
}

}  // namespace heatctl
