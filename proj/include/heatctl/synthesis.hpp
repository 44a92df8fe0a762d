#pragma once

#include <cstdint>
#include <vector>

#include "heatctl/decomp.hpp"
#include "heatctl/spectral.hpp"

namespace heatctl {

/// The reachability operator as a dense matrix: column ((k * modes + l) * m + i)
/// is the endpoint contribution of a unit impulse e_i phi_{l+1} applied at
/// tau_{k+1}. Rows flatten the state as (mode-major, component-minor),
/// matching SpectralState storage.
struct ReachabilityMap {
    Matrix G;
    std::size_t modes;
    std::size_t components;
    std::size_t inputs;
    std::size_t impulse_count;
    std::vector<double> instants;
    double horizon;

    std::size_t col_index(std::size_t k, std::size_t l, std::size_t i) const {
        return (k * modes + l) * inputs + i;
    }

    ControlSet unflatten(std::span<const double> x) const;
    std::vector<double> flatten(const ControlSet& controls) const;
};

/// Assembles the reachability matrix and re-verifies a deterministic 1%
/// sample of its columns against the simulator.
ReachabilityMap assemble_reachability(const SystemSpec& spec,
                                      const ImpulseSchedule& schedule);

struct SteeringResult {
    ControlSet controls;
    double residual;      // || G u - (y1 - e^{A T} y0) ||
    double control_norm;  // Euclidean norm of the stacked control coefficients
    SpectralState achieved;
};

/// Minimum-norm approximate steering from y0 to y1 at the horizon.
SteeringResult steer_approx(const SystemSpec& spec, const ImpulseSchedule& schedule,
                            const SpectralState& y0, const SpectralState& y1,
                            RankTolerance tol = {});

/// Minimum-norm decomposition I = sum_k P_k with Range(P_k) inside
/// Range(e^{A tau_k} B). Requires the sampled matrix to have full rank.
std::vector<Matrix> build_projections(const ControlPair& pair,
                                      const InstantSequence& instants,
                                      RankTolerance tol = {});

/// Explicit null control for a control region covering the whole domain:
/// per-impulse coefficients d_j = -C e^{-lambda_j tau_k} e^{-A tau_k} P_k c_j(0)
/// with C the pseudo-inverse of B. Mode-exact: evolving the returned
/// controls annihilates the state at the horizon.
ControlSet null_control_full_domain(const SystemSpec& spec,
                                    const ImpulseSchedule& schedule,
                                    const SpectralState& y0,
                                    RankTolerance tol = {});

/// Nonzero direction orthogonal to everything the impulses can reach.
/// Exists exactly when the pair fails the controllability rank test.
struct ObstructionWitness {
    std::vector<double> alpha;  // common kernel direction in R^n
    SpectralState zhat;         // constant spatial profile carrying alpha
    double defect;              // max |<G column, zhat>| over all columns
};

ObstructionWitness obstruction_witness(const SystemSpec& spec,
                                       const ImpulseSchedule& schedule);

/// Parameters of the rotation-pair obstruction experiment: the coupling
///   A = [[a, -b], [b, a]], B = [c, d]^T
/// steered at two instants spaced exactly the critical window apart.
struct RotationObstructionParams {
    double a = 0.0;
    double b = 1.0;
    double c = 1.0;
    double d = 0.0;
    double horizon = 4.0;
    std::size_t modes = 64;
    std::size_t random_controls = 1000;
    std::uint64_t seed = 12345;
};

struct RotationObstructionReport {
    double d_A;
    double tau_1, tau_2;
    double pairing_defect;       // max |<zhat_T, G u>| over random controls
    double lower_bound;          // ||e^{D T/2} zhat_T||^2 / ||zhat_T||
    double min_residual_found;   // best steering residual toward zero
    double contrast_tau_2;       // second instant of the half-spacing run
    double contrast_recover_residual;      // generate-and-recover variant
    double contrast_same_target_residual;  // steering toward zero again
};

RotationObstructionReport rotation_obstruction_experiment(
    const RotationObstructionParams& params);

}  // namespace heatctl
