#pragma once

#include <numbers>
#include <vector>

#include "heatctl/matrix.hpp"
#include "heatctl/ode_control.hpp"

namespace heatctl {

struct Interval {
    double a;
    double b;
};

/// Interval domain (0, L) with Dirichlet sine eigenbasis truncated at
/// `modes`, and a control region omega given as disjoint open subintervals.
struct DomainSpec {
    double length = std::numbers::pi;
    std::vector<Interval> omega;
    std::size_t modes = 64;

    void validate() const;
    double omega_measure() const;
    bool omega_is_full() const;
};

/// State coefficients: row j holds the R^n coefficient of eigenfunction
/// phi_{j+1}. The L2 norm of the represented function is the Frobenius
/// norm of the coefficient block.
struct SpectralState {
    Matrix coeffs;  // modes x n

    static SpectralState zero(std::size_t modes, std::size_t components);
    std::size_t modes() const { return coeffs.rows(); }
    std::size_t components() const { return coeffs.cols(); }
    double norm() const { return coeffs.norm_fro(); }
};

/// Control coefficients for one impulse: modes x m.
struct SpectralControl {
    Matrix coeffs;

    static SpectralControl zero(std::size_t modes, std::size_t inputs);
    double norm() const { return coeffs.norm_fro(); }
};

using ControlSet = std::vector<SpectralControl>;

double control_set_norm(const ControlSet& controls);

/// One coupled system: the pair (A, B) plus the spatial data.
struct SystemSpec {
    ControlPair pair;
    DomainSpec domain;

    void validate() const;
};

/// Control instants 0 < tau_1 < ... < tau_p < T.
struct ImpulseSchedule {
    std::vector<double> instants;
    double horizon;

    std::size_t count() const { return instants.size(); }
    double span() const { return instants.back() - instants.front(); }
    void validate() const;
    InstantSequence as_sequence() const;
};

/// Dirichlet Laplacian eigenvalues (j pi / L)^2, j = 1..modes.
std::vector<double> laplacian_eigenvalues(const DomainSpec& domain);

/// Eigenfunction phi_j(x) = sqrt(2/L) sin(j pi x / L), 1-based j.
double basis_value(const DomainSpec& domain, std::size_t j, double x);

/// Sine coefficients of the constant function 1 on (0, L).
std::vector<double> constant_profile_coeffs(const DomainSpec& domain);

/// Gram matrix W(j, l) = integral over omega of phi_{j+1} phi_{l+1},
/// evaluated in closed form. W = I when omega covers the domain.
Matrix omega_gram(const DomainSpec& domain);

/// Heat-plus-coupling flow: mode j is scaled by e^{-lambda_j dt} and pushed
/// through e^{-A dt}.
SpectralState free_flow(const SpectralState& state, const Matrix& a,
                        std::span<const double> lambda, double dt);

/// Adjoint flow: e^{-A^T dt} with the same heat decay.
SpectralState adjoint_flow(const SpectralState& state, const Matrix& a,
                           std::span<const double> lambda, double dt);

/// State jump chi_omega B u, in coefficients: c += W (u B^T).
SpectralState apply_impulse(const SpectralState& state, const Matrix& gram,
                            const Matrix& b, const SpectralControl& u);

enum class TrajectoryEvent { initial, pre_impulse, post_impulse, final_state };

struct TrajectoryPoint {
    double t;
    TrajectoryEvent event;
    SpectralState state;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;

    const SpectralState& final_state() const { return points.back().state; }
};

/// Runs the impulse system: free flow between instants, jumps at them.
/// Records the state at 0, each tau_k- and tau_k, and T.
Trajectory evolve(const SystemSpec& spec, const SpectralState& y0,
                  const ImpulseSchedule& schedule, const ControlSet& controls);

/// Both sides of the duality identity
///   <y(T), z> = <y0, e^{A* T} z> + sum_k <u_k, chi_omega B* e^{A* (T - tau_k)} z>.
struct DualityReport {
    double direct;
    double adjoint_side;
    double defect;
};

DualityReport duality_pairing(const SystemSpec& spec, const SpectralState& y0,
                              const ImpulseSchedule& schedule,
                              const ControlSet& controls, const SpectralState& z);

}  // namespace heatctl
