#pragma once

#include <optional>
#include <span>
#include <vector>

#include "heatctl/decomp.hpp"
#include "heatctl/matrix.hpp"

namespace heatctl {

/// The coupling pair: A is n x n, B is n x m.
struct ControlPair {
    Matrix A;
    Matrix B;

    std::size_t n() const { return A.rows(); }
    std::size_t m() const { return B.cols(); }
    void validate() const;
};

/// Strictly increasing control instants, optionally carrying a horizon T.
/// With a horizon attached the instants must lie strictly inside (0, T);
/// without one any increasing real sequence is admissible.
struct InstantSequence {
    std::vector<double> instants;
    std::optional<double> horizon;

    std::size_t count() const { return instants.size(); }
    double span() const { return instants.back() - instants.front(); }
    void validate() const;
};

/// Companion realization of a monic characteristic polynomial: ones on the
/// subdiagonal, negated coefficients in the last column.
struct CompanionSystem {
    std::vector<double> coeffs;
    Matrix Ahat;

    static CompanionSystem from_matrix(const Matrix& a);
};

/// First-order factorization data for the quadratic operator
/// d^2/dt^2 - 2b d/dt + (b^2 + c^2) on the window around t0 where
/// tan(c(t - t0)) stays finite. phi1 and phi2 vanish at t0.
struct FactorizationPair {
    double b = 0.0;
    double c = 0.0;
    double t0 = 0.0;

    FactorizationPair(double b_, double c_, double t0_);

    double half_width() const;
    bool in_domain(double t) const;

    double phi1(double t) const;
    double phi2(double t) const;
    double dphi1(double t) const;
    double dphi2(double t) const;
    double ddphi2(double t) const;
};

/// Block matrix (B, AB, A^2 B, ..., A^{n-1} B).
Matrix kalman_matrix(const ControlPair& pair);

bool is_kalman_controllable(const ControlPair& pair, RankTolerance tol = {});

/// Critical impulse window d_A = min over eigenvalues of pi / |Im lambda|;
/// +infinity when the spectrum is (numerically) real.
double critical_window(const Matrix& a);

enum class SampleMode { forward, time_reversed };

/// Block matrix of e^{A tau_k} B (forward) or e^{A (T - tau_k)} B
/// (time-reversed; requires a horizon).
Matrix sampled_controllability_matrix(const ControlPair& pair,
                                      const InstantSequence& instants,
                                      SampleMode mode = SampleMode::forward);

/// Joint window / rank report for n instants: the sampled matrix must have
/// full rank whenever the pair is controllable and the instants span less
/// than the critical window.
struct WindowRankReport {
    double window;       // tau_n - tau_1
    double d_A;          // critical window (may be +inf)
    bool window_ok;      // window < d_A, strict
    bool boundary_case;  // |window - d_A| within the diagnostic band
    std::size_t rank;
    bool rank_full;
};

WindowRankReport window_rank_check(const ControlPair& pair,
                                   const InstantSequence& instants,
                                   RankTolerance tol = {});

struct OdeSteering {
    std::vector<std::vector<double>> controls;  // one u_k in R^m per instant
    double residual;                            // moment-equation defect
};

/// Minimum-norm impulse controls driving z0 at time 0 to z1 at the horizon.
OdeSteering steer_ode(const ControlPair& pair, const InstantSequence& instants,
                      std::span<const double> z0, std::span<const double> z1,
                      RankTolerance tol = {});

/// Coefficient vector f(t) with e^{A t} = sum_i f_i(t) A^i, computed as
/// e^{Ahat t} e_1 on the companion system.
std::vector<double> companion_flow_coeffs(const Matrix& a, double t);

struct CoeffSampleMatrix {
    Matrix M;  // M(i, k) = f_i(tau_k)
    std::size_t rank;
};

/// The n x n matrix of companion coefficients sampled at n instants. Full
/// rank whenever the instants span less than the critical window.
CoeffSampleMatrix coeff_sample_matrix(const Matrix& a,
                                      const InstantSequence& instants,
                                      RankTolerance tol = {});

/// Max absolute defect of the two factorization-coefficient identities
/// phi1' + phi2' = -2b and phi1' phi2' + phi2'' = b^2 + c^2, sampled across
/// the interior of the factorization window. margin is the fraction of the
/// half-width kept away from each endpoint (clamped to at least 1e-3).
double factorization_defect(double b, double c, double t0, std::size_t samples,
                            double margin = 0.05);

}  // namespace heatctl
