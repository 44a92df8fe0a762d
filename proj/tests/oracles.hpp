#pragma once

// Independent reference computations for the test suites. Everything here
// deliberately avoids the library's own numerical paths: plain loops,
// classical Jacobi rotations, quadrature, and a finite-difference solver.

#include <functional>
#include <random>
#include <vector>

#include "heatctl/matrix.hpp"
#include "heatctl/ode_control.hpp"

namespace heatctl::testing {

// Triple-loop product, no kernel layer involved.
Matrix naive_matmul(const Matrix& a, const Matrix& b);

// Cyclic Jacobi eigenvalues of a symmetric matrix, sorted descending.
std::vector<double> jacobi_symmetric_eigenvalues(Matrix m);

// Composite Simpson rule with n panels (n rounded up to even).
double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t n);

// Crank-Nicolson solve of dy/dt = y_xx - A y on (0, L) with Dirichlet
// boundaries for a two-component state. `initial` holds the two components
// sampled on the interior grid x_i = i h, i = 1..npts, h = L / (npts + 1).
// Advances ceil(T / dt) steps of size dt (last step shortened to hit T).
struct CoupledHeatFd {
    std::vector<double> comp0;
    std::vector<double> comp1;
};

CoupledHeatFd crank_nicolson_coupled(const Matrix& a_coupling, double length,
                                     std::size_t npts, double dt, double horizon,
                                     CoupledHeatFd initial);

// Uniform random helpers with caller-owned generators.
Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                     double lo, double hi);
std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo,
                                  double hi);

// Draws (A, B) until the controllability rank test passes.
ControlPair random_controllable_pair(std::mt19937_64& rng, std::size_t n,
                                     std::size_t m, double lo, double hi);

}  // namespace heatctl::testing
