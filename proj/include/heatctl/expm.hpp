#pragma once

#include "heatctl/matrix.hpp"

namespace heatctl {

/// e^{M t} by order-13 Pade approximation with scaling and squaring.
Matrix expm(const Matrix& m, double t = 1.0);

namespace detail {
// Solves A X = B by Gaussian elimination with partial pivoting.
Matrix lu_solve(Matrix a, Matrix b);
}

}  // namespace heatctl
