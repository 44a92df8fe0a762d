#pragma once

#include <complex>
#include <vector>

#include "heatctl/matrix.hpp"

namespace heatctl {

/// Multiplicity-counted spectrum of a real matrix. Closed under complex
/// conjugation; the eigenvalue sum matches the trace within tolerance
/// (both enforced at construction time).
struct Spectrum {
    std::vector<std::complex<double>> values;
};

/// Monic characteristic polynomial lambda^n + sum_i coeffs[i] lambda^i,
/// coeffs[0..n-1] ascending by degree.
struct CharPoly {
    std::vector<double> coeffs;
};

CharPoly char_poly(const Matrix& m);

// Dimension is capped at 32: the characteristic-polynomial route is only
// trustworthy for small matrices, which is all this library handles.
inline constexpr std::size_t kEigenDimCap = 32;

Spectrum eigenvalues(const Matrix& m);

/// Roots of a monic real polynomial (coefficients ascending, degree =
/// coeffs.size()) by Aberth-Ehrlich simultaneous iteration.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& monic_coeffs);

/// Evaluates the monic polynomial at z.
std::complex<double> poly_eval(const std::vector<double>& monic_coeffs,
                               std::complex<double> z);

}  // namespace heatctl
