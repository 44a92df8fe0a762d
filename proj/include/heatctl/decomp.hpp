#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "heatctl/matrix.hpp"

namespace heatctl {

/// Thin singular value decomposition M = U diag(sigma) V^T with
/// U: rows x k, V: cols x k, k = min(rows, cols), sigma sorted descending.
/// Columns of U belonging to exactly zero singular values are zero vectors;
/// V is always orthogonal (k = cols when rows >= cols).
struct SvdResult {
    Matrix U;
    std::vector<double> sigma;
    Matrix V;
};

SvdResult svd(const Matrix& m);

/// Singular-value cutoff policy: relative (default) counts sigma above
/// sigma_max * max(rows, cols) * machine epsilon; an absolute tolerance
/// overrides that.
struct RankTolerance {
    std::optional<double> absolute;

    static RankTolerance relative() { return {}; }
    static RankTolerance absolute_tol(double t) { return {t}; }

    double cutoff(double sigma_max, std::size_t rows, std::size_t cols) const;
};

std::vector<double> singular_values(const Matrix& m);

std::size_t numerical_rank(const Matrix& m, RankTolerance tol = {});
std::size_t numerical_rank(const SvdResult& s, std::size_t rows, std::size_t cols,
                           RankTolerance tol = {});

struct LstsqResult {
    std::vector<double> x;
    double residual;    // ||Mx - r||
    std::size_t rank;   // numerical rank used by the truncation
};

/// Minimum-Euclidean-norm least squares via truncated SVD.
LstsqResult min_norm_lstsq(const Matrix& m, std::span<const double> rhs,
                           RankTolerance tol = {});

/// Moore-Penrose pseudo-inverse (truncated SVD).
Matrix pinv(const Matrix& m, RankTolerance tol = {});

/// Orthonormal basis of ker(M) as matrix columns. Requires rows >= cols
/// (thin V spans the full row space only in that case). Returns an empty
/// optional when the kernel is trivial.
std::optional<Matrix> kernel_basis(const Matrix& m, RankTolerance tol = {});

}  // namespace heatctl
