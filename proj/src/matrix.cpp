#include "heatctl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heatctl/errors.hpp"
#include "heatctl/kernels.hpp"

namespace heatctl {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0)
        throw ValidationError("matrix dimensions must be at least 1x1");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) throw ValidationError("matrix initializer must not be empty");
    cols_ = rows.begin()->size();
    if (cols_ == 0) throw ValidationError("matrix rows must not be empty");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw ValidationError("matrix initializer rows have unequal lengths");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Matrix Matrix::column(std::span<const double> entries) {
    Matrix m(entries.size(), 1);
    std::copy(entries.begin(), entries.end(), m.data());
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double Matrix::trace() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
}

double Matrix::norm_fro() const {
    return std::sqrt(kernels::dot(data(), data(), data_.size()));
}

double Matrix::norm_one() const {
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

double Matrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double v : data_) best = std::max(best, std::abs(v));
    return best;
}

bool Matrix::is_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

void Matrix::require_finite(const std::string& what) const {
    if (!is_finite())
        throw ValidationError(what + ": entries must be finite (no NaN/Inf)");
}

std::vector<double> Matrix::col(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void Matrix::set_col(std::size_t c, std::span<const double> v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
        throw ValidationError("set_block: block exceeds matrix bounds");
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c)
            (*this)(r0 + r, c0 + c) = block(r, c);
}

std::vector<double> Matrix::mul_vec(std::span<const double> x) const {
    if (x.size() != cols_) throw ValidationError("mul_vec: dimension mismatch");
    std::vector<double> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        y[r] = kernels::dot(data() + r * cols_, x.data(), cols_);
    return y;
}

std::vector<double> Matrix::tmul_vec(std::span<const double> x) const {
    if (x.size() != rows_) throw ValidationError("tmul_vec: dimension mismatch");
    std::vector<double> y(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        kernels::axpy(x[r], data() + r * cols_, y.data(), cols_);
    return y;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw ValidationError("matrix addition: dimension mismatch");
    kernels::axpy(1.0, rhs.data(), data(), data_.size());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw ValidationError("matrix subtraction: dimension mismatch");
    kernels::axpy(-1.0, rhs.data(), data(), data_.size());
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    kernels::scal(s, data(), data_.size());
    return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows())
        throw ValidationError("matrix product: dimension mismatch");
    Matrix out(lhs.rows(), rhs.cols());
    kernels::gemm_acc(lhs.data(), rhs.data(), out.data(), lhs.rows(), lhs.cols(),
                      rhs.cols());
    return out;
}

Matrix hstack(std::span<const Matrix> blocks) {
    if (blocks.empty()) throw ValidationError("hstack: no blocks");
    const std::size_t rows = blocks.front().rows();
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw ValidationError("hstack: unequal block heights");
        cols += b.cols();
    }
    Matrix out(rows, cols);
    std::size_t c0 = 0;
    for (const auto& b : blocks) {
        out.set_block(0, c0, b);
        c0 += b.cols();
    }
    return out;
}

double vec_dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("dot: length mismatch");
    return kernels::dot(a.data(), b.data(), a.size());
}

double vec_norm(std::span<const double> a) {
    return std::sqrt(kernels::dot(a.data(), a.data(), a.size()));
}

}  // namespace heatctl
