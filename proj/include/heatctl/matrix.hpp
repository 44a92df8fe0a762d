#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace heatctl {

/// Dense real matrix, row-major storage. The workhorse value type of the
/// library; all entries are expected to stay finite, and `require_finite`
/// is the hook routines use to enforce that at their boundaries.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix zeros(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> entries);
    static Matrix column(std::span<const double> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> row_span(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row_span(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    Matrix transpose() const;
    double trace() const;

    double norm_fro() const;   // Frobenius norm
    double norm_one() const;   // max column sum
    double norm_inf() const;   // max row sum
    double max_abs() const;

    bool is_finite() const;
    // Throws ValidationError mentioning `what` when any entry is NaN/Inf.
    void require_finite(const std::string& what) const;

    std::vector<double> col(std::size_t c) const;
    void set_col(std::size_t c, std::span<const double> v);
    // Copies `block` into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Matrix& block);

    std::vector<double> mul_vec(std::span<const double> x) const;   // A * x
    std::vector<double> tmul_vec(std::span<const double> x) const;  // A^T * x

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
    friend Matrix operator*(double s, Matrix rhs) { return rhs *= s; }
    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Horizontal concatenation of equally tall blocks.
Matrix hstack(std::span<const Matrix> blocks);

// Vector helpers used throughout; these route through the kernel layer.
double vec_dot(std::span<const double> a, std::span<const double> b);
double vec_norm(std::span<const double> a);

}  // namespace heatctl
