#pragma once

#include <cstddef>
#include <vector>

namespace lgcb {

using Vec = std::vector<double>;

// Dense row-major matrix, just big enough for the d x d and K x d blocks
// this library works with.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

double dot(const Vec& a, const Vec& b);
Vec matvec(const Matrix& m, const Vec& x);
Matrix matmul(const Matrix& a, const Matrix& b);

// Adds weight * x x^T to accumulator (used for second-moment sums).
void add_scaled_outer(Matrix& acc, const Vec& x, double weight);

// Gauss-Jordan inverse with partial pivoting. Throws on (near-)singular input.
Matrix invert(const Matrix& m);

// Eigenvalues of a symmetric matrix via cyclic Jacobi, ascending order.
Vec symmetric_eigenvalues(const Matrix& m);

double max_abs_difference(const Matrix& a, const Matrix& b);

} // namespace lgcb
