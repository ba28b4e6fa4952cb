#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace penmin {

/// Minimal dense square matrix, row-major. Sized for the problems here
/// (kernels up to a few hundred rows), not a general-purpose BLAS.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    const std::vector<double>& data() const noexcept { return data_; }

    bool is_symmetric() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct EigenSym {
    std::vector<double> values; // ascending
    Matrix vectors;             // column j is the eigenvector for values[j]
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm is below
/// off_tol (absolute). Adequate for the small dense symmetric matrices used
/// by the kernel grid (n <= a few hundred).
EigenSym jacobi_eigensym(Matrix a, double off_tol = 1e-10, int max_sweeps = 60);

// y = A x for symmetric A given as Matrix.
std::vector<double> mat_vec(const Matrix& a, std::span<const double> x);

// x' A y
double quad_form(const Matrix& a, std::span<const double> x, std::span<const double> y);

} // namespace penmin
