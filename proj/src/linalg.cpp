#include "penmin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "penmin/errors.hpp"

namespace penmin {

bool Matrix::is_symmetric() const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) return false;
        }
    }
    return true;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    const std::size_t n = a.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += 2.0 * a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

} // namespace

EigenSym jacobi_eigensym(Matrix a, double off_tol, int max_sweeps) {
    const std::size_t n = a.size();
    if (!a.is_symmetric()) {
        throw Error(ErrorCode::asymmetric_matrix, "eigensolver needs a symmetric matrix");
    }
    Matrix v(n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= off_tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != p && k != q) {
                        const double akp = a(k, p), akq = a(k, q);
                        a(k, p) = akp - s * (akq + tau * akp);
                        a(p, k) = a(k, p);
                        a(k, q) = akq + s * (akp - tau * akq);
                        a(q, k) = a(k, q);
                    }
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp - s * (vkq + tau * vkp);
                    v(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }
    if (off_diagonal_norm(a) > off_tol) {
        throw Error(ErrorCode::internal, "Jacobi sweeps did not converge");
    }

    EigenSym result;
    result.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.values[i] = a(i, i);

    // sort ascending, permuting the eigenvector columns alongside
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return result.values[x] < result.values[y]; });
    EigenSym sorted;
    sorted.values.resize(n);
    sorted.vectors = Matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted.values[j] = result.values[order[j]];
        for (std::size_t i = 0; i < n; ++i) sorted.vectors(i, j) = v(i, order[j]);
    }
    return sorted;
}

std::vector<double> mat_vec(const Matrix& a, std::span<const double> x) {
    const std::size_t n = a.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const auto row = a.row(i);
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

double quad_form(const Matrix& a, std::span<const double> x, std::span<const double> y) {
    const auto ay = mat_vec(a, y);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * ay[i];
    return acc;
}

} // namespace penmin
