#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "penmin/collection.hpp"
#include "penmin/linalg.hpp"

namespace penmin {

enum class Family { easy, hard, kernel };

const char* family_name(Family f) noexcept;

/// Fixed-design data Y = F + noise with i.i.d. N(0, sigma2) noise.
/// easy/hard: F_i proportional to 1/i, scaled so that n^-1 ||F||^2 = 1.
/// kernel: F_1 = 1/2, F_i = sin(25 pi x_i^3) on the regular grid
/// x_i = (i-1)/(n-1).
struct RegressionProblem {
    int n = 0;
    double sigma2 = 0.0;
    Family family = Family::easy;
    std::uint64_t seed = 0;
    std::vector<double> F;
    std::vector<double> Y;
    std::vector<double> noise; // Y - F, stored as drawn
};

RegressionProblem generate_problem(Family family, int n, double sigma2, std::uint64_t seed);

struct ModelStats {
    double dim_or_df = 0.0;
    double empirical_risk = 0.0; // n^-1 ||Fhat - Y||^2
    double true_risk = 0.0;      // n^-1 ||Fhat - F||^2
    double p1 = 0.0;             // excess risk at the model's best point
    double p2 = 0.0;             // excess empirical risk
    double delta = 0.0;          // risk - empirical risk at the best point
    double tr_a = 0.0;
    double tr_ata = 0.0;
};

struct ProjectionStats {
    std::vector<ModelStats> stats; // m = 1..n
    Collection collection;         // pen0 = D/n, pen1 = 2D/n, complexity = D, id = D
};

/// Per-model statistics for the canonical-basis projection families.
/// easy: model m spans the first m basis vectors; hard: the first m when m
/// is odd and the last m when m is even. Everything is computed in O(n)
/// total per quantity via prefix/suffix sums of squares. In this setting
/// p1 == p2 == n^-1 ||Pi_m noise||^2 identically.
ProjectionStats projection_stats(const RegressionProblem& problem);

/// K_ij = exp(-alpha |x_i - x_j|); symmetric with unit diagonal.
Matrix laplace_kernel(std::span<const double> x, double alpha);

/// Ridge regularization grid: lambda_i chosen by bisection so that the
/// degrees of freedom tr(K (K + n lambda_i I)^-1) equal i, for
/// i = 0..max_df (i = 0 is the lambda = +inf null estimator). When the
/// kernel is numerically singular the top of the grid is truncated at the
/// largest attainable integer df.
struct RidgeGrid {
    int n = 0;
    std::vector<double> lambdas; // lambdas[0] = +inf sentinel
    std::vector<double> tr_a;    // tr(A_lambda), = df by construction
    std::vector<double> tr_ata;  // tr(A'A)
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    int max_df = 0;

    std::size_t size() const noexcept { return lambdas.size(); }
};

RidgeGrid ridge_grid(const Matrix& kernel, int n, double df_tol = 1e-6);

struct RidgeStats {
    std::vector<ModelStats> stats;
    /// pen0 = (2 tr A - tr A'A)/n, pen1 = 2 tr A / n, complexity = tr A.
    Collection collection_minimal;
    /// The naive variant pen0 = tr A / n (same pen1 and complexity); its
    /// path shows no clear jump, which is the point of the comparison.
    Collection collection_naive;
};

/// Risks of Fhat_lambda = K (K + n lambda I)^-1 Y for every grid value,
/// computed in the eigenbasis (one O(n^2) rotation of Y and F, then O(n)
/// per lambda).
RidgeStats ridge_stats(const RegressionProblem& problem, const RidgeGrid& grid);

} // namespace penmin
