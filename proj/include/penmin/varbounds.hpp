#pragma once

#include <functional>
#include <optional>
#include <span>

#include "penmin/linalg.hpp"

namespace penmin {

enum class VarianceMethod { residual_m0, rice, minimal_penalty };

struct VarianceEstimate {
    double value = 0.0;
    VarianceMethod method = VarianceMethod::residual_m0;
    std::optional<double> d_m0;
};

/// residual_sq_norm / (n - D_m0), the residual-based variance estimator on a
/// model of dimension D_m0 < n.
VarianceEstimate sigma2_residual(double residual_sq_norm, double d_m0, int n);

/// First-difference estimator [2(n-1)]^-1 sum (Y_{i+1} - Y_i)^2.
VarianceEstimate sigma2_rice(std::span<const double> y);

struct ResidualMse {
    double bias = 0.0;     // bias_sq / (n - D)
    double variance = 0.0; // 2 s4/(n-D) + 4 s2 bias_sq/(n-D)^2
    double mse = 0.0;      // variance + bias^2
};

/// Closed-form bias/variance/MSE of the residual variance estimator under
/// Gaussian noise, with bias_sq = ||(I - Pi) F||^2 supplied by the caller.
ResidualMse residual_mse_gaussian(int n, double d, double sigma2, double bias_sq);

/// Variance of the quadratic form <F + e, M (F + e)> for independent noise
/// with moments (0, sigma2, m3, m4):
///   Var = W + 4 ||M F||^2 sigma2 + 4 <F, M diag(M) 1> m3,
///   W   = tr(diag(M)^2) (m4 - 3 sigma2^2) + 2 tr(M^2) sigma2^2.
double var_quadratic_form(const Matrix& m, std::span<const double> f, double sigma2, double m3,
                          double m4);

struct BoundSet {
    double c1 = 0.0;        // lower deviation bound for C-hat (may be negative)
    double c2 = 0.0;        // upper deviation bound
    double mse_bound = 0.0; // 739-constant MSE bound (see mse_bound_threshold)
    double eta_minus = 0.0;
    double eta_plus = 0.0;
    double b_cn = 0.0;
};

/// Deviation bounds for the threshold calibrator on an event of probability
/// >= 1 - 4 card(M) e^-x:
///   c1 = s2 (1 - (4 sqrt(x/n) + 6 x/n) / (1 - T/n)),
///   c2 = s2 (1 + (4n/(T - c_n)) (sqrt(x/n) + 2 x/n)) + (2n/(T - c_n)) B_cn.
/// c1 is returned as-is (not clamped at 0) so callers can see how pessimistic
/// the constants are. The eta fields carry the envelope half-widths with the
/// same x and B_cn; mse_bound uses mse_bound_threshold with x standing in for
/// log(4 card M).
BoundSet prop2_bounds(double x, int n, double t, double c_n, double b_cn, double sigma2);

/// MSE bound for the threshold calibrator at threshold T given
/// B(T/2) and log(4 card M). relaxed = false gives the 739-constant form;
/// relaxed = true the 12/102-constant form valid for 100 <= card(M) <=
/// exp(n/100) (which takes log(card M), i.e. pass log4m minus log 4).
double mse_bound_threshold(int n, double t, double b_t_half, double log4m, double sigma2,
                           bool relaxed = false);

struct Theorem1Envelope {
    double eta_minus = 0.0;
    double eta_plus = 0.0;
    std::function<double(double)> risksmall;
};

/// Envelope quantities for diagnostic overlays:
///   eta_minus      = 41 sqrt(gamma log n / n),
///   s2 * eta_plus  = 40 B_n20 + 82 s2 sqrt(gamma log n / n),
///   risksmall(u)   = 10/(u-1)^4 on (1,2), u^3 on [2, inf); +inf for u <= 1.
Theorem1Envelope theorem1_envelope(double gamma, int n, double b_n20, double sigma2);

} // namespace penmin
