#include "penmin/varbounds.hpp"

#include <cmath>
#include <limits>

#include "penmin/errors.hpp"

namespace penmin {

VarianceEstimate sigma2_residual(double residual_sq_norm, double d_m0, int n) {
    if (!(d_m0 < n)) {
        throw Error(ErrorCode::full_dimension, "residual estimator needs D_m0 < n");
    }
    if (!(residual_sq_norm >= 0.0)) {
        throw Error(ErrorCode::bad_argument, "residual square norm must be >= 0");
    }
    return VarianceEstimate{residual_sq_norm / (double(n) - d_m0), VarianceMethod::residual_m0,
                            d_m0};
}

VarianceEstimate sigma2_rice(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n < 2) {
        throw Error(ErrorCode::too_short, "difference estimator needs n >= 2");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = y[i + 1] - y[i];
        sum += d * d;
    }
    return VarianceEstimate{sum / (2.0 * double(n - 1)), VarianceMethod::rice, std::nullopt};
}

ResidualMse residual_mse_gaussian(int n, double d, double sigma2, double bias_sq) {
    if (!(d < n)) {
        throw Error(ErrorCode::full_dimension, "MSE formula needs D < n");
    }
    if (!(sigma2 >= 0.0) || !(bias_sq >= 0.0) || !(d >= 0.0)) {
        throw Error(ErrorCode::bad_argument, "inputs must be >= 0");
    }
    const double denom = double(n) - d;
    ResidualMse out;
    out.bias = bias_sq / denom;
    out.variance = 2.0 * sigma2 * sigma2 / denom + 4.0 * sigma2 * bias_sq / (denom * denom);
    out.mse = out.variance + out.bias * out.bias;
    return out;
}

double var_quadratic_form(const Matrix& m, std::span<const double> f, double sigma2, double m3,
                          double m4) {
    if (!m.is_symmetric()) {
        throw Error(ErrorCode::asymmetric_matrix, "quadratic-form variance needs symmetric M");
    }
    if (!(m4 >= sigma2 * sigma2)) {
        throw Error(ErrorCode::bad_argument, "moments must satisfy m4 >= sigma2^2");
    }
    const std::size_t n = m.size();
    double tr_diag_sq = 0.0, tr_m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tr_diag_sq += m(i, i) * m(i, i);
        for (std::size_t j = 0; j < n; ++j) tr_m2 += m(i, j) * m(i, j);
    }
    const double w = tr_diag_sq * (m4 - 3.0 * sigma2 * sigma2) + 2.0 * tr_m2 * sigma2 * sigma2;

    const auto mf = mat_vec(m, f);
    double mf_sq = 0.0;
    for (double v : mf) mf_sq += v * v;

    // <F, M diag(M) 1> = sum_i F_i sum_j M_ij M_jj
    double skew_term = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * m(j, j);
        skew_term += f[i] * acc;
    }
    return w + 4.0 * mf_sq * sigma2 + 4.0 * skew_term * m3;
}

BoundSet prop2_bounds(double x, int n, double t, double c_n, double b_cn, double sigma2) {
    if (!(x >= 0.0) || !(c_n >= 0.0) || !(c_n < t) || !(t < n)) {
        throw Error(ErrorCode::bad_range, "need x >= 0 and 0 <= c_n < T < n");
    }
    const double dn = double(n);
    const double root = std::sqrt(x / dn);

    BoundSet b;
    b.b_cn = b_cn;
    b.c1 = sigma2 * (1.0 - (4.0 * root + 6.0 * x / dn) / (1.0 - t / dn));
    b.c2 = sigma2 * (1.0 + (4.0 * dn / (t - c_n)) * (root + 2.0 * x / dn)) +
           (2.0 * dn / (t - c_n)) * b_cn;
    b.mse_bound = mse_bound_threshold(n, t, b_cn, x, sigma2, false);
    b.eta_minus = 41.0 * root;
    b.eta_plus = sigma2 > 0.0 ? 40.0 * b_cn / sigma2 + 82.0 * root : 0.0;
    return b;
}

double mse_bound_threshold(int n, double t, double b_t_half, double log4m, double sigma2,
                           bool relaxed) {
    if (!(t > 0.0) || !(t < n)) {
        throw Error(ErrorCode::bad_range, "need 0 < T < n");
    }
    const double dn = double(n);
    const double s4 = sigma2 * sigma2;
    const double lead1 = 1.0 / ((1.0 - t / dn) * (1.0 - t / dn));
    const double lead2 = (2.0 * dn / t) * (2.0 * dn / t);
    const double lead = std::max(lead1, lead2);
    if (relaxed) {
        return lead * (12.0 * b_t_half * b_t_half + 102.0 * s4 * log4m / dn);
    }
    const double ratio = log4m / dn;
    return 739.0 * lead * (b_t_half * b_t_half + s4 * ratio + s4 * ratio * ratio);
}

Theorem1Envelope theorem1_envelope(double gamma, int n, double b_n20, double sigma2) {
    if (!(gamma >= 0.0) || n < 2) {
        throw Error(ErrorCode::bad_range, "need gamma >= 0 and n >= 2");
    }
    const double root = std::sqrt(gamma * std::log(double(n)) / double(n));
    Theorem1Envelope env;
    env.eta_minus = 41.0 * root;
    env.eta_plus = sigma2 > 0.0 ? (40.0 * b_n20 + 82.0 * sigma2 * root) / sigma2 : 0.0;
    env.risksmall = [](double u) {
        if (u <= 1.0) return std::numeric_limits<double>::infinity();
        if (u < 2.0) {
            const double v = u - 1.0;
            return 10.0 / (v * v * v * v);
        }
        return u * u * u;
    };
    return env;
}

} // namespace penmin
