#include "penmin/regress.hpp"

#include <algorithm>
#include <cmath>

#include "penmin/rng.hpp"

namespace penmin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
} // namespace

const char* family_name(Family f) noexcept {
    switch (f) {
    case Family::easy: return "easy";
    case Family::hard: return "hard";
    case Family::kernel: return "kernel";
    }
    return "unknown";
}

RegressionProblem generate_problem(Family family, int n, double sigma2, std::uint64_t seed) {
    if (n < 2) {
        throw Error(ErrorCode::bad_dimension, "need n >= 2");
    }
    if (!(sigma2 >= 0.0)) {
        throw Error(ErrorCode::negative_sigma2, "sigma2 must be >= 0");
    }
    RegressionProblem p;
    p.n = n;
    p.sigma2 = sigma2;
    p.family = family;
    p.seed = seed;
    p.F.resize(n);
    if (family == Family::kernel) {
        p.F[0] = 0.5;
        for (int i = 1; i < n; ++i) {
            const double x = double(i) / double(n - 1);
            p.F[i] = std::sin(25.0 * kPi * x * x * x);
        }
    } else {
        // F_i proportional to 1/i, scaled so that n^-1 ||F||^2 = 1.
        double inv_sq_sum = 0.0;
        for (int i = 1; i <= n; ++i) inv_sq_sum += 1.0 / (double(i) * double(i));
        const double c_n = std::sqrt(double(n) / inv_sq_sum);
        for (int i = 1; i <= n; ++i) p.F[i - 1] = c_n / double(i);
    }

    p.noise.resize(n);
    p.Y.resize(n);
    GaussianSampler gaussian(seed);
    const double sd = std::sqrt(sigma2);
    for (int i = 0; i < n; ++i) {
        p.noise[i] = sd * gaussian.next();
        p.Y[i] = p.F[i] + p.noise[i];
    }
    return p;
}

ProjectionStats projection_stats(const RegressionProblem& problem) {
    if (problem.family != Family::easy && problem.family != Family::hard) {
        throw Error(ErrorCode::wrong_family, "projection stats need the easy or hard family");
    }
    const int n = problem.n;
    const double dn = double(n);

    // prefix[i] = sum over the first i coordinates; suffix via total - prefix
    std::vector<double> pre_y2(n + 1, 0.0), pre_f2(n + 1, 0.0), pre_e2(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        pre_y2[i + 1] = pre_y2[i] + problem.Y[i] * problem.Y[i];
        pre_f2[i + 1] = pre_f2[i] + problem.F[i] * problem.F[i];
        pre_e2[i + 1] = pre_e2[i] + problem.noise[i] * problem.noise[i];
    }
    const double tot_y2 = pre_y2[n], tot_f2 = pre_f2[n], tot_e2 = pre_e2[n];

    ProjectionStats out;
    out.stats.resize(n);
    std::vector<EstimatorRecord> records;
    records.reserve(n);
    for (int m = 1; m <= n; ++m) {
        // easy models span the first m coordinates; hard models the first m
        // when m is odd and the last m when m is even.
        const bool first_block = problem.family == Family::easy || (m % 2 == 1);
        double in_e2, out_y2, out_f2; // sums over the model / its complement
        if (first_block) {
            in_e2 = pre_e2[m];
            out_y2 = tot_y2 - pre_y2[m];
            out_f2 = tot_f2 - pre_f2[m];
        } else {
            in_e2 = tot_e2 - pre_e2[n - m];
            out_y2 = pre_y2[n - m];
            out_f2 = pre_f2[n - m];
        }

        ModelStats& s = out.stats[m - 1];
        s.dim_or_df = m;
        s.tr_a = m;
        s.tr_ata = m;
        s.empirical_risk = out_y2 / dn;
        s.true_risk = (in_e2 + out_f2) / dn;
        // For orthogonal projections both the excess risk and the excess
        // empirical risk reduce to n^-1 ||Pi_m noise||^2.
        s.p1 = in_e2 / dn;
        s.p2 = s.p1;
        // delta = risk(best point) - empirical risk(best point), with the
        // risk carrying its sigma2 offset so that the empirical risk is
        // unbiased for it.
        s.delta = out_f2 / dn + problem.sigma2 - (in_e2 + out_y2) / dn;

        records.push_back(EstimatorRecord{m, s.empirical_risk, double(m) / dn,
                                          2.0 * double(m) / dn, double(m)});
    }
    out.collection = validate_collection(std::move(records));
    return out;
}

Matrix laplace_kernel(std::span<const double> x, double alpha) {
    if (!(alpha > 0.0)) {
        throw Error(ErrorCode::bad_argument, "kernel scale alpha must be > 0");
    }
    const std::size_t n = x.size();
    Matrix k(n);
    for (std::size_t i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::exp(-alpha * std::abs(x[i] - x[j]));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

namespace {

double df_of_lambda(std::span<const double> mu, double n_lambda) {
    double df = 0.0;
    for (double m : mu) df += m / (m + n_lambda);
    return df;
}

} // namespace

RidgeGrid ridge_grid(const Matrix& kernel, int n, double df_tol) {
    if (int(kernel.size()) != n) {
        throw Error(ErrorCode::bad_dimension, "kernel size must match n");
    }
    RidgeGrid grid;
    grid.n = n;
    EigenSym eig = jacobi_eigensym(kernel);
    // Clamp the tiny negative eigenvalues a positive-semidefinite kernel can
    // pick up numerically.
    for (double& mu : eig.values) mu = std::max(mu, 0.0);
    grid.eigenvalues = std::move(eig.values);
    grid.eigenvectors = std::move(eig.vectors);

    const double lambda_lo = 1e-12, lambda_hi = 1e6;
    const double df_max = df_of_lambda(grid.eigenvalues, double(n) * lambda_lo);
    grid.max_df = std::min(n, int(std::floor(df_max + df_tol)));

    grid.lambdas.push_back(kInf); // i = 0: the null estimator A = 0
    grid.tr_a.push_back(0.0);
    grid.tr_ata.push_back(0.0);
    for (int i = 1; i <= grid.max_df; ++i) {
        // df(lambda) is strictly decreasing; geometric bisection over
        // [lambda_lo, lambda_hi].
        double lo = lambda_lo, hi = lambda_hi, mid = lo;
        double df = df_max;
        for (int iter = 0; iter < 200; ++iter) {
            mid = std::sqrt(lo * hi);
            df = df_of_lambda(grid.eigenvalues, double(n) * mid);
            if (std::abs(df - i) <= df_tol) break;
            if (df > i) lo = mid; else hi = mid;
        }
        if (std::abs(df - i) > df_tol) {
            throw Error(ErrorCode::singular_grid,
                        "bisection failed to pin df = " + std::to_string(i));
        }
        double tr_a = 0.0, tr_ata = 0.0;
        for (double mu : grid.eigenvalues) {
            const double h = mu / (mu + double(n) * mid);
            tr_a += h;
            tr_ata += h * h;
        }
        grid.lambdas.push_back(mid);
        grid.tr_a.push_back(tr_a);
        grid.tr_ata.push_back(tr_ata);
    }
    return grid;
}

RidgeStats ridge_stats(const RegressionProblem& problem, const RidgeGrid& grid) {
    if (problem.family != Family::kernel) {
        throw Error(ErrorCode::wrong_family, "ridge stats need the kernel family");
    }
    const int n = problem.n;
    const double dn = double(n);
    const Matrix& q = grid.eigenvectors;

    // Rotate once into the eigenbasis; every lambda is then O(n).
    std::vector<double> y_t(n, 0.0), f_t(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double ay = 0.0, af = 0.0;
        for (int i = 0; i < n; ++i) {
            ay += q(i, j) * problem.Y[i];
            af += q(i, j) * problem.F[i];
        }
        y_t[j] = ay;
        f_t[j] = af;
    }

    RidgeStats out;
    out.stats.resize(grid.size());
    std::vector<EstimatorRecord> minimal, naive;
    minimal.reserve(grid.size());
    naive.reserve(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double lambda = grid.lambdas[g];
        double emp = 0.0, risk = 0.0, hf_res = 0.0, p2_cross = 0.0;
        for (int j = 0; j < n; ++j) {
            const double mu = grid.eigenvalues[j];
            const double h = std::isinf(lambda) ? 0.0 : mu / (mu + dn * lambda);
            const double r = 1.0 - h;
            emp += r * y_t[j] * r * y_t[j];
            const double d = h * y_t[j] - f_t[j];
            risk += d * d;
            const double b = h * f_t[j] - f_t[j];
            hf_res += b * b; // ||A F - F||^2
            const double c = h * f_t[j] - y_t[j];
            p2_cross += c * c; // ||A F - Y||^2
        }
        ModelStats& s = out.stats[g];
        s.dim_or_df = grid.tr_a[g];
        s.tr_a = grid.tr_a[g];
        s.tr_ata = grid.tr_ata[g];
        s.empirical_risk = emp / dn;
        s.true_risk = risk / dn;
        s.p1 = (risk - hf_res) / dn;      // risk(A Y) - risk(A F)
        s.p2 = (p2_cross - emp) / dn;     // emp risk(A F) - emp risk(A Y)
        s.delta = hf_res / dn + problem.sigma2 - p2_cross / dn;

        minimal.push_back(EstimatorRecord{std::int64_t(g), s.empirical_risk,
                                          (2.0 * s.tr_a - s.tr_ata) / dn, 2.0 * s.tr_a / dn,
                                          s.tr_a});
        naive.push_back(EstimatorRecord{std::int64_t(g), s.empirical_risk, s.tr_a / dn,
                                        2.0 * s.tr_a / dn, s.tr_a});
    }
    out.collection_minimal = validate_collection(std::move(minimal));
    out.collection_naive = validate_collection(std::move(naive));
    return out;
}

} // namespace penmin
