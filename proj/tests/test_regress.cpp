#include "doctest.h"

#include <cmath>

#include "penmin/regress.hpp"
#include "penmin/rng.hpp"

using namespace penmin;

TEST_CASE("signal normalization") {
    for (int n : {10, 100, 250}) {
        const auto p = generate_problem(Family::easy, n, 0.25, 3);
        double f2 = 0.0;
        for (double f : p.F) f2 += f * f;
        CHECK(f2 / n == doctest::Approx(1.0).epsilon(1e-12));
    }
    // base factor of the 1/i signal at n = 100
    double inv_sq = 0.0;
    for (int i = 1; i <= 100; ++i) inv_sq += 1.0 / double(i) / double(i);
    CHECK(std::pow(inv_sq, -0.5) == doctest::Approx(0.7821).epsilon(1e-4));
    const auto p = generate_problem(Family::easy, 100, 0.25, 3);
    CHECK(p.F[0] == doctest::Approx(10.0 * std::pow(inv_sq, -0.5)).epsilon(1e-12));
}

TEST_CASE("zero noise copies the signal") {
    const auto p = generate_problem(Family::hard, 64, 0.0, 9);
    CHECK(p.Y == p.F);
}

TEST_CASE("problems are deterministic in the seed") {
    const auto a = generate_problem(Family::easy, 50, 0.25, 1234);
    const auto b = generate_problem(Family::easy, 50, 0.25, 1234);
    const auto c = generate_problem(Family::easy, 50, 0.25, 1235);
    CHECK(a.Y == b.Y);
    CHECK(a.Y != c.Y);
    // easy and hard share signal and noise at the same seed
    const auto h = generate_problem(Family::hard, 50, 0.25, 1234);
    CHECK(a.F == h.F);
    CHECK(a.noise == h.noise);
}

TEST_CASE("projection risks via suffix sums") {
    const int n = 40;
    const auto p = generate_problem(Family::easy, n, 0.25, 77);
    const auto stats = projection_stats(p);
    REQUIRE(stats.stats.size() == std::size_t(n));
    for (int m : {1, 7, n - 1, n}) {
        double suffix = 0.0;
        for (int i = m; i < n; ++i) suffix += p.Y[i] * p.Y[i];
        CHECK(stats.stats[m - 1].empirical_risk == doctest::Approx(suffix / n).epsilon(1e-12));
    }
    // collection carries pen0 = D/n, pen1 = 2D/n, complexity = D
    for (const auto& r : stats.collection.records()) {
        CHECK(r.pen0 == doctest::Approx(r.complexity / n).epsilon(1e-15));
        CHECK(r.pen1 == 2.0 * r.pen0);
    }
}

TEST_CASE("noiseless full model interpolates") {
    const auto p = generate_problem(Family::easy, 30, 0.0, 5);
    const auto stats = projection_stats(p);
    CHECK(stats.stats.back().empirical_risk == 0.0);
    CHECK(stats.stats.back().true_risk == 0.0);
}

TEST_CASE("excess risks equal the projected noise") {
    const auto p = generate_problem(Family::hard, 32, 0.5, 21);
    const auto stats = projection_stats(p);
    for (int m = 1; m <= 32; ++m) {
        const auto& s = stats.stats[m - 1];
        CHECK(s.p1 == s.p2);
        double in_e2 = 0.0;
        if (m % 2 == 1) {
            for (int i = 0; i < m; ++i) in_e2 += p.noise[i] * p.noise[i];
        } else {
            for (int i = 32 - m; i < 32; ++i) in_e2 += p.noise[i] * p.noise[i];
        }
        CHECK(s.p1 == doctest::Approx(in_e2 / 32).epsilon(1e-12));
    }
}

TEST_CASE("hard odd models coincide with easy models") {
    const auto p_easy = generate_problem(Family::easy, 20, 0.25, 8);
    const auto p_hard = generate_problem(Family::hard, 20, 0.25, 8);
    const auto se = projection_stats(p_easy);
    const auto sh = projection_stats(p_hard);
    for (int m = 1; m <= 20; m += 2) {
        CHECK(se.stats[m - 1].empirical_risk == sh.stats[m - 1].empirical_risk);
        CHECK(se.stats[m - 1].true_risk == sh.stats[m - 1].true_risk);
    }
}

TEST_CASE("approximation error monotone for easy, parity-broken for hard") {
    const auto p = generate_problem(Family::hard, 24, 0.0, 2);
    const auto sh = projection_stats(p);
    // noiseless true risk IS the approximation error; even (last-m) models
    // are much worse than their odd neighbours, except m = n (full model)
    for (int m = 2; m <= 22; m += 2) {
        CHECK(sh.stats[m - 1].true_risk > sh.stats[m - 2].true_risk);
    }
    const auto pe = generate_problem(Family::easy, 24, 0.0, 2);
    const auto se = projection_stats(pe);
    for (int m = 2; m <= 24; ++m) {
        CHECK(se.stats[m - 1].true_risk <= se.stats[m - 2].true_risk);
    }
}

TEST_CASE("Laplace kernel entries") {
    const std::vector<double> x{0.0, 1.0};
    const auto k = laplace_kernel(x, 8.0);
    CHECK(k(0, 0) == 1.0);
    CHECK(k(1, 1) == 1.0);
    CHECK(k(0, 1) == doctest::Approx(std::exp(-8.0)).epsilon(1e-15));

    const std::vector<double> same{0.3, 0.3};
    CHECK(laplace_kernel(same, 8.0)(0, 1) == 1.0);
}

TEST_CASE("ridge grid pins integer degrees of freedom") {
    const int n = 24;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = double(i) / (n - 1);
    const auto grid = ridge_grid(laplace_kernel(x, 8.0), n);
    REQUIRE(grid.max_df >= n - 1); // Laplace kernel is essentially full rank
    CHECK(std::isinf(grid.lambdas[0]));
    CHECK(grid.tr_a[0] == 0.0);
    for (int i = 1; i < int(grid.size()); ++i) {
        CHECK(std::abs(grid.tr_a[i] - i) <= 1e-6);
        CHECK(grid.lambdas[i] < grid.lambdas[i - 1]);
        CHECK(grid.tr_ata[i] <= grid.tr_a[i]);
    }
}

TEST_CASE("ridge risks in the eigenbasis") {
    const int n = 24;
    const auto p = generate_problem(Family::kernel, n, 1.0, 31);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = double(i) / (n - 1);
    const auto grid = ridge_grid(laplace_kernel(x, 8.0), n);
    const auto stats = ridge_stats(p, grid);

    // the null estimator: empirical risk = ||Y||^2 / n, true risk = ||F||^2/n
    double y2 = 0.0, f2 = 0.0;
    for (int i = 0; i < n; ++i) {
        y2 += p.Y[i] * p.Y[i];
        f2 += p.F[i] * p.F[i];
    }
    CHECK(stats.stats[0].empirical_risk == doctest::Approx(y2 / n).epsilon(1e-9));
    CHECK(stats.stats[0].true_risk == doctest::Approx(f2 / n).epsilon(1e-9));

    // direct dense evaluation at one mid-grid lambda
    const std::size_t g = grid.size() / 2;
    const double lambda = grid.lambdas[g];
    Matrix shifted = laplace_kernel(x, 8.0);
    // (K + n lambda I) z = Y solved through the eigendecomposition is what
    // ridge_stats does; check against explicit Gaussian elimination
    for (int i = 0; i < n; ++i) shifted(i, i) += n * lambda;
    // solve shifted z = Y with partial pivoting
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = shifted(i, j);
        a[i][n] = p.Y[i];
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        std::swap(a[col], a[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<double> z(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = a[r][n];
        for (int j = r + 1; j < n; ++j) acc -= a[r][j] * z[j];
        z[r] = acc / a[r][r];
    }
    const auto fhat = mat_vec(laplace_kernel(x, 8.0), z);
    double emp = 0.0;
    for (int i = 0; i < n; ++i) {
        emp += (p.Y[i] - fhat[i]) * (p.Y[i] - fhat[i]);
    }
    CHECK(stats.stats[g].empirical_risk == doctest::Approx(emp / n).epsilon(1e-7));

    // minimal-shape collection: pen0 = (2 trA - trA'A)/n, naive: trA/n
    const auto& rec = stats.collection_minimal.records()[g];
    const auto idx = stats.collection_minimal.index_of(std::int64_t(g));
    REQUIRE(idx.has_value());
    CHECK(stats.collection_minimal[*idx].pen0 ==
          doctest::Approx((2.0 * grid.tr_a[g] - grid.tr_ata[g]) / n).epsilon(1e-12));
    (void)rec;
}

TEST_CASE("expected ridge empirical risk matches the closed form") {
    // E[emp risk] = ||(I-A)F||^2/n + s2 (n + tr(A'A) - 2 tr A)/n, checked by
    // Monte Carlo at a fixed mid-grid lambda
    const int n = 20;
    const double s2 = 0.49;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = double(i) / (n - 1);
    const auto grid = ridge_grid(laplace_kernel(x, 8.0), n);
    const std::size_t g = grid.size() / 2;

    const auto base = generate_problem(Family::kernel, n, s2, 1);
    // ||(I - A) F||^2 via the eigenbasis
    double bias = 0.0;
    {
        const auto& q = grid.eigenvectors;
        for (int j = 0; j < n; ++j) {
            double ft = 0.0;
            for (int i = 0; i < n; ++i) ft += q(i, j) * base.F[i];
            const double h = grid.eigenvalues[j] / (grid.eigenvalues[j] + n * grid.lambdas[g]);
            bias += (1.0 - h) * ft * (1.0 - h) * ft;
        }
    }
    const double expected =
        bias / n + s2 * (n + grid.tr_ata[g] - 2.0 * grid.tr_a[g]) / n;

    const int reps = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto p = generate_problem(Family::kernel, n, s2, substream_seed(424242, r));
        const auto stats = ridge_stats(p, grid);
        const double v = stats.stats[g].empirical_risk;
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / reps;
    const double sd = std::sqrt((sum_sq - reps * mean * mean) / (reps - 1));
    const double se = sd / std::sqrt(double(reps));
    CHECK(std::abs(mean - expected) <= 3.0 * se);
}
