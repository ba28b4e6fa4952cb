#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "penmin/collection.hpp"

namespace penmin {

struct SlopeFit {
    double c_hat = 0.0;
    int n_points = 0;
    double residual_sse = 0.0;
};

struct Platform {
    double d_start = 0.0;    // first dimension of the platform
    int length = 0;          // N_i
    std::int64_t model = 0;  // m_i
};

struct CapusheResult {
    std::int64_t selected_id = 0;
    double c_hat = 0.0;
    std::vector<Platform> platforms;
    int chosen_platform = -1; // index into platforms
};

/// Ordinary least-squares slope of y against x. Requires >= 2 points with
/// not all x equal.
double ols_slope(std::span<const std::pair<double, double>> points);

/// Median of all pairwise slopes over pairs with distinct x; an even count
/// takes the midpoint of the two central values. Deterministic and
/// parameter-free.
double theil_sen_slope(std::span<const std::pair<double, double>> points);

/// Slope of the empirical risk regressed on -complexity/n over records with
/// complexity >= d0. On exactly linear data with risk = (n - D)/n * s2 this
/// returns s2.
SlopeFit c_slope(const Collection& collection, double d0, int n);

/// Platform-stability slope procedure: robust slopes C_s(D) for D = 1..n-2,
/// the induced model choices m(2 C_s(D)), their platforms, the last platform
/// longer than pct*(n-2) (fallback: last among the largest), and the lower
/// median of C_s over that platform.
CapusheResult capushe(const Collection& collection, int n, double pct = 0.15);

/// Middle order statistic of exactly 5 finite values.
double c_median(std::span<const double> five_estimates);

/// Majority vote: if >= 3 of the 5 ids coincide return that id with
/// agreed = true, else the default id with agreed = false.
std::pair<std::int64_t, bool> consensus(std::span<const std::int64_t> five_model_choices,
                                        std::int64_t default_id);

} // namespace penmin
