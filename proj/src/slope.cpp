#include "penmin/slope.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace penmin {

double ols_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw Error(ErrorCode::too_few_points, "least-squares slope needs >= 2 points");
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= double(points.size());
    mean_y /= double(points.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx == 0.0) {
        throw Error(ErrorCode::degenerate_x, "all abscissae equal");
    }
    return sxy / sxx;
}

namespace {

// Median with the midpoint convention for even counts; scrambles `values`.
double midpoint_median(std::vector<double>& values) {
    const std::size_t k = values.size();
    auto mid = values.begin() + k / 2;
    std::nth_element(values.begin(), mid, values.end());
    if (k % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

// Lower median: the (ceil(k/2))-th order statistic; scrambles `values`.
double lower_median(std::vector<double>& values) {
    auto mid = values.begin() + (values.size() - 1) / 2;
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

void pairwise_slopes(std::span<const std::pair<double, double>> points,
                     std::vector<double>& out) {
    out.clear();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].first != points[j].first) {
                out.push_back((points[j].second - points[i].second) /
                              (points[j].first - points[i].first));
            }
        }
    }
}

} // namespace

double theil_sen_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw Error(ErrorCode::too_few_points, "robust slope needs >= 2 points");
    }
    std::vector<double> slopes;
    slopes.reserve(points.size() * (points.size() - 1) / 2);
    pairwise_slopes(points, slopes);
    if (slopes.empty()) {
        throw Error(ErrorCode::degenerate_x, "all abscissae equal");
    }
    return midpoint_median(slopes);
}

SlopeFit c_slope(const Collection& collection, double d0, int n) {
    std::vector<std::pair<double, double>> points;
    for (const auto& r : collection.records()) {
        if (r.complexity >= d0) {
            points.emplace_back(-r.complexity / double(n), r.empirical_risk);
        }
    }
    if (points.size() < 2) {
        throw Error(ErrorCode::too_few_points, "fewer than 2 records with complexity >= d0");
    }
    const double slope = ols_slope(points);

    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= double(points.size());
    mean_y /= double(points.size());
    const double intercept = mean_y - slope * mean_x;
    double sse = 0.0;
    for (const auto& [x, y] : points) {
        const double e = y - (intercept + slope * x);
        sse += e * e;
    }
    return SlopeFit{slope, static_cast<int>(points.size()), sse};
}

CapusheResult capushe(const Collection& collection, int n, double pct) {
    if (n < 4) {
        throw Error(ErrorCode::too_few_dimensions, "platform scan needs n >= 4");
    }
    if (!(pct > 0.0 && pct < 1.0)) {
        throw Error(ErrorCode::bad_argument, "pct must lie in (0, 1)");
    }

    // Step 1: one record per complexity value, keeping the smallest risk
    // (order-smallest on ties). The surviving records stay sorted.
    std::vector<const EstimatorRecord*> deduped;
    {
        std::map<double, const EstimatorRecord*> by_dim;
        for (const auto& r : collection.records()) {
            auto [it, inserted] = by_dim.try_emplace(r.complexity, &r);
            if (!inserted && r.empirical_risk < it->second->empirical_risk) {
                it->second = &r;
            }
        }
        for (auto& [dim, rec] : by_dim) deduped.push_back(rec);
    }

    const int d_top = n - 2;
    // Points sorted by complexity; the records with complexity >= D form a
    // suffix, so each scan value reuses the same array.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(deduped.size());
    for (const auto* r : deduped) {
        pts.emplace_back(-r->complexity / double(n), r->empirical_risk);
    }

    std::vector<double> c_s(static_cast<std::size_t>(d_top) + 1, 0.0); // index by D, 1..d_top
    std::vector<std::int64_t> m_d(static_cast<std::size_t>(d_top) + 1, 0);
    std::vector<double> scratch;
    for (int d = 1; d <= d_top; ++d) {
        // first record with complexity >= d
        std::size_t lo = 0;
        while (lo < deduped.size() && deduped[lo]->complexity < d) ++lo;
        if (deduped.size() - lo < 2) {
            throw Error(ErrorCode::too_few_points,
                        "fewer than 2 distinct dimensions >= " + std::to_string(d));
        }
        pairwise_slopes(std::span(pts).subspan(lo), scratch);
        if (scratch.empty()) {
            throw Error(ErrorCode::degenerate_x, "degenerate dimension range");
        }
        const double slope = midpoint_median(scratch);
        c_s[d] = slope;
        // Selected model at 2*C_s(D); the slope can be negative on
        // pathological data, the scan handles any sign.
        const std::size_t idx =
            detail::argmin_penalized_index(collection, 2.0 * slope, detail::PenaltyField::pen0);
        m_d[d] = collection[idx].id;
    }

    CapusheResult result;
    int run_start = 1;
    for (int d = 2; d <= d_top + 1; ++d) {
        if (d > d_top || m_d[d] != m_d[run_start]) {
            result.platforms.push_back(
                Platform{double(run_start), d - run_start, m_d[run_start]});
            run_start = d;
        }
    }

    // Step 4: last platform with N_i > pct * (n - 2); fallback to the last
    // among the platforms of largest size.
    const double min_len = pct * double(d_top);
    int chosen = -1;
    for (int i = 0; i < int(result.platforms.size()); ++i) {
        if (double(result.platforms[i].length) > min_len) chosen = i;
    }
    if (chosen < 0) {
        int largest = 0;
        for (int i = 0; i < int(result.platforms.size()); ++i) {
            if (result.platforms[i].length >= largest) {
                largest = result.platforms[i].length;
                chosen = i;
            }
        }
    }
    result.chosen_platform = chosen;
    result.selected_id = result.platforms[chosen].model;

    const int p_start = int(result.platforms[chosen].d_start);
    const int p_len = result.platforms[chosen].length;
    std::vector<double> platform_slopes(c_s.begin() + p_start, c_s.begin() + p_start + p_len);
    result.c_hat = lower_median(platform_slopes);
    return result;
}

double c_median(std::span<const double> five_estimates) {
    if (five_estimates.size() != 5) {
        throw Error(ErrorCode::bad_argument, "median combiner takes exactly 5 estimates");
    }
    std::vector<double> v(five_estimates.begin(), five_estimates.end());
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw Error(ErrorCode::non_finite, "median combiner needs finite estimates");
        }
    }
    auto mid = v.begin() + 2;
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

std::pair<std::int64_t, bool> consensus(std::span<const std::int64_t> five_model_choices,
                                        std::int64_t default_id) {
    if (five_model_choices.size() != 5) {
        throw Error(ErrorCode::bad_argument, "consensus takes exactly 5 model choices");
    }
    for (std::size_t i = 0; i < 5; ++i) {
        int count = 0;
        for (std::size_t j = 0; j < 5; ++j) {
            if (five_model_choices[j] == five_model_choices[i]) ++count;
        }
        if (count >= 3) return {five_model_choices[i], true};
    }
    return {default_id, false};
}

} // namespace penmin
