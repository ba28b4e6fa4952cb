#include "doctest.h"

#include <cmath>

#include "penmin/jump.hpp"
#include "test_helpers.hpp"

using namespace penmin;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PenalizedPath path_012() {
    PenalizedPath p;
    p.breakpoints = {0.0, 1.0, 2.0, kInf};
    p.models = {0, 1, 2};
    return p;
}

} // namespace

TEST_CASE("max jump ties resolve to the last largest jump") {
    const auto p = path_012();
    const std::vector<double> comp{3.0, 2.0, 1.0}; // drops (1, 1)
    const auto d = c_max_jump(p, comp);
    CHECK(d.c_hat == 2.0);
    CHECK(d.jump_size == 1.0);
}

TEST_CASE("max jump finds the dominant drop") {
    PenalizedPath p;
    p.breakpoints = {0.0, 1.0 / 3.0, 2.0, kInf};
    p.models = {0, 1, 2};
    const std::vector<double> comp{5.0, 2.0, 1.0}; // drops (3, 1)
    CHECK(c_max_jump(p, comp).c_hat == 1.0 / 3.0);
}

TEST_CASE("single-segment path has no jump") {
    PenalizedPath p;
    p.breakpoints = {0.0, kInf};
    p.models = {0};
    const std::vector<double> comp{3.0};
    CHECK_THROWS_AS((void)c_max_jump(p, comp), Error);
    CHECK_THROWS_AS((void)c_window(p, comp, 0.5), Error);
}

TEST_CASE("threshold calibrator picks the first crossing") {
    const auto p = path_012();
    const std::vector<double> comp{3.0, 2.0, 1.0};
    CHECK(c_threshold(p, comp, 1.5).c_hat == 2.0);
    CHECK(c_threshold(p, comp, 2.5).c_hat == 1.0);
    CHECK(c_threshold(p, comp, 3.0).c_hat == 0.0); // satisfied from the start
    CHECK_THROWS_AS((void)c_threshold(p, comp, 0.5), Error);
}

TEST_CASE("threshold is non-increasing in T") {
    SplitMix64 rng(314);
    for (int rep = 0; rep < 50; ++rep) {
        const auto sp = testutil::random_path(rng, 12);
        const double lo = sp.complexities.back();
        const double hi = sp.complexities.front();
        double prev = kInf;
        for (double t = lo; t <= hi; t += (hi - lo) / 23.0) {
            const double c = c_threshold(sp.path, sp.complexities, t).c_hat;
            CHECK(c <= prev);
            prev = c;
        }
    }
}

TEST_CASE("window set on a single jump") {
    PenalizedPath p;
    p.breakpoints = {0.0, 1.0, kInf};
    p.models = {0, 1};
    const std::vector<double> comp{10.0, 1.0};
    const double eta = 0.3;
    const auto set = window_argmax_set(p, comp, 1.0 + eta, 1.0 / (1.0 + eta));
    CHECK(set.max_value == 9.0);
    REQUIRE(set.intervals.size() == 1);
    CHECK(set.intervals[0].first == doctest::Approx(1.0 / (1.0 + eta)).epsilon(1e-15));
    CHECK(set.intervals[0].second == doctest::Approx(1.0 + eta).epsilon(1e-15));

    // geometric mean of [1/(1+eta), 1+eta) is exactly 1
    CHECK(c_window(p, comp, eta).c_hat == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("window set with masked duplicate abscissae") {
    // Dyadic variant of the two-jump geometry: with breakpoints (0, 1, 4)
    // and alpha = 2, beta = 1/2, the abscissae C_1/beta and C_2/alpha
    // coincide exactly (both 2), so the middle position is masked and the
    // argmax set is a union of two adjacent, unmerged intervals.
    PenalizedPath p;
    p.breakpoints = {0.0, 1.0, 4.0, kInf};
    p.models = {0, 1, 2};
    const std::vector<double> comp{3.0, 2.0, 1.0};
    const auto set = window_argmax_set(p, comp, 2.0, 0.5);
    CHECK(set.max_value == 1.0);
    REQUIRE(set.intervals.size() == 2); // adjacent but not merged
    CHECK(set.intervals[0] == std::pair<double, double>{0.5, 2.0});
    CHECK(set.intervals[1] == std::pair<double, double>{2.0, 8.0});

    // last interval [2, 8) has geometric mean 4
    CHECK(c_window(p, comp, 1.0).c_hat == 4.0);
}

TEST_CASE("degenerate window covers the whole ray") {
    PenalizedPath p;
    p.breakpoints = {0.0, kInf};
    p.models = {0};
    const std::vector<double> comp{3.0};
    const auto set = window_argmax_set(p, comp, 2.0, 0.5);
    CHECK(set.max_value == 0.0);
    REQUIRE(set.intervals.size() == 1);
    CHECK(set.intervals[0].first == 0.0);
    CHECK(std::isinf(set.intervals[0].second));
}

TEST_CASE("window set matches the dense-grid argmax") {
    SplitMix64 rng(555);
    for (int rep = 0; rep < 60; ++rep) {
        const auto sp = testutil::random_path(rng, 15);
        const double eta = 0.05 + rng.next_unit_open();
        const double alpha = 1.0 + eta, beta = 1.0 / (1.0 + eta);
        const auto set = window_argmax_set(sp.path, sp.complexities, alpha, beta);
        const auto scan = testutil::window_grid_scan(sp, alpha, beta, 1e-3);
        REQUIRE(scan.max_value == set.max_value);
        for (double c : scan.argmax_points) {
            REQUIRE(testutil::inside_set(set, c));
        }
    }
}

TEST_CASE("vanishing window recovers the maximal jump") {
    SplitMix64 rng(808);
    for (int rep = 0; rep < 50; ++rep) {
        const auto sp = testutil::random_path(rng, 10);
        const auto maxj = c_max_jump(sp.path, sp.complexities);
        const auto win = c_window(sp.path, sp.complexities, 1e-9);
        CHECK(win.c_hat == doctest::Approx(maxj.c_hat).epsilon(1e-6));
    }
}

TEST_CASE("single large jump: all three jump calibrators coincide") {
    PenalizedPath p;
    p.breakpoints = {0.0, 0.7, kInf};
    p.models = {0, 1};
    const std::vector<double> comp{40.0, 2.0};
    const double c_star = 0.7;
    CHECK(c_max_jump(p, comp).c_hat == c_star);
    for (double t : {3.0, 10.0, 39.0}) {
        CHECK(c_threshold(p, comp, t).c_hat == c_star);
    }
    for (double eta : {0.01, 0.05, 0.1}) {
        CHECK(c_window(p, comp, eta).c_hat == doctest::Approx(c_star).epsilon(1e-12));
    }
}

TEST_CASE("unbounded maximizing interval is rejected") {
    // complexity increasing along the path: the windowed drop is maximal (0)
    // on the unbounded tail
    PenalizedPath p;
    p.breakpoints = {0.0, 1.0, kInf};
    p.models = {0, 1};
    const std::vector<double> comp{1.0, 5.0};
    try {
        (void)c_window(p, comp, 0.5);
        FAIL("expected unbounded_interval");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unbounded_interval);
    }
}
