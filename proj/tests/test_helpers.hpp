#pragma once

// Test-only generators and independent oracles. Everything here stays
// deliberately naive (direct scans, dense grids) so it can vouch for the
// clever implementations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "penmin/collection.hpp"
#include "penmin/jump.hpp"
#include "penmin/path.hpp"
#include "penmin/rng.hpp"

namespace testutil {

// Random collection with |M| in [2, max_m]: risks i.i.d. uniform, pen0
// uniform then sorted ascending, complexity proportional to pen0 (the
// projection geometry).
inline penmin::Collection random_collection(penmin::SplitMix64& rng, int max_m) {
    const int m = 2 + int(rng.next() % std::uint64_t(max_m - 1));
    std::vector<double> pen0(m);
    for (auto& g : pen0) g = rng.next_unit_open();
    std::sort(pen0.begin(), pen0.end());
    std::vector<penmin::EstimatorRecord> records(m);
    for (int i = 0; i < m; ++i) {
        records[i] = penmin::EstimatorRecord{i, rng.next_unit_open(), pen0[i], 2.0 * pen0[i],
                                             100.0 * pen0[i]};
    }
    return penmin::validate_collection(std::move(records));
}

// Random synthetic path: strictly increasing breakpoints, strictly
// decreasing complexities, ids 0..i_max.
struct SyntheticPath {
    penmin::PenalizedPath path;
    std::vector<double> complexities;
};

inline SyntheticPath random_path(penmin::SplitMix64& rng, int max_jumps) {
    const int i_max = 1 + int(rng.next() % std::uint64_t(max_jumps));
    SyntheticPath out;
    out.path.breakpoints.push_back(0.0);
    double c = 0.0;
    for (int i = 0; i < i_max; ++i) {
        c += 0.05 + rng.next_unit_open();
        out.path.breakpoints.push_back(c);
    }
    out.path.breakpoints.push_back(std::numeric_limits<double>::infinity());
    double comp = 50.0 + 10.0 * rng.next_unit_open();
    for (int i = 0; i <= i_max; ++i) {
        out.path.models.push_back(i);
        out.complexities.push_back(comp);
        comp -= 0.1 + 5.0 * rng.next_unit_open();
    }
    return out;
}

// Objective of the windowed drop at a single C, evaluated directly through
// the path.
inline double window_objective(const SyntheticPath& sp, double alpha, double beta, double c) {
    const auto lo = penmin::evaluate_path(sp.path, beta * c);
    const auto hi = penmin::evaluate_path(sp.path, alpha * c);
    return sp.complexities[std::size_t(lo)] - sp.complexities[std::size_t(hi)];
}

struct GridScan {
    double max_value = 0.0;
    std::vector<double> argmax_points;
};

// Dense-grid argmax of the windowed drop: a uniform grid with step
// step_fraction * span, augmented with one representative inside every
// piece of the piecewise-constant objective (midpoints between consecutive
// event abscissae), which makes the scan exact.
inline GridScan window_grid_scan(const SyntheticPath& sp, double alpha, double beta,
                                 double step_fraction = 1e-4) {
    std::vector<double> events;
    for (std::size_t i = 1; i + 1 < sp.path.breakpoints.size(); ++i) {
        events.push_back(sp.path.breakpoints[i] / beta);
        events.push_back(sp.path.breakpoints[i] / alpha);
    }
    std::sort(events.begin(), events.end());
    const double span = events.back();

    std::vector<double> candidates;
    const double step = step_fraction * span;
    for (double c = 0.0; c <= span * 1.05; c += step) candidates.push_back(c);
    double prev = 0.0;
    for (double e : events) {
        if (e > prev) candidates.push_back(0.5 * (prev + e));
        prev = e;
    }
    candidates.push_back(span * 1.1);

    GridScan scan;
    scan.max_value = -std::numeric_limits<double>::infinity();
    for (double c : candidates) {
        const double v = window_objective(sp, alpha, beta, c);
        if (v > scan.max_value) scan.max_value = v;
    }
    for (double c : candidates) {
        if (window_objective(sp, alpha, beta, c) == scan.max_value) {
            scan.argmax_points.push_back(c);
        }
    }
    return scan;
}

inline bool inside_set(const penmin::WindowArgmaxSet& set, double c) {
    for (const auto& [lo, hi] : set.intervals) {
        if (c >= lo && c < hi) return true;
    }
    return false;
}

} // namespace testutil
