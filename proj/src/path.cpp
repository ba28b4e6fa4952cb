#include "penmin/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace penmin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PenalizedPath compute_path(const Collection& collection) {
    const auto& recs = collection.records();
    const std::size_t count = recs.size();

    // m0: order-smallest empirical-risk minimizer.
    std::size_t current = 0;
    double best_f = recs[0].empirical_risk;
    for (std::size_t i = 1; i < count; ++i) {
        if (recs[i].empirical_risk < best_f) {
            best_f = recs[i].empirical_risk;
            current = i;
        }
    }

    PenalizedPath path;
    path.breakpoints.push_back(0.0);
    path.models.push_back(recs[current].id);

    while (true) {
        const double f_prev = recs[current].empirical_risk;
        const double g_prev = recs[current].pen0;
        double best_slope = kInf;
        std::size_t best_idx = count;
        // Records are sorted by pen0, so candidates with g < g_prev form a
        // prefix. Strict < on the slope keeps the order-smallest tie.
        for (std::size_t i = 0; i < count && recs[i].pen0 < g_prev; ++i) {
            if (recs[i].empirical_risk > f_prev) {
                const double slope = (recs[i].empirical_risk - f_prev) / (g_prev - recs[i].pen0);
                if (slope < best_slope) {
                    best_slope = slope;
                    best_idx = i;
                }
            }
        }
        if (best_idx == count) {
            path.breakpoints.push_back(kInf);
            break;
        }
        path.breakpoints.push_back(best_slope);
        path.models.push_back(recs[best_idx].id);
        current = best_idx;
    }
    return path;
}

std::int64_t evaluate_path(const PenalizedPath& path, double c) {
    if (!(c >= 0.0)) {
        throw Error(ErrorCode::negative_c, "path evaluation needs C >= 0");
    }
    const auto& bp = path.breakpoints;
    auto it = std::upper_bound(bp.begin(), bp.end(), c);
    std::size_t segment = static_cast<std::size_t>(it - bp.begin()) - 1;
    if (segment >= path.models.size()) segment = path.models.size() - 1; // c == +inf
    return path.models[segment];
}

EnvelopeVertices lower_convex_envelope(const Collection& collection) {
    const PenalizedPath path = compute_path(collection);
    EnvelopeVertices env;
    env.ids = path.models;
    env.slopes.reserve(path.jump_count());
    for (std::size_t i = 1; i + 1 < path.breakpoints.size(); ++i) {
        env.slopes.push_back(-path.breakpoints[i]);
    }
    return env;
}

std::vector<double> complexities_along(const Collection& collection, const PenalizedPath& path) {
    std::vector<double> out;
    out.reserve(path.models.size());
    for (std::int64_t id : path.models) {
        auto idx = collection.index_of(id);
        if (!idx) {
            throw Error(ErrorCode::bad_argument, "path model not in collection");
        }
        out.push_back(collection[*idx].complexity);
    }
    return out;
}

} // namespace penmin
