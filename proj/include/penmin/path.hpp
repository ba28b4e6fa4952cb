#pragma once

#include <cstdint>
#include <vector>

#include "penmin/collection.hpp"

namespace penmin {

/// The full penalized-argmin trajectory C -> argmin{empirical_risk + C*pen0}
/// as a piecewise-constant map: for C in [breakpoints[i], breakpoints[i+1]),
/// the selected record is models[i]. breakpoints.front() == 0 and
/// breakpoints.back() == +infinity (a genuine IEEE infinity, serialized as
/// the literal string "inf").
struct PenalizedPath {
    std::vector<double> breakpoints;  // size jump_count() + 2, strictly increasing
    std::vector<std::int64_t> models; // size jump_count() + 1, pen0 strictly decreasing

    std::size_t jump_count() const noexcept { return models.size() - 1; } // i_max
};

/// Computes the exact trajectory by the step construction: starting from the
/// order-smallest risk minimizer, each step moves to the candidate with
/// strictly larger risk and strictly smaller pen0 minimizing the slope
/// (f(m) - f(prev)) / (g(prev) - g(m)), which is the next breakpoint.
/// At most |M| - 1 steps; O(steps * |M|) total.
PenalizedPath compute_path(const Collection& collection);

/// Binary search over the breakpoints; a breakpoint belongs to the segment it
/// opens (half-open convention). C must be >= 0; +infinity yields the last
/// model.
std::int64_t evaluate_path(const PenalizedPath& path, double c);

/// Vertices of the lower convex envelope of the L-curve (pen0, empirical
/// risk). The vertex sequence equals the path models and slopes[i] is the
/// slope of the segment joining vertex i to vertex i+1, equal to
/// -breakpoints[i+1]. Computed directly from the path, no geometric hull.
struct EnvelopeVertices {
    std::vector<std::int64_t> ids;  // == path models
    std::vector<double> slopes;     // size ids.size() - 1
};

EnvelopeVertices lower_convex_envelope(const Collection& collection);

/// complexity of each path model, aligned with path.models.
std::vector<double> complexities_along(const Collection& collection, const PenalizedPath& path);

} // namespace penmin
