#include "penmin/jump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace penmin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sizes(const PenalizedPath& path, std::span<const double> complexities) {
    if (complexities.size() != path.models.size()) {
        throw Error(ErrorCode::bad_argument, "complexities must align with path models");
    }
}
} // namespace

JumpDiagnostics c_max_jump(const PenalizedPath& path, std::span<const double> complexities) {
    check_sizes(path, complexities);
    if (path.jump_count() == 0) {
        throw Error(ErrorCode::no_jump, "single-segment path has no jump");
    }
    double best_drop = -kInf;
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < path.models.size(); ++i) {
        const double drop = complexities[i - 1] - complexities[i];
        if (drop >= best_drop) { // >= resolves ties to the last largest jump
            best_drop = drop;
            best_i = i;
        }
    }
    JumpDiagnostics d;
    d.c_hat = path.breakpoints[best_i];
    d.jump_size = best_drop;
    return d;
}

JumpDiagnostics c_threshold(const PenalizedPath& path, std::span<const double> complexities,
                            double threshold) {
    check_sizes(path, complexities);
    if (complexities[0] <= threshold) {
        return JumpDiagnostics{0.0, std::nullopt, 0.0};
    }
    for (std::size_t i = 1; i < path.models.size(); ++i) {
        if (complexities[i] <= threshold) {
            JumpDiagnostics d;
            d.c_hat = path.breakpoints[i];
            d.jump_size = complexities[i - 1] - complexities[i];
            return d;
        }
    }
    throw Error(ErrorCode::threshold_unreachable, "no path model has complexity <= threshold");
}

WindowArgmaxSet window_argmax_set(const PenalizedPath& path, std::span<const double> complexities,
                                  double alpha, double beta) {
    check_sizes(path, complexities);
    if (!(alpha > beta && beta > 0.0)) {
        throw Error(ErrorCode::bad_argument, "window needs alpha > beta > 0");
    }
    const std::size_t i_max = path.jump_count();
    if (i_max == 0) {
        return WindowArgmaxSet{{{0.0, kInf}}, 0.0};
    }

    // Event abscissae: C_i/beta (where m(beta C) advances) and C_i/alpha
    // (where m(alpha C) advances), beta block first to match the stable-sort
    // convention for equal abscissae.
    struct Event {
        double c;
        bool is_beta;
    };
    std::vector<Event> events;
    events.reserve(2 * i_max);
    for (std::size_t i = 1; i <= i_max; ++i) events.push_back({path.breakpoints[i] / beta, true});
    for (std::size_t i = 1; i <= i_max; ++i) events.push_back({path.breakpoints[i] / alpha, false});
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.c < b.c; });

    // Sweep: after consuming the first k events, m(beta C) = model j_beta and
    // m(alpha C) = model j_alpha on the gap up to the next abscissa. Equal
    // abscissae leave an empty gap and are masked. The value on a gap is a
    // single subtraction of two complexities (no running sum), so it matches
    // a direct evaluation of the objective exactly.
    std::size_t j_beta = 0, j_alpha = 0;
    struct Piece {
        double lo, hi, value;
    };
    std::vector<Piece> pieces;
    pieces.reserve(events.size());
    double max_value = -kInf;
    for (std::size_t k = 0; k < events.size(); ++k) {
        if (events[k].is_beta) ++j_beta; else ++j_alpha;
        const double next = (k + 1 < events.size()) ? events[k + 1].c : kInf;
        if (events[k].c < next) {
            const double value = complexities[j_beta] - complexities[j_alpha];
            pieces.push_back({events[k].c, next, value});
            max_value = std::max(max_value, value);
        }
    }

    WindowArgmaxSet out;
    out.max_value = max_value;
    for (const Piece& p : pieces) {
        if (p.value == max_value) out.intervals.emplace_back(p.lo, p.hi);
    }
    return out;
}

JumpDiagnostics c_window(const PenalizedPath& path, std::span<const double> complexities,
                         double eta) {
    if (!(eta > 0.0)) {
        throw Error(ErrorCode::bad_argument, "window width eta must be > 0");
    }
    if (path.jump_count() == 0) {
        throw Error(ErrorCode::no_jump, "single-segment path has no jump");
    }
    const WindowArgmaxSet set =
        window_argmax_set(path, complexities, 1.0 + eta, 1.0 / (1.0 + eta));
    const auto& last = set.intervals.back();
    if (!std::isfinite(last.second)) {
        throw Error(ErrorCode::unbounded_interval,
                    "last maximizing interval is unbounded; geometric mean undefined");
    }
    JumpDiagnostics d;
    d.c_hat = std::sqrt(last.first * last.second);
    d.interval = last;
    d.jump_size = set.max_value;
    return d;
}

} // namespace penmin
