#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "penmin/path.hpp"

namespace penmin {

struct JumpDiagnostics {
    double c_hat = 0.0;
    std::optional<std::pair<double, double>> interval; // [low, high), window method only
    double jump_size = 0.0;                            // complexity drop detected
};

/// Exact argmax set of C -> complexity(m(beta*C)) - complexity(m(alpha*C)),
/// a finite union of half-open intervals (possibly adjacent, never merged).
struct WindowArgmaxSet {
    std::vector<std::pair<double, double>> intervals; // [low, high), high may be +inf
    double max_value = 0.0;
};

/// Largest breakpoint achieving the maximal complexity drop (ties resolved to
/// the last largest jump). `complexities` is aligned with path.models.
JumpDiagnostics c_max_jump(const PenalizedPath& path, std::span<const double> complexities);

/// Smallest C at which the path complexity first drops to <= threshold;
/// returns 0 when the first model already satisfies it.
JumpDiagnostics c_threshold(const PenalizedPath& path, std::span<const double> complexities,
                            double threshold);

/// Merge/sort/cumulative-sum construction over the 2*i_max event abscissae
/// C_i/beta and C_i/alpha; duplicated abscissae are masked so that only the
/// last position of each equal group contributes. Requires alpha > beta > 0.
/// For a single-segment path the whole ray [0, inf) is returned with value 0.
WindowArgmaxSet window_argmax_set(const PenalizedPath& path, std::span<const double> complexities,
                                  double alpha, double beta);

/// Geometric mean of the last maximizing interval of the windowed drop with
/// alpha = 1 + eta, beta = 1/(1 + eta). Errors when the last interval is
/// unbounded (the geometric-mean rule is undefined there).
JumpDiagnostics c_window(const PenalizedPath& path, std::span<const double> complexities,
                         double eta);

} // namespace penmin
