#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "penmin/collection.hpp"
#include "penmin/jump.hpp"
#include "penmin/slope.hpp"

namespace penmin {

enum class Method {
    max_jump,
    threshold,
    window,
    slope,
    capushe,
    median,
    consensus,
    mallows,
    fpe,
    gcv,
};

const char* method_name(Method m) noexcept;
std::optional<Method> method_from_name(const std::string& name);

/// Parameters for the calibrators. NaN fields fall back to the usual
/// defaults derived from n: t_n = n/2, eta = n^-1/2, d0 = n/2, d_m0 = n/2.
struct MethodParams {
    int n = 0; // sample size; required by slope, capushe, median, consensus, fpe, gcv
    double t_n = std::numeric_limits<double>::quiet_NaN();
    double eta = std::numeric_limits<double>::quiet_NaN();
    double d0 = std::numeric_limits<double>::quiet_NaN();
    double pct = 0.15;
    double sigma2 = std::numeric_limits<double>::quiet_NaN(); // mallows
    double overpen = 1.0;                                     // mallows

    double resolved_t_n() const;
    double resolved_eta() const;
    double resolved_d0() const;
};

struct SelectDiagnostics {
    std::optional<JumpDiagnostics> jump;
    std::optional<SlopeFit> slope_fit;
    std::optional<CapusheResult> capushe;
    std::optional<std::array<double, 5>> component_c;       // median: the five calibrators
    std::vector<std::int64_t> votes;                        // consensus: the five model choices
    bool agreed = false;                                    // consensus outcome
    bool degenerate_threshold = false;                      // threshold hit C = 0
};

struct SelectionOutcome {
    std::int64_t selected_id = 0;
    double c_hat = std::numeric_limits<double>::quiet_NaN(); // NaN when undefined (consensus)
    Method method = Method::max_jump;
    SelectDiagnostics diagnostics;
};

/// Computes C-hat by the chosen calibrator on (empirical_risk, pen0,
/// complexity), then selects the order-smallest argmin of
/// empirical_risk + C-hat * pen1. pen1 already encodes the optimal shape
/// (2*pen0 for the classical slope-heuristics case), so the factor 2 lives
/// in the data, not here. Methods: max_jump, threshold, window, slope,
/// capushe, median, consensus.
SelectionOutcome minimal_penalty_select(const Collection& collection, Method method,
                                        const MethodParams& params);

/// argmin of empirical_risk + overpen * sigma2 * pen1 (pen1 holding the
/// 2 tr(A)/n shape); overpen = 1 is the plain criterion.
SelectionOutcome mallows_select(const Collection& collection, double sigma2, double overpen = 1.0);

/// empirical_risk * (1 + 2 D / (n - D)); requires D < n.
double fpe_criterion(double empirical_risk, double d, int n);

/// empirical_risk * (n / (n - df))^2; requires df < n.
double gcv_criterion(double empirical_risk, double df, int n);

SelectionOutcome fpe_select(const Collection& collection, int n);
SelectionOutcome gcv_select(const Collection& collection, int n);

} // namespace penmin
