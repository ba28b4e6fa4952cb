#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "penmin/errors.hpp"

namespace penmin {

/// One candidate estimator: empirical risk, the two penalty shapes, and a
/// complexity measure. For projection estimators in regression,
/// empirical_risk = n^-1 ||Fhat_m - Y||^2, pen0 = D_m/n, pen1 = 2 D_m/n and
/// complexity = D_m; for general linear estimators pen0 and pen1 carry the
/// (2 tr A - tr A'A)/n and 2 tr(A)/n shapes and complexity = tr(A).
struct EstimatorRecord {
    std::int64_t id = 0;
    double empirical_risk = 0.0;
    double pen0 = 0.0;
    double pen1 = 0.0;
    double complexity = 0.0;
};

/// An immutable, validated collection of estimator records, ordered by the
/// strict total order "pen0 ascending, id ascending". All path and selection
/// routines rely on this order being fixed at construction.
class Collection {
public:
    /// Default-constructed collections are empty placeholders; populated
    /// instances come from validate_collection.
    Collection() = default;

    const std::vector<EstimatorRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    const EstimatorRecord& operator[](std::size_t i) const { return records_[i]; }

    /// True when some record has pen0 < 0. Accepted (linear density
    /// estimators can have negative minimal penalties) but worth surfacing.
    bool has_negative_pen0() const noexcept { return negative_pen0_; }

    std::optional<std::size_t> index_of(std::int64_t id) const;

private:
    friend Collection validate_collection(std::vector<EstimatorRecord> records);

    std::vector<EstimatorRecord> records_;
    bool negative_pen0_ = false;
};

/// Sorts records by (pen0, id) to define the order, rejecting empty input,
/// non-finite fields and duplicate ids. Negative pen0 only sets a warning
/// flag on the result.
Collection validate_collection(std::vector<EstimatorRecord> records);

/// Exact scan for the order-smallest minimizer of empirical_risk + C*pen0.
/// Comparisons are plain floating comparisons; ties must be bitwise equal.
std::int64_t brute_force_argmin(const Collection& collection, double c);

namespace detail {
// Unchecked penalized argmin over an arbitrary penalty field; used internally
// where C may be negative (e.g. robust slopes on pathological data).
enum class PenaltyField { pen0, pen1 };
std::size_t argmin_penalized_index(const Collection& collection, double c, PenaltyField field);
} // namespace detail

} // namespace penmin
