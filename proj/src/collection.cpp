#include "penmin/collection.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace penmin {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
    case ErrorCode::bad_argument: return "bad_argument";
    case ErrorCode::empty_collection: return "empty_collection";
    case ErrorCode::non_finite_field: return "non_finite_field";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::negative_c: return "negative_c";
    case ErrorCode::no_jump: return "no_jump";
    case ErrorCode::threshold_unreachable: return "threshold_unreachable";
    case ErrorCode::unbounded_interval: return "unbounded_interval";
    case ErrorCode::degenerate_x: return "degenerate_x";
    case ErrorCode::too_few_points: return "too_few_points";
    case ErrorCode::too_few_dimensions: return "too_few_dimensions";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::negative_sigma2: return "negative_sigma2";
    case ErrorCode::full_dimension: return "full_dimension";
    case ErrorCode::full_df: return "full_df";
    case ErrorCode::bad_dimension: return "bad_dimension";
    case ErrorCode::wrong_family: return "wrong_family";
    case ErrorCode::singular_grid: return "singular_grid";
    case ErrorCode::bad_range: return "bad_range";
    case ErrorCode::asymmetric_matrix: return "asymmetric_matrix";
    case ErrorCode::too_short: return "too_short";
    case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

namespace {

void check_finite(std::int64_t id, double value, const char* field) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::non_finite_field,
                    "record " + std::to_string(id) + ": non-finite " + field);
    }
}

} // namespace

std::optional<std::size_t> Collection::index_of(std::int64_t id) const {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (records_[i].id == id) return i;
    }
    return std::nullopt;
}

Collection validate_collection(std::vector<EstimatorRecord> records) {
    if (records.empty()) {
        throw Error(ErrorCode::empty_collection, "empty collection");
    }
    bool negative_pen0 = false;
    std::unordered_set<std::int64_t> seen;
    seen.reserve(records.size());
    for (const auto& r : records) {
        check_finite(r.id, r.empirical_risk, "empirical_risk");
        check_finite(r.id, r.pen0, "pen0");
        check_finite(r.id, r.pen1, "pen1");
        check_finite(r.id, r.complexity, "complexity");
        if (!seen.insert(r.id).second) {
            throw Error(ErrorCode::duplicate_id, "duplicate id " + std::to_string(r.id));
        }
        if (r.pen0 < 0.0) negative_pen0 = true;
    }
    std::sort(records.begin(), records.end(), [](const EstimatorRecord& a, const EstimatorRecord& b) {
        if (a.pen0 != b.pen0) return a.pen0 < b.pen0;
        return a.id < b.id;
    });
    Collection c;
    c.records_ = std::move(records);
    c.negative_pen0_ = negative_pen0;
    return c;
}

namespace detail {

std::size_t argmin_penalized_index(const Collection& collection, double c, PenaltyField field) {
    const auto& recs = collection.records();
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const double pen = field == PenaltyField::pen0 ? recs[i].pen0 : recs[i].pen1;
        const double value = recs[i].empirical_risk + c * pen;
        // strict < keeps the first (order-smallest) minimizer on exact ties
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }
    return best;
}

} // namespace detail

std::int64_t brute_force_argmin(const Collection& collection, double c) {
    if (!(c >= 0.0)) {
        throw Error(ErrorCode::negative_c, "penalty constant must be >= 0");
    }
    return collection[detail::argmin_penalized_index(collection, c, detail::PenaltyField::pen0)].id;
}

} // namespace penmin
