#pragma once

#include <stdexcept>
#include <string>

namespace penmin {

// Stable numeric codes; mirrored by the C API in penmin.h.
enum class ErrorCode : int {
    ok = 0,
    io = 1,
    parse = 2,
    bad_argument = 3,
    empty_collection = 10,
    non_finite_field = 11,
    duplicate_id = 12,
    negative_c = 20,
    no_jump = 21,
    threshold_unreachable = 22,
    unbounded_interval = 23,
    degenerate_x = 30,
    too_few_points = 31,
    too_few_dimensions = 32,
    non_finite = 33,
    negative_sigma2 = 40,
    full_dimension = 41,
    full_df = 42,
    bad_dimension = 50,
    wrong_family = 51,
    singular_grid = 52,
    bad_range = 60,
    asymmetric_matrix = 61,
    too_short = 62,
    internal = 99,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code) noexcept;

} // namespace penmin
