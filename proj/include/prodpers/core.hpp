#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace prodpers {

using value_t = double;
using index_t = std::int64_t;

constexpr value_t kInf = std::numeric_limits<value_t>::infinity();

// Single comparison tolerance used for endpoint arithmetic everywhere.
// All endpoint comparisons go through the helpers below so that interval
// normalization, case dispatch and multiset comparison stay consistent.
constexpr value_t kDefaultTolerance = 1e-9;

inline bool approx_eq(value_t x, value_t y, value_t eps = kDefaultTolerance) {
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::fabs(x - y) <= eps;
}

inline bool approx_lt(value_t x, value_t y, value_t eps = kDefaultTolerance) {
    return x < y && !approx_eq(x, y, eps);
}

inline bool approx_le(value_t x, value_t y, value_t eps = kDefaultTolerance) {
    return x < y || approx_eq(x, y, eps);
}

// Shortest decimal representation that round-trips; "inf" for infinity.
// Used by every text emitter so written values reload bit-exactly.
inline std::string format_value(value_t v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, result.ptr);
}

// Thrown when a requested computation falls outside the closed-form case
// tables (e.g. some p=inf hom/ext configurations with infinite endpoints).
class unsupported_case : public std::domain_error {
public:
    explicit unsupported_case(const std::string& what) : std::domain_error(what) {}
};

// Thrown when an input complex fails validation.
class invalid_filtration : public std::runtime_error {
public:
    explicit invalid_filtration(const std::string& what) : std::runtime_error(what) {}
};

} // namespace prodpers
