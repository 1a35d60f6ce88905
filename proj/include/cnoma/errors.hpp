#pragma once

#include <stdexcept>
#include <string>

namespace cnoma {

/// Base class for numeric failures (non-convergence, unusable regime).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A truncated series did not meet its tail tolerance at the allowed order.
class series_truncation_error : public numeric_error {
public:
    series_truncation_error(const std::string& what, int order_used, double last_term)
        : numeric_error(what), order_used(order_used), last_term(last_term) {}

    int order_used;
    double last_term;
};

} // namespace cnoma
