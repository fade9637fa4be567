#pragma once

#include <stdexcept>
#include <string>

namespace hmstab {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (polynomials, points, rationals, certificates).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// A documented precondition was violated by the caller.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// An enumeration would exceed the configured point budget.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Internal consistency failure (e.g. a certified negative contradicting an
// unconditional positive verdict). Always a bug, never a user error.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

} // namespace hmstab
