#pragma once

#include <stdexcept>
#include <string>

namespace minorpack {

// Instance exceeds a hard size cap (exact solvers, canonical forms).
struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

// A bounded search ran out of budget. Distinct from a negative answer.
struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

// An arbitrary-precision constant grew past the configured bit limit.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace minorpack
