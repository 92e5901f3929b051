#pragma once

#include <stdexcept>
#include <string>

namespace unicrit {

// Raised when an integer could not be fully factored within the configured
// effort budget. Callers that need a complete factorization (the periodic
// search, primitive-divisor analysis) must not swallow this.
struct incomplete_factorization : std::runtime_error {
    explicit incomplete_factorization(const std::string& what)
        : std::runtime_error(what) {}
};

// Raised when a computation would exceed the configured size guard
// (coefficient slots of an iterate, bit length of an orbit term).
struct size_guard_exceeded : std::runtime_error {
    explicit size_guard_exceeded(const std::string& what)
        : std::runtime_error(what) {}
};

// Raised when a sweep refuses to start because its estimated volume
// exceeds the configured cap.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace unicrit
