#pragma once

#include <stdexcept>
#include <string>

namespace w2pt {

/// Configuration rejected before any computation started (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Time step violates the stability bound for the scenario's maximum
/// potential (CLI exit code 3).
class CflError : public std::runtime_error {
public:
    explicit CflError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical self-consistency check failed mid-run: imaginary residues
/// above threshold, negative covariance discriminant, and the like
/// (CLI exit code 4).
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested dense storage exceeds the configured memory budget.
class MemoryBudgetError : public std::runtime_error {
public:
    explicit MemoryBudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace w2pt
