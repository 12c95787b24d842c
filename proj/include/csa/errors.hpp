#pragma once

#include <stdexcept>
#include <string>

namespace csa {

/// Invalid user-facing configuration (bad flag value, dimension mismatch, ...).
/// Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical routine could not reach the requested accuracy. Carries the
/// best error bound that was achieved instead of silently degrading.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& msg, double achieved_bound)
        : std::runtime_error(msg), best_bound(achieved_bound) {}
    double best_bound;
};

/// Non-finite value encountered where a finite one is required.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg, int child_index = -1)
        : std::runtime_error(msg), child(child_index) {}
    int child;
};

/// Caller violated an inter-module contract (mismatched params, inconsistent
/// moment inputs, ...).
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace csa
