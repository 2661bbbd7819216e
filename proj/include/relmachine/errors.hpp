#pragma once

#include <stdexcept>
#include <string>

namespace relmachine {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Operating point where a ratio of vanishing currents is requested.
class DegenerateError : public DomainError {
public:
    explicit DegenerateError(const std::string& what) : DomainError(what) {}
};

// Quantity only defined in a particular operating regime.
class RegimeError : public DomainError {
public:
    explicit RegimeError(const std::string& what) : DomainError(what) {}
};

class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relmachine
