// errors.hpp: exception types shared by the memflow library and CLI

#pragma once

#include <stdexcept>
#include <string>

namespace memflow {

// A state or matrix violates the density-matrix invariants.
class InvalidState : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A scalar parameter lies outside its admissible range (negative Γ, μ ∉ (0,1),
// overdamped bath, undersampled grid, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A truncated series or adaptive quadrature hit its work cap before reaching
// the requested tolerance. Carries what was computed so far.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, double partial_value, double achieved_tol)
        : std::runtime_error(what), partial_value_(partial_value), achieved_tol_(achieved_tol) {}

    double partial_value() const noexcept { return partial_value_; }
    double achieved_tolerance() const noexcept { return achieved_tol_; }

private:
    double partial_value_;
    double achieved_tol_;
};

} // namespace memflow
