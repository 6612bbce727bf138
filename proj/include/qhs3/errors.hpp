#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhs3 {

// Jacobi sweep budget exhausted without reaching the residual target.
struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The commuting hypothesis [A,K] = 0 does not hold within tolerance.
struct NotCommutingError : std::runtime_error {
    NotCommutingError(const std::string& what, double commutator_norm_value, double tolerance_value)
        : std::runtime_error(what), commutator(commutator_norm_value), tolerance(tolerance_value) {}

    double commutator;
    double tolerance;
};

// A NaN or Inf appeared in an integrator stage. `step` is the failing step
// index when raised from a trajectory-level routine, 0 otherwise.
struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& what, std::size_t step_index = 0)
        : std::runtime_error(what), step(step_index) {}

    std::size_t step;
};

// Malformed system file; `field` names the offending key.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::string field_name)
        : std::runtime_error(what), field(std::move(field_name)) {}

    std::string field;
};

}  // namespace qhs3
