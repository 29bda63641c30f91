#pragma once

#include <stdexcept>
#include <string>

namespace cohspec {

/// Invalid quantum numbers, configuration values or operator shapes.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A linear solve failed (singular or ill-conditioned system, residual too large).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cohspec
