#pragma once

#include <stdexcept>
#include <string>

namespace gdist {

// Bad input: malformed graph, out-of-range parameter, violated precondition.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A well-formed request that could not be carried out (budget, convergence).
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

class BudgetExceeded : public ComputationError {
public:
    explicit BudgetExceeded(const std::string& what) : ComputationError(what) {}
};

}  // namespace gdist
