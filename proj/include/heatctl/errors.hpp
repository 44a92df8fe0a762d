#pragma once

#include <stdexcept>
#include <string>

namespace heatctl {

// Precondition or input-contract violation. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Iteration failure or loss of numerical consistency. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heatctl
