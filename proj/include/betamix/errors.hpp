#pragma once

#include <stdexcept>
#include <string>

namespace betamix {

// Invalid arguments, inadmissible parameters, sample too short.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Quadrature or iteration that failed to converge.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace betamix
