#pragma once

#include <stdexcept>
#include <string>

namespace freeconv {

/// Input violates a documented invariant (bad parameters, malformed measure).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to meet its tolerance or bracket.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace freeconv
