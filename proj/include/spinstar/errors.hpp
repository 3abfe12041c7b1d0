#pragma once

#include <stdexcept>
#include <string>

namespace spinstar {

// Raised when a computed quantity breaks a physical invariant (non-Hermitian
// input, negative state eigenvalue beyond the numerical floor, ...).
// Argument and precondition failures use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinstar
