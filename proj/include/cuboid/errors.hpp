#pragma once

#include <stdexcept>
#include <string>

namespace cuboid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition: bad parameter, wrong regime, divergent exponent.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The requested accuracy cannot be certified within the cutoff cap, or the
// certified tail bound fails the reporting gate.
class UnattainableTolerance : public Error {
 public:
  using Error::Error;
};

}  // namespace cuboid
