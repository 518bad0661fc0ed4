// Error types shared by every xdof module.
#pragma once

#include <stdexcept>
#include <string>

namespace xdof {

// Malformed arguments: non-finite entries, out-of-range counts, bad shapes.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A closed-form table was asked about an antenna shape it does not cover.
class UnsupportedShape : public std::domain_error {
 public:
  explicit UnsupportedShape(const std::string& what) : std::domain_error(what) {}
};

// A stream allocation needs more basis columns than the subspaces provide.
class InfeasibleAllocation : public std::domain_error {
 public:
  explicit InfeasibleAllocation(const std::string& what) : std::domain_error(what) {}
};

// A receive filter could not be formed for this channel draw.
class FeasibilityFailure : public std::runtime_error {
 public:
  explicit FeasibilityFailure(const std::string& what) : std::runtime_error(what) {}
};

// Exact integer arithmetic left the representable range.
class ArithmeticOverflow : public std::overflow_error {
 public:
  explicit ArithmeticOverflow(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace xdof
