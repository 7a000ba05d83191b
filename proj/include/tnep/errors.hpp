#pragma once

#include <stdexcept>
#include <string>

namespace tnep {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON syntax, missing key, wrong type).
struct ParseError : Error {
  using Error::Error;
};

// Structurally valid input that violates a model rule (dangling bus id,
// negative capacity, no reference bus, ...).
struct ValidationError : Error {
  using Error::Error;
};

// The MILP backend failed or returned something unusable.  Never used for
// plain infeasible / unbounded outcomes, which are reported as statuses.
struct SolverError : Error {
  using Error::Error;
};

// A caller-supplied setting is unusable (bad tolerance, missing dual bound,
// unknown output format).
struct ConfigError : Error {
  using Error::Error;
};

// An iterative scheme hit its iteration or time limit before the bound gap
// closed.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double lower, double upper)
      : Error(what), lower_bound(lower), upper_bound(upper) {}
  double lower_bound;
  double upper_bound;
};

}  // namespace tnep
