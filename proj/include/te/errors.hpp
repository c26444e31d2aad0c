#pragma once

#include <stdexcept>
#include <string>

namespace te {

// Base class for all framework errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Topology
struct InvalidSize : Error {
  using Error::Error;
};
struct ConnectivityFailure : Error {
  using Error::Error;
};
struct UnsupportedSetting : Error {
  using Error::Error;
};
struct NoPath : Error {
  using Error::Error;
};

// Traffic
struct DegenerateMatrix : Error {
  using Error::Error;
};

// Solver
struct NumericalFailure : Error {
  using Error::Error;
};
struct NodeLimitExceeded : Error {
  using Error::Error;
};

// Formulation / experiment
struct InfeasibleInstance : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

// Analysis
struct MissingPairs : Error {
  using Error::Error;
};
struct EmptySelection : Error {
  using Error::Error;
};

}  // namespace te
