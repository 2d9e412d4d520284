#pragma once

#include <stdexcept>
#include <string>

namespace cnet {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric or structural argument is out of its documented range.
struct InvalidParameterError : Error {
  using Error::Error;
};

// An operation was applied to a topology of the wrong kind.
struct InvalidKindError : Error {
  using Error::Error;
};

// An element or link label does not exist in the topology.
struct LookupError : Error {
  using Error::Error;
};

// A route references elements or links inconsistently with the topology.
struct InvalidRouteError : Error {
  using Error::Error;
};

// A request set is not a (partial) permutation: duplicate source or destination.
struct InvalidPermutationError : Error {
  using Error::Error;
};

// A multicast request set violates the monotonic ordering condition.
struct MonotonicityError : Error {
  using Error::Error;
};

// A request set exceeds what the network can carry (e.g. more copies than
// output ports, or fewer central modules than the rearrangeable condition needs).
struct CapacityError : Error {
  using Error::Error;
};

// An address interval is inconsistent (min above max at the current stage).
struct MalformedIntervalError : Error {
  using Error::Error;
};

// An input file could not be parsed.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace cnet
