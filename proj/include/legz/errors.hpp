#pragma once

#include <stdexcept>
#include <string>

namespace legz {

// Base class for all library-specific failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant that the mathematics guarantees was observed to be
// violated.  Reaching this indicates a bug, never bad user input.
struct InvariantFault : Error {
    explicit InvariantFault(const std::string& what) : Error(what) {}
};

// The configured work ceiling was reached before the computation could be
// completed exactly (e.g. a coefficient too large to factor).
struct EffortExceeded : Error {
    explicit EffortExceeded(const std::string& what) : Error(what) {}
};

// Inputs that were required to be coprime share a non-unit factor.
struct NonCoprimeError : Error {
    explicit NonCoprimeError(const std::string& what) : Error(what) {}
};

// Malformed text for a Gaussian integer.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace legz
