#pragma once

#include <stdexcept>
#include <string>

#include "augtree/types.hpp"

namespace augtree {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside the documented domain (odd girth, d < 2, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An input object violates the precondition of an operation.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Materializing the requested object would exceed the node budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An exact integer would exceed the representable magnitude cap.
class MagnitudeOverflow : public Error {
public:
    using Error::Error;
};

/// No selection of aligned mates exists at the requested height.
class InfeasibleSplit : public Error {
public:
    using Error::Error;
};

/// f-path descent reached a vertex with no child of the required color.
class MissingBranch : public PreconditionError {
public:
    MissingBranch(Vertex stuck, int color)
        : PreconditionError("missing branch: vertex " + std::to_string(stuck) +
                            " has no child of color " + std::to_string(color)),
          stuck_vertex(stuck) {}

    Vertex stuck_vertex;
};

/// A witness argument produced an edge that failed re-verification. This
/// always indicates a construction bug.
class WitnessFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace augtree
