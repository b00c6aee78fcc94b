#pragma once

#include <stdexcept>
#include <string>

namespace lsr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// More symbols/factories requested than the plane has data positions.
struct CapacityError : Error {
    using Error::Error;
};

/// Malformed instruction or circuit file. Carries the 1-based line number.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// A path or attachment could not be routed.
struct RoutingError : Error {
    using Error::Error;
};

/// Two paths claim the same voxel.
struct CollisionError : Error {
    using Error::Error;
};

/// An operation was applied in an invalid state (double execution, bad precondition).
struct StateError : Error {
    using Error::Error;
};

/// Invalid numeric domain (resource-estimate parameters).
struct DomainError : Error {
    using Error::Error;
};

/// Path geometry is inconsistent with its endpoint boundary types.
struct SemanticError : Error {
    using Error::Error;
};

/// A routing tree violates one of the many-body validity conditions.
struct ConditionError : Error {
    using Error::Error;
};

/// Requested path modification does not apply to this path shape.
struct NotApplicableError : Error {
    using Error::Error;
};

struct UnsupportedGateError : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

}  // namespace lsr
