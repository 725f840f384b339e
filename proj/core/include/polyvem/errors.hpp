#pragma once

#include <stdexcept>
#include <string>

namespace polyvem {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Degenerate polygon input: fewer than 3 vertices, nonpositive area,
/// repeated points or a self-intersecting loop.
struct InvalidGeometryError : Error {
    using Error::Error;
};

/// Mesh topology violates the exactly-two-cells-per-interior-edge rule
/// (or a cell is not a valid polygon).
struct NonconformingMeshError : Error {
    using Error::Error;
};

/// A matrix that must be SPD / invertible lost that property at machine
/// precision (orthonormalization breakdown, singular G, failed solve).
struct ConditioningError : Error {
    using Error::Error;
};

/// Malformed input file; message carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& what, long line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

struct UnsupportedDegreeError : Error {
    using Error::Error;
};

} // namespace polyvem
