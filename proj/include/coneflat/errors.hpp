#pragma once

#include <stdexcept>
#include <string>

namespace coneflat {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Triangle inequality (or side positivity) violated beyond tolerance.
struct InvalidTriangle : Error {
    using Error::Error;
};

// Two model points coincide where a direction was needed.
struct DegeneratePoints : Error {
    using Error::Error;
};

// place_triangle: base point distance disagrees with the requested side.
struct BaseMismatch : Error {
    using Error::Error;
};

struct UnknownVertex : Error {
    using Error::Error;
};

// find_t0 called on a vertex whose cone angle is not above 2*pi.
struct NotSingular : Error {
    using Error::Error;
};

// The deformation never brought a monitored angle down to 2*pi.
struct NoBracket : Error {
    using Error::Error;
};

// develop_star called on a vertex whose angle is not 2*pi within tolerance.
struct NotFlat : Error {
    using Error::Error;
};

// Star development failed to close up around the center.
struct ClosureFailure : Error {
    using Error::Error;
};

// Polygon handed to the triangulator self-intersects or is mis-oriented.
struct NotSimple : Error {
    using Error::Error;
};

// No clippable ear found; the polygon violated the simplicity precondition.
struct EarSearchFailed : Error {
    using Error::Error;
};

// flatten requires a single boundary cycle and Euler characteristic 1.
struct NonDisk : Error {
    using Error::Error;
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct GenerationFailed : Error {
    using Error::Error;
};

// A guaranteed property failed numerically; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

} // namespace coneflat
