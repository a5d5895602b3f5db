#pragma once

namespace coneflat {

enum class GeometryKind { Euclidean, Hyperbolic };

// Model-space selector. k is the curvature of the model plane: 0 for the
// euclidean plane, -1 for the hyperbolic plane. Every trig formula in the
// library dispatches on this.
struct Geometry {
    GeometryKind kind = GeometryKind::Euclidean;

    static constexpr Geometry euclidean() { return {GeometryKind::Euclidean}; }
    static constexpr Geometry hyperbolic() { return {GeometryKind::Hyperbolic}; }

    constexpr double k() const { return kind == GeometryKind::Euclidean ? 0.0 : -1.0; }
    constexpr bool is_euclidean() const { return kind == GeometryKind::Euclidean; }
    constexpr bool is_hyperbolic() const { return kind == GeometryKind::Hyperbolic; }

    constexpr bool operator==(const Geometry&) const = default;
};

} // namespace coneflat
