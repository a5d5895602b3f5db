#pragma once

#include <cstdint>

#include "coneflat/mesh.hpp"

namespace coneflat {

// Portable pseudo-random generator (splitmix64). Fixed algorithm so that
// generated corpora are reproducible across platforms; the identifier
// "splitmix64" is recorded in mesh metadata.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    uint32_t below(uint32_t n) { return static_cast<uint32_t>(next() % n); }
};

// Fan of n isoceles sector triangles around a single interior apex.
// Euclidean: `base` is the base side length; the sector apex angle is
// 2 asin(base / (2 legs)). Hyperbolic: `base` is the sector apex angle and
// the base length comes from the hyperbolic law of cosines.
struct ConeDiskSpec {
    Geometry geometry;
    int sectors = 3;  // n >= 3
    double legs = 1;  // spoke length r
    double base = 1;  // base length (euclidean) or sector apex angle (hyperbolic)
};

ConeMesh gen_cone_disk(const ConeDiskSpec& spec);

// Seeded disk with `interior_count` interior vertices, all of cone angle
// > 2*pi + 1e-3, and `boundary_count` boundary vertices. Deterministic per
// seed. Throws GenerationFailed (naming the seed) if no valid instance is
// found within the rejection budget.
ConeMesh gen_random_disk(uint64_t seed, int interior_count, int boundary_count,
                         Geometry geometry);

} // namespace coneflat
