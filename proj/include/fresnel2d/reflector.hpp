#pragma once
// Reflector description: a flat (or curved-radius) segment with reflectivity,
// phase offset and an optional roughness decomposition spec.

#include "fresnel2d/geometry.hpp"

#include <cstdint>
#include <optional>

namespace fresnel2d {

/// Decomposition of a flat reflector into perpendicular-jittered sub-pieces.
struct RoughnessSpec {
    double sub_length = 0.0;   // m, length of each sub-reflector
    double max_offset = 0.0;   // m, half-range of the uniform displacement
    std::uint64_t seed_offset = 0; // stable per-object stream id
};

struct Reflector {
    Segment geometry;
    double reflectivity = 1.0; // |R| in [0, 1]
    double phase_deg = 0.0;    // phi
    std::optional<double> radius;        // curvature radius, m
    std::optional<RoughnessSpec> roughness;
};

} // namespace fresnel2d
