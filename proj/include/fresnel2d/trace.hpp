#pragma once
// Channel evaluation along a sampled path: per-frequency totals, per-component
// fields and band-averaged power. Geometry is computed once per
// (point, component) and reused across frequencies; Fresnel integrals run
// through the batched kernel.

#include "fresnel2d/propagation.hpp"
#include "fresnel2d/scenario.hpp"

#include <complex>
#include <vector>

namespace fresnel2d {

struct ChannelTrace {
    std::vector<Point2> points;
    std::vector<double> arclen; // distance along the path from its start, m

    struct Band {
        FrequencySpec spec;
        std::vector<std::complex<double>> totals;       // g_rx-weighted sum, center tone
        std::vector<std::vector<ComponentField>> parts; // [point][component]
        std::vector<double> band_power;                 // mean |h|^2 over the band
    };
    std::vector<Band> bands;

    // scene context carried along for analysis
    Transmitter transmitter;
    Antenna antenna;
    std::vector<Segment> walls;        // blocking walls of the tx aperture
    std::vector<Reflector> expanded;   // reflectors after roughness expansion
    std::uint64_t scenario_digest = 0;
};

/// Evaluate the channel along the scenario path. `workers` only splits the
/// point range; outputs are identical for any worker count.
ChannelTrace evaluate_trace(const Scenario& scenario, int workers = 1);

/// Same machinery over an arbitrary point list (used for field maps).
ChannelTrace evaluate_points(const Scenario& scenario,
                             const std::vector<Point2>& points, int workers = 1);

} // namespace fresnel2d
