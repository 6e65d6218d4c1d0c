#pragma once
// Post-processing of channel traces: LoS averaging, threshold crossings and
// delays, strongest-component/AoA series, regime classification and spatial
// field maps.

#include "fresnel2d/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fresnel2d {

enum class CrossDirection { rising, falling };

/// Which trace quantity the threshold logic reads.
enum class SignalSource {
    tone_amplitude, // |h| at the center tone
    band_amplitude  // sqrt of the band-averaged power
};

struct ThresholdEvent {
    double frequency_hz = 0.0;
    double position_m = 0.0; // arclength along the path from its start
    CrossDirection direction = CrossDirection::falling;
    double level = 0.0;      // fraction of the LoS reference
};

/// LoS reference amplitude, expressed at the path midpoint distance.
struct LosReference {
    double amplitude = 0.0; // reference |h| at r_mid
    double r_mid = 0.0;     // straight tx distance at the path midpoint
    std::size_t first = 0;  // contiguous LoS sample range used
    std::size_t last = 0;   // inclusive
};

/// Thrown when a trace has no usable LoS region and no explicit reference.
class NoLosReference : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class NoCrossing : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// 1/r-compensated average over the longest contiguous LoS run (first Fresnel
/// zone clear of the aperture walls), rescaled to the path midpoint.
/// `window`, when given, overrides the LoS search with an explicit inclusive
/// sample range.
LosReference estimate_los_average(
    const ChannelTrace& trace, std::size_t band_index,
    SignalSource source = SignalSource::tone_amplitude,
    std::optional<std::pair<std::size_t, std::size_t>> window = std::nullopt);

/// Build a reference from a known amplitude instead of estimating one.
LosReference explicit_reference(const ChannelTrace& trace, double amplitude_at_mid);

/// Strict crossings of level * reference on the compensated amplitude, with
/// linear interpolation and a same-direction merge window (debounce) in
/// samples.
std::vector<ThresholdEvent> threshold_crossings(
    const ChannelTrace& trace, std::size_t band_index, double level,
    CrossDirection direction, const LosReference& reference,
    SignalSource source = SignalSource::tone_amplitude,
    int debounce_samples = 2);

/// Spatial separation of the first crossings (along the motion direction) at
/// two frequencies; positive when the lower frequency leads. Motion runs from
/// path start to end unless reversed. Throws NoCrossing.
double threshold_delay(const ChannelTrace& trace, std::size_t band_low,
                       std::size_t band_high, double level,
                       CrossDirection direction, const LosReference& ref_low,
                       const LosReference& ref_high,
                       SignalSource source = SignalSource::tone_amplitude,
                       bool reverse_motion = false, int debounce_samples = 2);

struct StrongestComponent {
    int component = 0;
    double aoa_deg = 0.0;
};

/// Per point, the component maximizing |g_rx * value|; exact ties keep the
/// previous winner (hysteresis), otherwise the lowest index wins.
std::vector<StrongestComponent> strongest_component_series(
    const ChannelTrace& trace, std::size_t band_index);

/// Entry positions of dominance runs at least `min_run_m` long:
/// (component, position where the run starts).
std::vector<std::pair<int, double>> dominance_switches(
    const ChannelTrace& trace, std::size_t band_index, double min_run_m);

enum class Regime { far_field, transition, near_field };

struct RegimeResult {
    Regime regime = Regime::far_field;
    double n = 0.0; // 2 L^2 / (lambda r2)
};

/// Normalized reflector parameter N = 2 L^2 / (lambda r2); far for N <= 1,
/// near for N >= 6, transition between.
RegimeResult classify_regime(double reflector_length, double lambda_m, double r2);

struct GridSpec {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
    double resolution = 1.0; // cell size, m
};

struct FieldMap {
    GridSpec grid;
    std::size_t nx = 0, ny = 0;
    std::vector<double> values; // row-major |h|, normalized
    double reference = 0.0;     // normalization amplitude (free space at 1 m)
    int component = -1;         // -1 = total
};

/// |h| (total or one component) over a grid, normalized by the free-space
/// amplitude at each cell's transmitter distance.
FieldMap field_map(const Scenario& scenario, std::size_t band_index,
                   const GridSpec& grid, int component = -1, int workers = 1);

} // namespace fresnel2d
