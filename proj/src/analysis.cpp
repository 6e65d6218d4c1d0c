#include "fresnel2d/analysis.hpp"

#include "fresnel2d/constants.hpp"
#include "fresnel2d/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fresnel2d {

namespace {

double signal_at(const ChannelTrace& tr, std::size_t bi, std::size_t pi,
                 SignalSource src) {
    const ChannelTrace::Band& band = tr.bands[bi];
    if (src == SignalSource::band_amplitude)
        return std::sqrt(band.band_power[pi]);
    return std::abs(band.totals[pi]);
}

Point2 path_midpoint(const ChannelTrace& tr) {
    return {(tr.points.front().x + tr.points.back().x) * 0.5,
            (tr.points.front().y + tr.points.back().y) * 0.5};
}

} // namespace

LosReference explicit_reference(const ChannelTrace& trace, double amplitude_at_mid) {
    LosReference ref;
    ref.amplitude = amplitude_at_mid;
    ref.r_mid = distance(trace.transmitter.position, path_midpoint(trace));
    ref.first = ref.last = 0;
    return ref;
}

LosReference estimate_los_average(const ChannelTrace& trace, std::size_t band_index,
                                  SignalSource source,
                                  std::optional<std::pair<std::size_t, std::size_t>> window) {
    if (band_index >= trace.bands.size())
        throw std::out_of_range("estimate_los_average: band index");
    const std::size_t n = trace.points.size();
    const double lambda = trace.bands[band_index].spec.wavelength();

    std::size_t lo = 0, hi = 0;
    if (window) {
        lo = window->first;
        hi = window->second;
        if (hi >= n || lo > hi)
            throw std::invalid_argument("estimate_los_average: bad window");
    } else {
        // longest contiguous run with a clear first Fresnel zone
        std::size_t best_lo = 0, best_len = 0, run_lo = 0, run_len = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool clear = fresnel_zone_clear(trace.transmitter.position,
                                                  trace.points[i], lambda, trace.walls);
            if (clear) {
                if (run_len == 0) run_lo = i;
                ++run_len;
                if (run_len > best_len) {
                    best_len = run_len;
                    best_lo = run_lo;
                }
            } else {
                run_len = 0;
            }
        }
        if (best_len == 0)
            throw NoLosReference("no LoS region on the path; supply an explicit reference");
        lo = best_lo;
        hi = best_lo + best_len - 1;
    }

    const Point2 mid = path_midpoint(trace);
    const double r_mid = distance(trace.transmitter.position, mid);
    double acc = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double r = distance(trace.transmitter.position, trace.points[i]);
        acc += signal_at(trace, band_index, i, source) * r;
    }
    const double mean_comp = acc / static_cast<double>(hi - lo + 1);

    LosReference ref;
    ref.amplitude = mean_comp / r_mid;
    ref.r_mid = r_mid;
    ref.first = lo;
    ref.last = hi;
    return ref;
}

std::vector<ThresholdEvent> threshold_crossings(const ChannelTrace& trace,
                                                std::size_t band_index, double level,
                                                CrossDirection direction,
                                                const LosReference& reference,
                                                SignalSource source,
                                                int debounce_samples) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("threshold_crossings: level must be in (0, 1)");
    const std::size_t n = trace.points.size();
    const double thr = level * reference.amplitude * reference.r_mid;

    // compensated signal: |h(x)| * r(x), compared against thr
    std::vector<double> comp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = distance(trace.transmitter.position, trace.points[i]);
        comp[i] = signal_at(trace, band_index, i, source) * r;
    }

    const double sample_step =
        n > 1 ? (trace.arclen.back() - trace.arclen.front()) / static_cast<double>(n - 1) : 0.0;
    const double merge_dist = debounce_samples * sample_step;
    const double f_hz = trace.bands[band_index].spec.center_hz;

    // strict crossings only: samples exactly at the threshold extend the
    // previous side (a constant run at the level yields no event)
    std::vector<ThresholdEvent> events;
    int prev_sign = 0;
    std::size_t prev_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = comp[i] - thr;
        const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (prev_sign != 0 && sign != prev_sign) {
            const bool falling = prev_sign > 0;
            if ((direction == CrossDirection::falling) == falling) {
                const double a = comp[prev_idx] - thr;
                const double b = d;
                const double t = a / (a - b);
                const double pos = trace.arclen[prev_idx] +
                                   t * (trace.arclen[i] - trace.arclen[prev_idx]);
                if (events.empty() || pos - events.back().position_m >= merge_dist)
                    events.push_back({f_hz, pos, direction, level});
            }
        }
        prev_sign = sign;
        prev_idx = i;
    }
    return events;
}

double threshold_delay(const ChannelTrace& trace, std::size_t band_low,
                       std::size_t band_high, double level, CrossDirection direction,
                       const LosReference& ref_low, const LosReference& ref_high,
                       SignalSource source, bool reverse_motion, int debounce_samples) {
    // `direction` is relative to the motion: a signal rising for a mobile
    // moving end-to-start is a falling crossing in arclen order.
    CrossDirection axis_dir = direction;
    if (reverse_motion)
        axis_dir = direction == CrossDirection::rising ? CrossDirection::falling
                                                       : CrossDirection::rising;
    auto first_pos = [&](std::size_t bi, const LosReference& ref) {
        const std::vector<ThresholdEvent> ev =
            threshold_crossings(trace, bi, level, axis_dir, ref, source, debounce_samples);
        if (ev.empty())
            throw NoCrossing("no crossing at f=" +
                             std::to_string(trace.bands[bi].spec.center_hz) + " Hz");
        return reverse_motion ? ev.back().position_m : ev.front().position_m;
    };
    const double pos_low = first_pos(band_low, ref_low);
    const double pos_high = first_pos(band_high, ref_high);
    const double motion = reverse_motion ? -1.0 : 1.0;
    return (pos_high - pos_low) * motion;
}

std::vector<StrongestComponent> strongest_component_series(const ChannelTrace& trace,
                                                           std::size_t band_index) {
    const ChannelTrace::Band& band = trace.bands[band_index];
    std::vector<StrongestComponent> out(trace.points.size());
    int prev = -1;
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        const std::vector<ComponentField>& parts = band.parts[i];
        int best = -1;
        double best_mag = -1.0;
        for (const ComponentField& c : parts) {
            if (c.skipped) continue;
            const double mag = trace.antenna.gain(c.aoa_deg) * std::abs(c.value);
            if (mag > best_mag) {
                best_mag = mag;
                best = c.component_index;
            } else if (mag == best_mag && c.component_index == prev) {
                best = prev; // hysteresis on exact ties
            }
        }
        if (best < 0) best = 0;
        out[i].component = best;
        out[i].aoa_deg = best < static_cast<int>(parts.size())
                             ? parts[static_cast<std::size_t>(best)].aoa_deg
                             : 0.0;
        prev = best;
    }
    return out;
}

std::vector<std::pair<int, double>> dominance_switches(const ChannelTrace& trace,
                                                       std::size_t band_index,
                                                       double min_run_m) {
    const std::vector<StrongestComponent> series =
        strongest_component_series(trace, band_index);
    std::vector<std::pair<int, double>> runs; // (component, entry position)
    std::size_t i = 0;
    const std::size_t n = series.size();
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && series[j + 1].component == series[i].component) ++j;
        const double len = trace.arclen[j] - trace.arclen[i];
        if (len >= min_run_m || (i == 0 && runs.empty()))
            runs.push_back({series[i].component, trace.arclen[i]});
        i = j + 1;
    }
    // collapse consecutive runs of the same component (flicker in between)
    std::vector<std::pair<int, double>> out;
    for (const auto& r : runs)
        if (out.empty() || out.back().first != r.first) out.push_back(r);
    return out;
}

RegimeResult classify_regime(double reflector_length, double lambda_m, double r2) {
    if (!(reflector_length > 0.0) || !(lambda_m > 0.0) || !(r2 > 0.0))
        throw std::invalid_argument("classify_regime: inputs must be positive");
    RegimeResult res;
    res.n = 2.0 * reflector_length * reflector_length / (lambda_m * r2);
    if (res.n <= 1.0)
        res.regime = Regime::far_field;
    else if (res.n >= 6.0)
        res.regime = Regime::near_field;
    else
        res.regime = Regime::transition;
    return res;
}

FieldMap field_map(const Scenario& scenario, std::size_t band_index,
                   const GridSpec& grid, int component, int workers) {
    if (!(grid.resolution > 0.0))
        throw std::invalid_argument("field_map: resolution must be > 0");
    FieldMap map;
    map.grid = grid;
    map.component = component;
    map.nx = std::max<std::size_t>(1, static_cast<std::size_t>(
                                          std::floor((grid.x1 - grid.x0) / grid.resolution)));
    map.ny = std::max<std::size_t>(1, static_cast<std::size_t>(
                                          std::floor((grid.y1 - grid.y0) / grid.resolution)));

    std::vector<Point2> cells;
    cells.reserve(map.nx * map.ny);
    for (std::size_t iy = 0; iy < map.ny; ++iy)
        for (std::size_t ix = 0; ix < map.nx; ++ix)
            cells.push_back({grid.x0 + (ix + 0.5) * grid.resolution,
                             grid.y0 + (iy + 0.5) * grid.resolution});

    const ChannelTrace tr = evaluate_points(scenario, cells, workers);
    const ChannelTrace::Band& band = tr.bands.at(band_index);

    map.reference = transmit_amplitude(scenario.transmitter, scenario.transmitter.gain);
    map.values.resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        double v;
        if (component < 0) {
            v = std::abs(band.totals[i]);
        } else {
            const auto& parts = band.parts[i];
            v = (component < static_cast<int>(parts.size()) &&
                 !parts[static_cast<std::size_t>(component)].skipped)
                    ? std::abs(parts[static_cast<std::size_t>(component)].value)
                    : 0.0;
        }
        const double r = distance(scenario.transmitter.position, cells[i]);
        map.values[i] = v * r / map.reference; // 1 at free space
    }
    return map;
}

} // namespace fresnel2d
