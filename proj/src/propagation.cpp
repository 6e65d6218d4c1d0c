#include "fresnel2d/propagation.hpp"

#include "field_common.hpp"
#include "fresnel2d/constants.hpp"
#include "fresnel2d/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fresnel2d {

using detail::kOneMinusJ;
using detail::phase_factor;

std::vector<double> FrequencySpec::band_freqs() const {
    if (band_points <= 1 || band_fraction <= 0.0) return {center_hz};
    std::vector<double> f(static_cast<std::size_t>(band_points));
    const double lo = center_hz * (1.0 - 0.5 * band_fraction);
    const double hi = center_hz * (1.0 + 0.5 * band_fraction);
    const double step = (hi - lo) / (band_points - 1);
    for (int i = 0; i < band_points; ++i) f[static_cast<std::size_t>(i)] = lo + step * i;
    return f;
}

double FrequencySpec::wavelength() const { return kSpeedOfLight / center_hz; }

Antenna Antenna::from_table(std::vector<double> angles_deg,
                            std::vector<double> gains) {
    if (angles_deg.size() != gains.size() || angles_deg.size() < 2)
        throw std::invalid_argument("antenna table: need matching angle/gain lists (>= 2 entries)");
    for (double g : gains)
        if (g < 0.0) throw std::invalid_argument("antenna table: negative gain");
    std::vector<std::size_t> order(angles_deg.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (auto& a : angles_deg) a = normalize_angle_deg(a);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return angles_deg[a] < angles_deg[b]; });
    Antenna ant;
    for (std::size_t i : order) {
        ant.angles_.push_back(angles_deg[i]);
        ant.gains_.push_back(gains[i]);
    }
    return ant;
}

double Antenna::gain(double aoa_deg) const {
    if (angles_.empty()) return 1.0;
    const double a = normalize_angle_deg(aoa_deg);
    auto it = std::upper_bound(angles_.begin(), angles_.end(), a);
    const std::size_t hi = static_cast<std::size_t>(it - angles_.begin()) % angles_.size();
    const std::size_t lo = (hi + angles_.size() - 1) % angles_.size();
    double a0 = angles_[lo], a1 = angles_[hi];
    double span = a1 - a0, off = a - a0;
    if (span <= 0.0) span += 360.0;
    if (off < 0.0) off += 360.0;
    const double t = span > 0.0 ? off / span : 0.0;
    return gains_[lo] + t * (gains_[hi] - gains_[lo]);
}

double transmit_amplitude(const Transmitter& tx, double direction_gain) {
    if (!(tx.input_power_w > 0.0) || !(direction_gain > 0.0))
        throw std::invalid_argument("transmit_amplitude: invalid transmitter (power and gain must be > 0)");
    return std::sqrt(direction_gain * tx.input_power_w /
                     (2.0 * kPi * kSpeedOfLight * kVacuumPermittivity));
}

ComponentField direct_component(const Transmitter& tx, Point2 point, double f_hz) {
    if (distance(point, tx.position) <= 0.0)
        throw std::invalid_argument("direct_component: point coincides with transmitter");
    const double lambda = kSpeedOfLight / f_hz;
    const double a_in = transmit_amplitude(tx, tx.gain);

    ComponentField out;
    out.component_index = 0;
    out.aoa_deg = angle_deg_of(point - tx.position);

    std::complex<double> fr = kOneMinusJ; // fully open aperture
    double r = distance(tx.position, point);
    if (tx.aperture) {
        try {
            const DiffractionGeometry g = aperture_projection(tx.position, point, *tx.aperture);
            if (!g.same_side) {
                const auto [w1, w2] = edge_args(g, f_hz);
                fr = fr_term(w1, w2);
                r = g.r1 + g.r2;
            }
            // same side of the wall line: nothing between tx and point, free space
        } catch (const std::invalid_argument&) {
            // ray parallel to the wall plane: never crosses it, free space
        }
    }
    out.path_length = r;
    out.value = std::complex<double>(0.0, 0.5) * a_in * phase_factor(r, lambda) *
                fr * kOneMinusJ / r;
    return out;
}

ComponentField double_diffraction_component(const Transmitter& tx,
                                            const Reflector& reflector,
                                            Point2 point, double f_hz) {
    const double lambda = kSpeedOfLight / f_hz;
    ComponentField out;
    out.component_index = 1; // caller renumbers within a scene
    out.aoa_deg = angle_deg_of(point - reflector.geometry.center);

    // Illumination: tx through its aperture to the reflector center.
    std::complex<double> fr_tr = kOneMinusJ;
    double d_tx = distance(tx.position, reflector.geometry.center);
    if (d_tx <= 0.0) {
        out.skipped = true;
        return out;
    }
    if (tx.aperture) {
        DiffractionGeometry g1;
        try {
            g1 = aperture_projection(tx.position, reflector.geometry.center, *tx.aperture);
        } catch (const std::invalid_argument&) {
            out.skipped = true;
            return out;
        }
        if (!g1.same_side) {
            const auto [w1, w2] = edge_args(g1, f_hz);
            fr_tr = fr_term(w1, w2);
            d_tx = g1.r1 + g1.r2;
        }
    }

    Point2 eff;
    DiffractionGeometry g2;
    try {
        eff = effective_source(tx.position, reflector.geometry, reflector.radius);
        g2 = aperture_projection(eff, point, reflector.geometry);
    } catch (const std::invalid_argument&) {
        out.skipped = true;
        return out;
    }
    if (g2.same_side) { // point behind the reflector plane: no reflection
        out.skipped = true;
        return out;
    }

    const auto [w1, w2] = edge_args(g2, f_hz);
    const std::complex<double> fr_u = fr_term(w1, w2);
    const double a_in = transmit_amplitude(tx, tx.gain);

    // Phase path: tx -> aperture -> reflector center anchors the component;
    // beyond the reflector the phase advances with the image distance
    // |eff - point| = r1 + r2, which carries the physical fringe spacing of
    // interfering components.
    const double r_center = distance(eff, reflector.geometry.center);
    const double r_m = d_tx + (g2.r1 + g2.r2) - r_center;
    out.path_length = r_m;

    const double phi = reflector.phase_deg * (kPi / 180.0);
    out.value = -0.25 * a_in * reflector.reflectivity * phase_factor(r_m, lambda, phi) *
                (g2.r1 / (g2.r1 + g2.r2)) * fr_u * kOneMinusJ * fr_tr * kOneMinusJ / d_tx;
    return out;
}

ChannelSample channel_coefficient(const Transmitter& tx,
                                  std::span<const Reflector> reflectors,
                                  const Antenna& antenna, Point2 point,
                                  double f_hz) {
    ChannelSample out;
    out.parts.reserve(reflectors.size() + 1);
    out.parts.push_back(direct_component(tx, point, f_hz));
    int idx = 1;
    for (const Reflector& r : reflectors) {
        ComponentField c = double_diffraction_component(tx, r, point, f_hz);
        c.component_index = idx++;
        out.parts.push_back(std::move(c));
    }
    for (const ComponentField& c : out.parts)
        if (!c.skipped) out.total += antenna.gain(c.aoa_deg) * c.value;
    return out;
}

double band_average_power(const Transmitter& tx,
                          std::span<const Reflector> reflectors,
                          const Antenna& antenna, Point2 point,
                          const FrequencySpec& spec) {
    const std::vector<double> freqs = spec.band_freqs();
    double acc = 0.0;
    for (double f : freqs) {
        const ChannelSample s = channel_coefficient(tx, reflectors, antenna, point, f);
        acc += std::norm(s.total);
    }
    return acc / static_cast<double>(freqs.size());
}

double received_power(std::span<const ComponentField> parts,
                      const Antenna& antenna, double lambda_m) {
    if (!(lambda_m > 0.0)) throw std::invalid_argument("received_power: invalid wavelength");
    std::complex<double> sum{0.0, 0.0};
    for (const ComponentField& c : parts)
        if (!c.skipped) sum += antenna.gain(c.aoa_deg) * c.value;
    return kSpeedOfLight * kVacuumPermittivity * lambda_m * lambda_m *
           std::norm(sum) / (8.0 * kPi);
}

} // namespace fresnel2d
