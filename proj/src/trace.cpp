#include "fresnel2d/trace.hpp"

#include "field_common.hpp"
#include "fresnel2d/fresnel.hpp"
#include "fresnel2d/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fresnel2d {

using detail::kOneMinusJ;
using detail::phase_factor;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Frequency-independent geometry of one component at one point.
struct PointGeom {
    double r1 = 0.0, r2 = 0.0, rho = 0.0; // second diffraction (or direct)
    double u1 = 0.0, u2 = 0.0;
    double r_path = 0.0; // phase path
    double aoa_deg = 0.0;
    bool open = false;   // no aperture factor (free space / same side)
    bool skip = false;
};

// Frequency-independent description of one component over all points.
struct ComponentGeom {
    int index = 0;          // 0 = direct
    double reflectivity = 1.0;
    double phase_rad = 0.0;
    // illumination diffraction (reflected components only)
    double d_tx = 0.0;
    double ill_rho = 0.0, ill_u1 = 0.0, ill_u2 = 0.0;
    bool ill_open = true;
    bool skip_all = false;
    std::vector<PointGeom> pts;
};

ComponentGeom build_direct(const Transmitter& tx, const std::vector<Point2>& points) {
    ComponentGeom g;
    g.index = 0;
    g.pts.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        PointGeom& p = g.pts[i];
        p.aoa_deg = angle_deg_of(points[i] - tx.position);
        p.r_path = distance(tx.position, points[i]);
        p.open = true;
        if (p.r_path <= 0.0) {
            p.skip = true;
            continue;
        }
        if (tx.aperture) {
            try {
                const DiffractionGeometry d =
                    aperture_projection(tx.position, points[i], *tx.aperture);
                if (!d.same_side) {
                    p.open = false;
                    p.r1 = d.r1;
                    p.r2 = d.r2;
                    p.rho = d.rho;
                    p.u1 = d.u1;
                    p.u2 = d.u2;
                    p.r_path = d.r1 + d.r2;
                }
            } catch (const std::invalid_argument&) {
                // parallel ray: free space
            }
        }
    }
    return g;
}

ComponentGeom build_reflected(const Transmitter& tx, const Reflector& refl,
                              int index, const std::vector<Point2>& points) {
    ComponentGeom g;
    g.index = index;
    g.reflectivity = refl.reflectivity;
    g.phase_rad = refl.phase_deg * (kPi / 180.0);
    g.d_tx = distance(tx.position, refl.geometry.center);
    if (g.d_tx <= 0.0) {
        g.skip_all = true;
        return g;
    }
    if (tx.aperture) {
        try {
            const DiffractionGeometry d =
                aperture_projection(tx.position, refl.geometry.center, *tx.aperture);
            if (!d.same_side) {
                g.ill_open = false;
                g.ill_rho = d.rho;
                g.ill_u1 = d.u1;
                g.ill_u2 = d.u2;
                g.d_tx = d.r1 + d.r2;
            }
        } catch (const std::invalid_argument&) {
            g.skip_all = true;
            return g;
        }
    }

    Point2 eff;
    try {
        eff = effective_source(tx.position, refl.geometry, refl.radius);
    } catch (const std::invalid_argument&) {
        g.skip_all = true;
        return g;
    }
    const double r_center = distance(eff, refl.geometry.center);

    g.pts.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        PointGeom& p = g.pts[i];
        p.aoa_deg = angle_deg_of(points[i] - refl.geometry.center);
        try {
            const DiffractionGeometry d = aperture_projection(eff, points[i], refl.geometry);
            if (d.same_side) {
                p.skip = true;
                continue;
            }
            p.r1 = d.r1;
            p.r2 = d.r2;
            p.rho = d.rho;
            p.u1 = d.u1;
            p.u2 = d.u2;
            p.r_path = g.d_tx + (d.r1 + d.r2) - r_center;
        } catch (const std::invalid_argument&) {
            p.skip = true;
        }
    }
    return g;
}

// One frequency tone of one component over a span of points.
void combine_tone(const ComponentGeom& g, double f_hz, double a_in,
                  std::size_t lo, std::size_t hi,
                  std::vector<double>& w_scratch, std::vector<double>& c_scratch,
                  std::vector<double>& s_scratch,
                  std::complex<double>* out) {
    const double lambda = kSpeedOfLight / f_hz;
    const std::size_t n = hi - lo;
    if (g.skip_all || n == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = {0.0, 0.0};
        return;
    }

    // illumination factor (constant across points)
    std::complex<double> ill = kOneMinusJ;
    if (g.index != 0 && !g.ill_open) {
        const double k = std::sqrt(2.0 * f_hz / (kSpeedOfLight * g.ill_rho));
        const FresnelPair a = fresnel_cs(k * g.ill_u1);
        const FresnelPair b = fresnel_cs(k * g.ill_u2);
        ill = {b.c - a.c, -(b.s - a.s)};
    }

    w_scratch.resize(2 * n);
    c_scratch.resize(2 * n);
    s_scratch.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const PointGeom& p = g.pts[lo + i];
        if (p.skip || p.open) {
            w_scratch[2 * i] = 0.0;
            w_scratch[2 * i + 1] = 0.0;
            continue;
        }
        const double k = std::sqrt(2.0 * f_hz / (kSpeedOfLight * p.rho));
        w_scratch[2 * i] = k * p.u1;
        w_scratch[2 * i + 1] = k * p.u2;
    }
    fresnel_cs_batch(w_scratch, c_scratch, s_scratch);

    for (std::size_t i = 0; i < n; ++i) {
        const PointGeom& p = g.pts[lo + i];
        if (p.skip) {
            out[i] = {0.0, 0.0};
            continue;
        }
        const std::complex<double> fr =
            p.open ? kOneMinusJ
                   : std::complex<double>(c_scratch[2 * i + 1] - c_scratch[2 * i],
                                          -(s_scratch[2 * i + 1] - s_scratch[2 * i]));
        if (g.index == 0) {
            out[i] = std::complex<double>(0.0, 0.5) * a_in *
                     phase_factor(p.r_path, lambda) * fr * kOneMinusJ / p.r_path;
        } else {
            out[i] = -0.25 * a_in * g.reflectivity *
                     phase_factor(p.r_path, lambda, g.phase_rad) *
                     (p.r1 / (p.r1 + p.r2)) * fr * kOneMinusJ * ill * kOneMinusJ /
                     g.d_tx;
        }
    }
}

} // namespace

ChannelTrace evaluate_points(const Scenario& scenario,
                             const std::vector<Point2>& points, int workers) {
    ChannelTrace tr;
    tr.points = points;
    tr.transmitter = scenario.transmitter;
    tr.antenna = scenario.antenna;
    tr.walls = aperture_walls(scenario.transmitter);
    tr.expanded = expand_reflectors(scenario);
    tr.scenario_digest = scenario_hash(scenario);

    tr.arclen.resize(points.size());
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0) s += distance(points[i - 1], points[i]);
        tr.arclen[i] = s;
    }

    const double a_in = transmit_amplitude(scenario.transmitter, scenario.transmitter.gain);

    std::vector<ComponentGeom> comps;
    comps.push_back(build_direct(scenario.transmitter, points));
    int idx = 1;
    for (const Reflector& r : tr.expanded)
        comps.push_back(build_reflected(scenario.transmitter, r, idx++, points));

    const std::size_t npts = points.size();
    tr.bands.resize(scenario.frequencies.size());
    for (std::size_t bi = 0; bi < scenario.frequencies.size(); ++bi) {
        ChannelTrace::Band& band = tr.bands[bi];
        band.spec = scenario.frequencies[bi];
        band.totals.assign(npts, {0.0, 0.0});
        band.parts.assign(npts, {});
        band.band_power.assign(npts, 0.0);

        parallel_for(npts, workers, [&](std::size_t lo, std::size_t hi) {
            const std::size_t n = hi - lo;
            std::vector<double> wbuf, cbuf, sbuf;
            std::vector<std::complex<double>> field(n);

            // center tone: totals and per-component parts
            for (std::size_t pi = lo; pi < hi; ++pi) {
                band.parts[pi].resize(comps.size());
            }
            for (const ComponentGeom& g : comps) {
                combine_tone(g, band.spec.center_hz, a_in, lo, hi, wbuf, cbuf, sbuf,
                             field.data());
                for (std::size_t i = 0; i < n; ++i) {
                    const PointGeom* p = g.skip_all ? nullptr : &g.pts[lo + i];
                    ComponentField& cf = band.parts[lo + i][static_cast<std::size_t>(g.index)];
                    cf.component_index = g.index;
                    cf.value = field[i];
                    cf.aoa_deg = p ? p->aoa_deg : kNaN;
                    cf.path_length = p ? p->r_path : kNaN;
                    cf.skipped = g.skip_all || (p && p->skip);
                    if (!cf.skipped)
                        band.totals[lo + i] += tr.antenna.gain(cf.aoa_deg) * cf.value;
                }
            }

            // band average of |h|^2
            const std::vector<double> tones = band.spec.band_freqs();
            std::vector<std::complex<double>> tone_total(n);
            for (double f : tones) {
                std::fill(tone_total.begin(), tone_total.end(), std::complex<double>{0.0, 0.0});
                for (const ComponentGeom& g : comps) {
                    combine_tone(g, f, a_in, lo, hi, wbuf, cbuf, sbuf, field.data());
                    for (std::size_t i = 0; i < n; ++i) {
                        if (g.skip_all || g.pts[lo + i].skip) continue;
                        tone_total[i] += tr.antenna.gain(g.pts[lo + i].aoa_deg) * field[i];
                    }
                }
                for (std::size_t i = 0; i < n; ++i)
                    band.band_power[lo + i] += std::norm(tone_total[i]);
            }
            for (std::size_t i = lo; i < hi; ++i)
                band.band_power[i] /= static_cast<double>(tones.size());
        });
    }
    return tr;
}

ChannelTrace evaluate_trace(const Scenario& scenario, int workers) {
    return evaluate_points(scenario, sample_path(scenario.path), workers);
}

} // namespace fresnel2d
