#include "fresnel2d/geometry.hpp"

#include "fresnel2d/constants.hpp"
#include "fresnel2d/fresnel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fresnel2d {

double normalize_angle_deg(double deg) {
    double a = std::fmod(deg, 360.0);
    if (a < 0.0) a += 360.0;
    return a;
}

double angle_deg_of(Point2 v) {
    return normalize_angle_deg(std::atan2(v.y, v.x) * (180.0 / kPi));
}

Point2 Segment::dir() const {
    const double a = angle_deg * (kPi / 180.0);
    return {std::cos(a), std::sin(a)};
}

Point2 Segment::normal() const {
    const Point2 d = dir();
    return {-d.y, d.x};
}

std::pair<double, double> edge_args(const DiffractionGeometry& g, double f_hz) {
    const double k = std::sqrt(2.0 * f_hz / (kSpeedOfLight * g.rho));
    return {k * g.u1, k * g.u2};
}

Point2 mirror_point(Point2 p, const Segment& plane) {
    const Point2 n = plane.normal();
    const double d = (p - plane.center).dot(n);
    return p - n * (2.0 * d);
}

Point2 effective_source(Point2 tx, const Segment& reflector,
                        std::optional<double> radius) {
    if (radius) {
        if (!(*radius > 0.0))
            throw std::invalid_argument("effective_source: radius must be > 0");
        const Point2 v = reflector.center - tx;
        const double d = v.norm();
        if (d <= 0.0)
            throw std::invalid_argument("effective_source: degenerate geometry");
        // R/4 behind the surface on the tx -> reflector line
        return reflector.center + v * ((*radius / 4.0) / d);
    }
    const double off = std::abs((tx - reflector.center).dot(reflector.normal()));
    const double scale = std::max(1.0, distance(tx, reflector.center));
    if (off < 1e-12 * scale)
        throw std::invalid_argument("effective_source: degenerate geometry (tx on reflector line)");
    return mirror_point(tx, reflector);
}

double rho_param(double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw std::invalid_argument("rho_param: invalid geometry (nonpositive distance)");
    if (std::isinf(r1)) return r2;
    if (std::isinf(r2)) return r1;
    return r1 * r2 / (r1 + r2);
}

DiffractionGeometry aperture_projection(Point2 eff, Point2 target,
                                        const Aperture& aperture) {
    const Segment& seg = aperture.seg;
    const Point2 n = seg.normal();
    const Point2 d = seg.dir();
    const Point2 line = target - eff;
    const double denom = line.dot(n);
    const double span = line.norm();
    if (std::abs(denom) < 1e-14 * std::max(1.0, span))
        throw std::invalid_argument("aperture_projection: no intersection (line parallel to plane)");

    const double t = (seg.center - eff).dot(n) / denom;
    const Point2 x = eff + line * t;

    DiffractionGeometry g;
    g.eff_source = eff;
    g.r1 = distance(eff, x);
    g.r2 = distance(target, x);
    g.same_side = !(t > 0.0 && t < 1.0);
    if (g.r1 <= 0.0 || g.r2 <= 0.0)
        throw std::invalid_argument("aperture_projection: degenerate geometry (point on plane)");
    g.rho = rho_param(g.r1, g.r2);
    g.u0 = (x - seg.center).dot(d);
    constexpr double inf = std::numeric_limits<double>::infinity();
    g.u1 = aperture.open_low ? -inf : -0.5 * seg.length - g.u0;
    g.u2 = aperture.open_high ? inf : 0.5 * seg.length - g.u0;
    return g;
}

DiffractionGeometry aperture_projection(Point2 eff, Point2 target,
                                        const Segment& aperture) {
    return aperture_projection(eff, target, Aperture{aperture, false, false});
}

double diffraction_angle(double w, double lambda_m, double r1, double r2) {
    if (lambda_m < 0.0) throw std::invalid_argument("diffraction_angle: invalid wavelength");
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw std::invalid_argument("diffraction_angle: invalid geometry");
    return w * std::sqrt(lambda_m * (r1 + r2) / (2.0 * r1 * r2));
}

namespace {

// Path-length excess of q relative to the straight tx-rx line.
inline double excess(Point2 tx, Point2 rx, Point2 q, double base) {
    return distance(tx, q) + distance(q, rx) - base;
}

} // namespace

bool fresnel_zone_clear(Point2 tx, Point2 rx, double lambda_m,
                        std::span<const Segment> obstacles) {
    const double base = distance(tx, rx);
    const double limit = 0.5 * lambda_m;
    for (const Segment& ob : obstacles) {
        const Point2 a = ob.end_low();
        const Point2 b = ob.end_high();
        // excess is convex along the segment: golden-section to the minimum
        double lo = 0.0, hi = 1.0;
        constexpr double invphi = 0.6180339887498949;
        double m1 = hi - invphi * (hi - lo);
        double m2 = lo + invphi * (hi - lo);
        auto at = [&](double t) {
            return excess(tx, rx, a + (b - a) * t, base);
        };
        double f1 = at(m1), f2 = at(m2);
        for (int it = 0; it < 80 && (hi - lo) > 1e-13; ++it) {
            if (f1 <= f2) {
                hi = m2; m2 = m1; f2 = f1;
                m1 = hi - invphi * (hi - lo);
                f1 = at(m1);
            } else {
                lo = m1; m1 = m2; f1 = f2;
                m2 = lo + invphi * (hi - lo);
                f2 = at(m2);
            }
        }
        const double fmin = std::min({f1, f2, at(lo), at(hi)});
        if (fmin < limit) return false; // strictly inside the zone
    }
    return true;
}

} // namespace fresnel2d
