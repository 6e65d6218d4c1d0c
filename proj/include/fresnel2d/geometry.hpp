#pragma once
// 2-D scene geometry: points, oriented segments, mirror/effective sources and
// the aperture-plane projection feeding the diffraction equations.

#include <cmath>
#include <optional>
#include <span>
#include <utility>

namespace fresnel2d {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2 operator+(Point2 r) const { return {x + r.x, y + r.y}; }
    constexpr Point2 operator-(Point2 r) const { return {x - r.x, y - r.y}; }
    constexpr Point2 operator*(double k) const { return {x * k, y * k}; }
    constexpr double dot(Point2 r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }
};

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

/// Angle of `v` in degrees CCW from +x, normalized to [0, 360).
double angle_deg_of(Point2 v);

/// Finite segment given by center, length and angle (degrees CCW from +x).
struct Segment {
    Point2 center;
    double length = 0.0;
    double angle_deg = 0.0;

    Point2 dir() const;        // unit vector along the segment
    Point2 normal() const;     // unit normal (dir rotated +90 degrees)
    Point2 end_low() const { return center - dir() * (0.5 * length); }
    Point2 end_high() const { return center + dir() * (0.5 * length); }
};

/// Normalize an angle to [0, 360).
double normalize_angle_deg(double deg);

/// Open interval on a wall line. `open_low/high` extend the corresponding
/// edge to infinity (a single knife edge has one open side).
struct Aperture {
    Segment seg;
    bool open_low = false;
    bool open_high = false;
};

/// Per-(plane, point) diffraction geometry. u-coordinates are measured along
/// the plane direction relative to the intersection of the eff->target line
/// with the plane (u1/u2 may be +/-infinity for open edges). The Fresnel
/// arguments w1, w2 follow per frequency via edge_args().
struct DiffractionGeometry {
    Point2 eff_source;
    double r1 = 0.0;   // eff -> intersection
    double r2 = 0.0;   // intersection -> target
    double rho = 0.0;  // r1 r2 / (r1 + r2)
    double u0 = 0.0;   // intersection offset from the segment center
    double u1 = 0.0;
    double u2 = 0.0;
    bool same_side = false; // eff and target on the same side of the plane
};

/// Fresnel arguments (w1, w2) of the aperture edges at frequency f.
std::pair<double, double> edge_args(const DiffractionGeometry& g, double f_hz);

/// Reflection of p across the infinite line containing `plane`.
Point2 mirror_point(Point2 p, const Segment& plane);

/// Image source of a flat reflector, or the R/4-rule point for a curved one
/// (radius > 0). Throws std::invalid_argument on degenerate geometry.
Point2 effective_source(Point2 tx, const Segment& reflector,
                        std::optional<double> radius = std::nullopt);

/// Distance parameter rho = r1 r2 / (r1 + r2). Throws on nonpositive input.
double rho_param(double r1, double r2);

/// Project the eff->target line onto the aperture plane. Throws
/// std::invalid_argument when the line is parallel to the plane; a same-side
/// configuration is flagged, not thrown (grazing paths occur transiently
/// during path sweeps).
DiffractionGeometry aperture_projection(Point2 eff, Point2 target,
                                        const Aperture& aperture);
DiffractionGeometry aperture_projection(Point2 eff, Point2 target,
                                        const Segment& aperture);

/// Diffraction spread angle theta = w sqrt(lambda (r1+r2) / (2 r1 r2)), in
/// radians. Small-angle expression; not clamped.
double diffraction_angle(double w, double lambda_m, double r1, double r2);

/// True iff no obstacle segment enters the open interior of the first
/// Fresnel zone (path-length excess < lambda/2). Boundary contact counts as
/// clear.
bool fresnel_zone_clear(Point2 tx, Point2 rx, double lambda_m,
                        std::span<const Segment> obstacles);

} // namespace fresnel2d
