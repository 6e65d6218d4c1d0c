#include <doctest.h>

#include "fresnel2d/trace.hpp"

#include <cmath>

using namespace fresnel2d;

namespace {

Scenario simple_scene() {
    Scenario sc;
    sc.transmitter.position = {-1.0, -15.0};
    Aperture ap;
    ap.seg = Segment{{10.0, -5.0}, 12.0, 0.0};
    sc.transmitter.aperture = ap;
    Reflector r;
    r.geometry = Segment{{6.0, -2.0}, 1.5, 80.0};
    sc.reflectors.push_back(r);
    sc.path = PathSpec{{0.0, 10.0}, {20.0, 10.0}, 101};
    sc.frequencies = {{2.4e9, 0.0, 1}, {30e9, 0.01, 5}};
    return sc;
}

} // namespace

TEST_CASE("batched trace equals the per-point operations") {
    const Scenario sc = simple_scene();
    const ChannelTrace tr = evaluate_trace(sc);
    const std::vector<Point2> pts = sample_path(sc.path);
    const std::vector<Reflector> expanded = expand_reflectors(sc);

    REQUIRE(tr.points.size() == pts.size());
    REQUIRE(tr.bands.size() == 2);
    for (std::size_t bi = 0; bi < tr.bands.size(); ++bi) {
        for (std::size_t i = 0; i < pts.size(); i += 7) {
            const ChannelSample ref = channel_coefficient(
                sc.transmitter, expanded, sc.antenna, pts[i],
                tr.bands[bi].spec.center_hz);
            CHECK(tr.bands[bi].totals[i] == ref.total); // bitwise
            REQUIRE(tr.bands[bi].parts[i].size() == ref.parts.size());
            for (std::size_t m = 0; m < ref.parts.size(); ++m) {
                CHECK(tr.bands[bi].parts[i][m].value == ref.parts[m].value);
                CHECK(tr.bands[bi].parts[i][m].skipped == ref.parts[m].skipped);
            }
        }
    }
}

TEST_CASE("band power matches the per-point band average") {
    const Scenario sc = simple_scene();
    const ChannelTrace tr = evaluate_trace(sc);
    const std::vector<Point2> pts = sample_path(sc.path);
    const std::vector<Reflector> expanded = expand_reflectors(sc);
    for (std::size_t i = 0; i < pts.size(); i += 13) {
        const double ref = band_average_power(sc.transmitter, expanded, sc.antenna,
                                              pts[i], tr.bands[1].spec);
        CHECK(tr.bands[1].band_power[i] == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("worker count never changes the result") {
    Scenario sc = simple_scene();
    sc.reflectors[0].roughness = RoughnessSpec{0.3, 0.02, 0};
    const ChannelTrace one = evaluate_trace(sc, 1);
    const ChannelTrace four = evaluate_trace(sc, 4);
    REQUIRE(one.points.size() == four.points.size());
    for (std::size_t bi = 0; bi < one.bands.size(); ++bi)
        for (std::size_t i = 0; i < one.points.size(); ++i) {
            CHECK(one.bands[bi].totals[i] == four.bands[bi].totals[i]);
            CHECK(one.bands[bi].band_power[i] == four.bands[bi].band_power[i]);
        }
}

TEST_CASE("arclen accumulates along the path") {
    const Scenario sc = simple_scene();
    const ChannelTrace tr = evaluate_trace(sc);
    CHECK(tr.arclen.front() == 0.0);
    CHECK(tr.arclen.back() == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("shipped reflection scenario shows the in-shadow reflection peak") {
    const Scenario sc = load_scenario_file(std::string(SCENARIO_DIR) + "/fig1b.json");
    const ChannelTrace tr = evaluate_trace(sc);
    // 30 GHz: strong specular peak inside the shadowed part of the path,
    // well above the diffracted direct background beyond the zone
    const std::size_t hi = tr.bands[1].spec.center_hz > tr.bands[0].spec.center_hz ? 1 : 0;
    double peak = 0.0, post = 0.0;
    for (std::size_t i = 0; i < tr.points.size(); ++i) {
        const double x = tr.points[i].x;
        const double a = std::abs(tr.bands[hi].totals[i]);
        if (x >= 3.0 && x <= 6.5) peak = std::max(peak, a);
        if (x >= 7.5 && x <= 9.0) post = std::max(post, a);
    }
    CHECK(peak > 4.0 * post);
}

TEST_CASE("shipped rough scenario expands to sixteen components") {
    const Scenario sc = load_scenario_file(std::string(SCENARIO_DIR) + "/fig2c.json");
    REQUIRE(sc.reflectors.size() == 1);
    REQUIRE(sc.reflectors[0].roughness.has_value());
    const std::vector<Reflector> expanded = expand_reflectors(sc);
    CHECK(expanded.size() == 15); // plus the direct component: 16 in the sum
}
