#include <doctest.h>

#include "fresnel2d/scenario.hpp"

#include <cmath>
#include <stdexcept>

using namespace fresnel2d;

namespace {

const char* kMinimalDoc = R"({
  "transmitter": {"position": [0, 0]},
  "path": {"start": [0, 10], "end": [20, 10], "samples": 11},
  "frequencies": [2.4e9]
})";

} // namespace

TEST_CASE("load_scenario minimal document") {
    const Scenario sc = load_scenario(kMinimalDoc);
    CHECK(sc.reflectors.empty());
    CHECK(sc.frequencies.size() == 1);
    CHECK(sc.frequencies[0].center_hz == 2.4e9);
    CHECK(sc.frequencies[0].band_points == 1);
    CHECK(sc.transmitter.input_power_w == 1.0); // defaults
    CHECK(sc.transmitter.gain == 1.0);
    CHECK(!sc.transmitter.aperture.has_value());
    CHECK(sc.antenna.is_isotropic());
}

TEST_CASE("load_scenario validation errors name the field") {
    // reflectivity out of range
    const std::string bad_refl = R"({
      "transmitter": {"position": [0, 0]},
      "reflectors": [{"center": [6, 0], "angle_deg": 80, "length": 1.5, "reflectivity": 1.5}],
      "path": {"start": [0, 10], "end": [20, 10], "samples": 11},
      "frequencies": [2.4e9]
    })";
    CHECK_THROWS_WITH_AS(load_scenario(bad_refl),
                         doctest::Contains("reflectivity out of [0,1]"), ScenarioError);

    // unknown keys rejected
    const std::string unknown = R"({
      "transmitter": {"position": [0, 0], "color": "red"},
      "path": {"start": [0, 10], "end": [20, 10], "samples": 11},
      "frequencies": [2.4e9]
    })";
    CHECK_THROWS_WITH_AS(load_scenario(unknown), doctest::Contains("unknown key"),
                         ScenarioError);

    CHECK_THROWS_AS(load_scenario("{ not json"), ScenarioError);
    CHECK_THROWS_AS(load_scenario("{}"), ScenarioError);

    // malformed fields never crash, always a named error
    const char* broken[] = {
        R"({"transmitter": {"position": [0]}, "path": {"start": [0,10], "end": [20,10], "samples": 11}, "frequencies": [2.4e9]})",
        R"({"transmitter": {"position": [0,0]}, "path": {"start": [0,10], "end": [20,10], "samples": 1}, "frequencies": [2.4e9]})",
        R"({"transmitter": {"position": [0,0]}, "path": {"start": [0,10], "end": [0,10], "samples": 5}, "frequencies": [2.4e9]})",
        R"({"transmitter": {"position": [0,0]}, "path": {"start": [0,10], "end": [20,10], "samples": 5}, "frequencies": []})",
        R"({"transmitter": {"position": [0,0]}, "path": {"start": [0,10], "end": [20,10], "samples": 5}, "frequencies": [-1]})",
        R"({"transmitter": {"position": [0,0], "power_w": 0}, "path": {"start": [0,10], "end": [20,10], "samples": 5}, "frequencies": [2.4e9]})",
        R"({"transmitter": {"position": [0,0]}, "path": {"start": [0,10], "end": [20,10], "samples": 5}, "frequencies": [{"center_hz": 2.4e9, "band_points": 3}]})",
        R"({"transmitter": {"position": [0,0]}, "seed": -3, "path": {"start": [0,10], "end": [20,10], "samples": 5}, "frequencies": [2.4e9]})",
    };
    for (const char* doc : broken) CHECK_THROWS_AS(load_scenario(doc), ScenarioError);
}

TEST_CASE("shipped fig1b document loads with one reflector at x = 6") {
    const Scenario sc = load_scenario_file(std::string(SCENARIO_DIR) + "/fig1b.json");
    REQUIRE(sc.reflectors.size() == 1);
    CHECK(sc.reflectors[0].geometry.length == doctest::Approx(1.5));
    CHECK(sc.reflectors[0].geometry.center.x == doctest::Approx(6.0));
    CHECK(sc.frequencies.size() == 2);
}

TEST_CASE("roughen") {
    Reflector r;
    r.geometry = Segment{{6.0, 0.0}, 1.5, 80.0};
    r.roughness = RoughnessSpec{0.1, 0.05, 3};

    const std::vector<Reflector> subs = roughen(r, 42);
    CHECK(subs.size() == 15);

    double total = 0.0;
    for (const Reflector& s : subs) {
        total += s.geometry.length;
        CHECK(s.geometry.angle_deg == r.geometry.angle_deg);
        CHECK(s.reflectivity == r.reflectivity);
        // displacement bounded by max_offset, perpendicular to the parent line
        const Point2 n = r.geometry.normal();
        const double d = (s.geometry.center - r.geometry.center).dot(n);
        CHECK(std::fabs(d) <= 0.05 + 1e-12);
    }
    CHECK(total == doctest::Approx(1.5).epsilon(1e-12));

    // determinism
    const std::vector<Reflector> again = roughen(r, 42);
    for (std::size_t i = 0; i < subs.size(); ++i) {
        CHECK(subs[i].geometry.center.x == again[i].geometry.center.x);
        CHECK(subs[i].geometry.center.y == again[i].geometry.center.y);
    }
    // a different master seed moves the pieces
    const std::vector<Reflector> other = roughen(r, 43);
    bool differs = false;
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i].geometry.center.x != other[i].geometry.center.x) differs = true;
    CHECK(differs);

    // zero offset keeps sub-pieces collinear with the parent
    r.roughness = RoughnessSpec{0.4, 0.0, 0};
    for (const Reflector& s : roughen(r, 7)) {
        const Point2 n = r.geometry.normal();
        CHECK(std::fabs((s.geometry.center - r.geometry.center).dot(n)) < 1e-12);
    }

    // sub_length longer than the reflector: one displaced segment plus warning
    r.roughness = RoughnessSpec{5.0, 0.01, 0};
    std::vector<std::string> warnings;
    CHECK(roughen(r, 7, &warnings).size() == 1);
    CHECK(!warnings.empty());
}

TEST_CASE("spawn_random_reflectors ranges and determinism") {
    const std::vector<Reflector> none = spawn_random_reflectors(0, 5);
    CHECK(none.empty());

    const std::vector<Reflector> many = spawn_random_reflectors(10000, 5);
    for (const Reflector& r : many) {
        CHECK(r.geometry.center.x >= 5.0);
        CHECK(r.geometry.center.x < 20.0);
        CHECK(r.geometry.center.y >= -5.0);
        CHECK(r.geometry.center.y < 7.0);
        CHECK(r.geometry.angle_deg >= 90.0);
        CHECK(r.geometry.angle_deg < 270.0);
        CHECK(r.geometry.length >= 0.0);
        CHECK(r.geometry.length < 2.0);
    }

    const std::vector<Reflector> a = spawn_random_reflectors(8, 13);
    const std::vector<Reflector> b = spawn_random_reflectors(8, 13);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].geometry.center.x == b[i].geometry.center.x);

    const std::vector<Reflector> c = spawn_random_reflectors(8, 14);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].geometry.center.x != c[i].geometry.center.x) differs = true;
    CHECK(differs);

    // extending the list never perturbs earlier draws (per-object streams)
    const std::vector<Reflector> more = spawn_random_reflectors(9, 13);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].geometry.center.x == more[i].geometry.center.x);
        CHECK(a[i].geometry.angle_deg == more[i].geometry.angle_deg);
    }
}

TEST_CASE("sample_path") {
    PathSpec p{{0.0, 10.0}, {20.0, 10.0}, 2};
    const std::vector<Point2> two = sample_path(p);
    REQUIRE(two.size() == 2);
    CHECK(two.front().x == 0.0);
    CHECK(two.back().x == 20.0);

    p.samples = 2001;
    const std::vector<Point2> fine = sample_path(p);
    CHECK(fine.size() == 2001);
    const double step = distance(fine[0], fine[1]);
    CHECK(step == doctest::Approx(0.01).epsilon(1e-10));
    for (std::size_t i = 1; i < fine.size(); ++i)
        CHECK(distance(fine[i - 1], fine[i]) == doctest::Approx(step).epsilon(1e-12));
}

TEST_CASE("scenario hash tracks content") {
    Scenario a = load_scenario(kMinimalDoc);
    Scenario b = a;
    CHECK(scenario_hash(a) == scenario_hash(b));
    b.seed = 99;
    CHECK(scenario_hash(a) != scenario_hash(b));
}
