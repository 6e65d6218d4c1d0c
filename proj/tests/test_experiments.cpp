#include <doctest.h>

#include "fresnel2d/experiments.hpp"

#include <filesystem>
#include <fstream>

using namespace fresnel2d;
namespace fs = std::filesystem;

namespace {

ExperimentConfig test_cfg(const char* tag) {
    ExperimentConfig cfg;
    cfg.out_dir = fs::temp_directory_path() / "fresnel2d_tests" / tag;
    cfg.scenario_dir = SCENARIO_DIR;
    cfg.write_traces = false;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("offset sweep grows with offset and writes its report") {
    ExperimentConfig cfg = test_cfg("offset");
    const std::vector<OffsetSweepPoint> pts = exp_offset_sweep(cfg, {1.0, 4.0, 8.0});
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].delay_m > 0.0);
    CHECK(pts[2].delay_m > pts[0].delay_m);
    CHECK(fs::exists(cfg.out_dir / "offset_sweep" / "report.csv"));
}

TEST_CASE("random variance: angle randomization dominates") {
    ExperimentConfig cfg = test_cfg("variance");
    const std::vector<RandomVarianceCell> cells =
        exp_random_variance(cfg, {3}, 12);
    REQUIRE(cells.size() == 4);
    // combos: fixed, angle, length, angle+length (positions always random)
    const double base = cells[0].variance;
    const double angle_only = cells[1].variance;
    CHECK(angle_only > base);
    // mean delay stays positive: the lower carrier still leads
    for (const RandomVarianceCell& c : cells) CHECK(c.mean_delay_m > 0.0);
}

TEST_CASE("experiment reports embed the scenario hash and seed") {
    ExperimentConfig cfg = test_cfg("hash");
    exp_los_nlos(cfg);
    const std::string report = slurp(cfg.out_dir / "los_nlos" / "report.csv");
    CHECK(report.find("scenario_hash=") != std::string::npos);
    CHECK(report.find("seed=") != std::string::npos);
}

TEST_CASE("experiments are deterministic in (config, seed)") {
    ExperimentConfig cfg = test_cfg("det_a");
    ExperimentConfig cfg2 = test_cfg("det_b");
    const ReflectionShadowResult a = exp_reflection_shadow(cfg, true, 3);
    const ReflectionShadowResult b = exp_reflection_shadow(cfg2, true, 3);
    REQUIRE(a.delays_m.size() == b.delays_m.size());
    for (std::size_t i = 0; i < a.delays_m.size(); ++i)
        CHECK(a.delays_m[i] == b.delays_m[i]);

    cfg2.seed = 77;
    const ReflectionShadowResult c = exp_reflection_shadow(cfg2, true, 3);
    bool differs = false;
    for (std::size_t i = 0; i < a.delays_m.size(); ++i)
        if (a.delays_m[i] != c.delays_m[i]) differs = true;
    CHECK(differs);
}

TEST_CASE("run_experiment dispatch") {
    ExperimentConfig cfg = test_cfg("dispatch");
    CHECK(!run_experiment("bogus", cfg));
    CHECK(experiment_names().size() == 8);
    CHECK(run_experiment("offset_sweep", cfg));
}

// Regression pins: the shipped scenario documents reproduce these values (the
// wide tolerances of the published figures are asserted in the acceptance
// suite; here the reconstruction is pinned tightly).
TEST_CASE("shipped scenarios: pinned threshold delays") {
    ExperimentConfig cfg = test_cfg("pinned");
    const LosNlosResult lr = exp_los_nlos(cfg);
    CHECK(lr.falling_delay_m == doctest::Approx(0.6195).epsilon(0.016));
    CHECK(lr.rising_delay_m == doctest::Approx(0.9600).epsilon(0.011));

    const ReflectionShadowResult smooth = exp_reflection_shadow(cfg, false);
    CHECK(smooth.delays_m.front() == doctest::Approx(0.6211).epsilon(0.017));
}

TEST_CASE("back-reflection fade depths: pinned regression baselines") {
    ExperimentConfig cfg = test_cfg("s8pin");
    const BackReflectionResult flat =
        exp_back_reflection(cfg, BackReflectionVariant::flat_pure);
    const BackReflectionResult banded =
        exp_back_reflection(cfg, BackReflectionVariant::banded);
    const BackReflectionResult rough =
        exp_back_reflection(cfg, BackReflectionVariant::rough);
    auto depth30 = [](const BackReflectionResult& r) {
        for (const auto& x : r.per_frequency)
            if (x.f_hz > 1e10) return x.fade_depth;
        return 0.0;
    };
    CHECK(depth30(flat) == doctest::Approx(24.751).epsilon(1e-3));
    CHECK(depth30(banded) == doctest::Approx(1.3162).epsilon(1e-3));
    CHECK(depth30(rough) == doctest::Approx(1.9038).epsilon(1e-3));
}

TEST_CASE("shadow-side spread scales as sqrt(lambda) within 5%") {
    Scenario sc = knife_edge_scenario(7.0);
    sc.path.samples = 6001;
    const ChannelTrace tr = evaluate_trace(sc);
    auto contour = [&](std::size_t bi, double level) {
        const LosReference ref = estimate_los_average(tr, bi);
        return threshold_crossings(tr, bi, level, CrossDirection::rising, ref)
            .front()
            .position_m;
    };
    // distance from the frequency-invariant 50% boundary to the 30% contour
    const double d24 = contour(0, 0.5) - contour(0, 0.3);
    const double d30 = contour(1, 0.5) - contour(1, 0.3);
    const double target = std::sqrt(30.0 / 2.4);
    CHECK(d24 / d30 == doctest::Approx(target).epsilon(0.05));
}
