#include <doctest.h>

#include "fresnel2d/constants.hpp"
#include "fresnel2d/fresnel.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <limits>
#include <random>

using namespace fresnel2d;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("fresnel_cs matches the quadrature oracle") {
    // frozen spot values, first computed with the oracle below
    const FresnelPair one = fresnel_cs(1.0);
    CHECK(one.c == doctest::Approx(0.77989340037682283).epsilon(1e-12));
    CHECK(one.s == doctest::Approx(0.43825914739035477).epsilon(1e-12));
    CHECK(std::fabs(one.c - oracle::fresnel_c(1.0)) < 1e-10);
    CHECK(std::fabs(one.s - oracle::fresnel_s(1.0)) < 1e-10);

    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double w = dist(gen);
        const FresnelPair p = fresnel_cs(w);
        worst = std::max(worst, std::fabs(p.c - oracle::fresnel_c(w)));
        worst = std::max(worst, std::fabs(p.s - oracle::fresnel_s(w)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("fresnel_cs limits and symmetry") {
    const FresnelPair zero = fresnel_cs(0.0);
    CHECK(zero.c == 0.0);
    CHECK(zero.s == 0.0);

    const FresnelPair inf = fresnel_cs(kInf);
    CHECK(inf.c == 0.5);
    CHECK(inf.s == 0.5);
    const FresnelPair ninf = fresnel_cs(-kInf);
    CHECK(ninf.c == -0.5);
    CHECK(ninf.s == -0.5);

    for (double w : {0.3, 1.0, 1.6, 2.7, 9.9}) {
        const FresnelPair p = fresnel_cs(w);
        const FresnelPair n = fresnel_cs(-w);
        CHECK(n.c == -p.c);
        CHECK(n.s == -p.s);
        CHECK(std::fabs(p.c) <= 0.8);
        CHECK(std::fabs(p.s) <= 0.8);
    }

    CHECK_THROWS_AS(fresnel_cs(std::nan("")), std::invalid_argument);
}

TEST_CASE("fr_term identities") {
    CHECK(fr_term(-kInf, kInf) == std::complex<double>(1.0, -1.0));
    CHECK(fr_term(0.0, kInf) == std::complex<double>(0.5, -0.5));
    CHECK(fr_term(0.7, 0.7) == std::complex<double>(0.0, 0.0));
    CHECK_THROWS_AS(fr_term(std::nan(""), 1.0), std::invalid_argument);

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        double a = dist(gen), b = dist(gen), c = dist(gen);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        // additivity across a split aperture
        const std::complex<double> lhs = fr_term(a, b) + fr_term(b, c);
        const std::complex<double> rhs = fr_term(a, c);
        CHECK(std::abs(lhs - rhs) <= 2e-9);
        // antisymmetry is exact
        CHECK(fr_term(b, a) == -fr_term(a, b));
    }
}

TEST_CASE("fresnel_arg scaling") {
    CHECK(fresnel_arg(3.0, 3.0, 2.4e9, 5.0) == 0.0);

    // quadrupling f doubles w
    const double w1 = fresnel_arg(1.25, 1.0, 2.0e9, 4.0);
    const double w4 = fresnel_arg(1.25, 1.0, 8.0e9, 4.0);
    CHECK(w4 == doctest::Approx(2.0 * w1).epsilon(1e-12));

    // linear in (u - u0), ~1/sqrt(rho)
    const double base = fresnel_arg(2.0, 1.0, 2.4e9, 5.0);
    CHECK(fresnel_arg(3.0, 1.0, 2.4e9, 5.0) == doctest::Approx(2.0 * base).epsilon(1e-12));
    CHECK(fresnel_arg(2.0, 1.0, 2.4e9, 20.0) == doctest::Approx(0.5 * base).epsilon(1e-12));

    // hand value from the defining formula with c = 3e8 exactly:
    // sqrt(2*2.4e9/(3e8*5)) * 0.25 = sqrt(3.2)*0.25 ~ 0.4472
    const double w = std::sqrt(2.0 * 2.4e9 / (kSpeedOfLight * 5.0)) * 0.25;
    CHECK(fresnel_arg(1.25, 1.0, 2.4e9, 5.0) == doctest::Approx(w).epsilon(1e-15));
    CHECK(w == doctest::Approx(0.4472).epsilon(5e-4));

    CHECK_THROWS_AS(fresnel_arg(1.0, 0.0, -1.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(fresnel_arg(1.0, 0.0, 2.4e9, 0.0), std::invalid_argument);
}

TEST_CASE("batch kernels are bitwise equal") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> wide(-1000.0, 1000.0);
    std::uniform_real_distribution<double> narrow(-3.0, 3.0);

    std::vector<double> w;
    for (int i = 0; i < 4096; ++i) w.push_back(wide(gen));
    for (int i = 0; i < 4096; ++i) w.push_back(narrow(gen));
    w.push_back(0.0);
    w.push_back(1.6);
    w.push_back(std::nextafter(1.6, 2.0));
    w.push_back(kInf);
    w.push_back(-kInf);
    w.push_back(1e200);

    std::vector<double> cs(w.size()), ss(w.size()), cv(w.size()), sv(w.size());
    detail::fresnel_cs_scalar(w.data(), cs.data(), ss.data(), w.size());
    if (detail::avx2_available()) {
        detail::fresnel_cs_avx2(w.data(), cv.data(), sv.data(), w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(cs[i] == cv[i]);
            CHECK(ss[i] == sv[i]);
        }
    }

    // the dispatched batch agrees with the scalar front door
    fresnel_cs_batch(w, cv, sv);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const FresnelPair p = fresnel_cs(w[i]);
        CHECK(p.c == cv[i]);
        CHECK(p.s == sv[i]);
    }
}
