/// K0/K1 against the integral-representation oracle. The frozen constants
/// below were produced by oracle::k0/k1 (adaptive quadrature of
/// int exp(-x cosh t) cosh(nt) dt) before the implementation was trusted.

#include "alphavortex/bessel.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace alphavortex::bessel;

namespace {
// oracle::k0(1), oracle::k1(1), oracle::k0(50)
constexpr double k0_at_1 = 0.42102443824070823;
constexpr double k1_at_1 = 0.60190723019723436;
constexpr double k0_at_50 = 3.4101677497894909e-23;
} // namespace

TEST_CASE("bessel_k0: frozen oracle values and live oracle sweep") {
    CHECK(std::abs(bessel_k0(1.0) - k0_at_1) < 1e-12);
    CHECK(std::abs(bessel_k0(1.0) - oracle::k0(1.0)) < 1e-9);
    CHECK(std::abs(bessel_k0(50.0) - k0_at_50) < 1e-25);
    CHECK(bessel_k0(50.0) < 1e-20); // exponential tail

    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
        const double x = 1e-6 * std::pow(5e7, i / 80.0);
        worst = std::max(worst, std::abs(bessel_k0(x) - oracle::k0(x)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("bessel_k0: logarithmic blow-up at the origin") {
    // K0(x)/log(1/x) -> 1 from above as x -> 0+
    double prev = 2.0;
    for (double x : {1e-3, 1e-4, 1e-5}) {
        const double ratio = bessel_k0(x) / std::log(1.0 / x);
        CHECK(ratio > 1.0);
        CHECK(ratio - 1.0 < 0.02);
        CHECK(ratio < prev); // deviation shrinks monotonically
        prev = ratio;
    }
}

TEST_CASE("bessel_k1: frozen oracle values and live oracle sweep") {
    CHECK(std::abs(bessel_k1(1.0) - k1_at_1) < 1e-12);
    CHECK(std::abs(bessel_k1(1.0) - oracle::k1(1.0)) < 1e-9);

    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
        const double x = 1e-6 * std::pow(5e7, i / 80.0);
        worst = std::max(worst, std::abs(bessel_k1(x) - oracle::k1(x)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("bessel_k1: small-argument limit x*K1(x) -> 1") {
    CHECK(std::abs(1e-3 * bessel_k1(1e-3) - 1.0) <= 1e-4);
}

TEST_CASE("bessel_k1 equals -K0' (finite differences at x = 10)") {
    const double x = 10.0, h = 1e-5;
    const double dk0 = (bessel_k0(x + h) - bessel_k0(x - h)) / (2.0 * h);
    CHECK(std::abs(-dk0 - bessel_k1(x)) < 1e-6);
}

TEST_CASE("bessel domain errors") {
    CHECK_THROWS_AS((void)bessel_k0(0.0), std::domain_error);
    CHECK_THROWS_AS((void)bessel_k0(-1.0), std::domain_error);
    CHECK_THROWS_AS((void)bessel_k1(0.0), std::domain_error);
    CHECK_THROWS_AS((void)bessel_k1(-2.5), std::domain_error);
}

TEST_CASE("fast x*K1(x) path matches the direct route everywhere") {
    double worst = 0.0;
    for (int i = 1; i <= 4000; ++i) {
        const double x = 39.9 * i / 4000.0;
        worst = std::max(worst, std::abs(detail::xk1(x) - x * bessel_k1(x)));
    }
    CHECK(worst < 5e-14);
    CHECK(detail::xk1(0.0) == 1.0);
    CHECK(detail::xk1(45.0) == 0.0); // below half an ulp of 1
}
