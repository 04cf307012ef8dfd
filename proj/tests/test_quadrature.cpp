/// Sanity checks for the adaptive Gauss integrator that backs every oracle in
/// this test suite. If these fail, nothing downstream is trustworthy.

#include "alphavortex/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace alphavortex::quadrature;

TEST_CASE("gauss_legendre rules integrate polynomials exactly") {
    // order-n rule is exact through degree 2n-1
    auto poly = [](double x) { return x * x * x * x * x * x; }; // x^6
    const double exact = 2.0 / 7.0;
    CHECK(std::abs(gauss(poly, -1.0, 1.0, 4) - exact) < 1e-15);

    const auto& rule = gauss_legendre(4);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) < 1e-15);
    // bit-exact symmetry of the nodes
    CHECK(rule.nodes[0] == -rule.nodes[3]);
    CHECK(rule.nodes[1] == -rule.nodes[2]);
    CHECK(rule.weights[0] == rule.weights[3]);
}

TEST_CASE("adaptive integrate: smooth, peaked and singular integrands") {
    CHECK(std::abs(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) - 2.0) < 1e-12);

    // sharply peaked Gaussian, integral over [-40, 40] is sqrt(pi)/10
    auto peak = [](double x) { return std::exp(-100.0 * x * x); };
    CHECK(std::abs(integrate(peak, -40.0, 40.0) - std::sqrt(std::numbers::pi) / 10.0) < 1e-12);

    // integrable log singularity at the left endpoint
    auto logsing = [](double x) { return std::log(1.0 / x); };
    CHECK(std::abs(integrate(logsing, 0.0, 1.0) - 1.0) < 1e-9);
}

TEST_CASE("adaptive integrate: reports non-convergence") {
    AdaptiveOptions opts;
    opts.rel_tol = 1e-14;
    opts.max_depth = 3;
    auto nasty = [](double x) { return std::cos(500.0 * x * x); };
    CHECK_THROWS_AS((void)integrate(nasty, 0.0, 10.0, opts), QuadratureError);
}

TEST_CASE("integrate_segmented splits at breakpoints") {
    auto kink = [](double x) { return std::abs(x - 0.5); };
    const double brk[] = {0.0, 0.5, 1.0};
    CHECK(std::abs(integrate_segmented(kink, brk) - 0.25) < 1e-12);
}
