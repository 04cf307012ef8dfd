#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace alphavortex::quadrature {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gauss-Legendre rule on [-1,1]. Nodes are symmetric about 0 bit-exactly.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes/weights computed once per order by Newton iteration on P_n and cached.
const GaussRule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre approximation of \int_a^b f.
double gauss(const std::function<double(double)>& f, double a, double b, int n);

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_depth = 60;
};

/// Adaptive bisection driven by the G7-vs-G15 discrepancy on each segment.
/// Throws QuadratureError when the depth limit is hit before the local error
/// estimate falls under tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const AdaptiveOptions& opts = {});

/// Convenience: integrate with interior breakpoints (integrand singularities,
/// kinks). Segments are refined independently.
double integrate_segmented(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           const AdaptiveOptions& opts = {});

} // namespace alphavortex::quadrature
