#pragma once

namespace alphavortex::bessel {

/// Modified Bessel function of the second kind, order 0.
/// Absolute error <= 1e-9 on [1e-6, 50]. Throws std::domain_error for x <= 0
/// (K0 diverges logarithmically at the origin).
double bessel_k0(double x);

/// Modified Bessel function of the second kind, order 1.
/// Absolute error <= 1e-9 on [1e-6, 50]. Throws std::domain_error for x <= 0.
double bessel_k1(double x);

namespace detail {

/// x*K1(x) for x >= 0, continuous with value 1 at x = 0. This is the form the
/// Euler-alpha cumulative circulation needs per pairwise interaction, so it is
/// tuned for throughput: ascending series below x=2, Chebyshev fits of the
/// exponentially scaled function on [2,26], direct evaluation above.
double xk1(double x);

} // namespace detail

} // namespace alphavortex::bessel
