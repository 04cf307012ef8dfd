#pragma once

#include "alphavortex/vec2.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace alphavortex::kernels {

enum class BlobFamily { EulerAlpha, Gaussian, Krasny };

const char* family_name(BlobFamily f);
BlobFamily family_from_name(const std::string& name);

/// Radially symmetric smoothing kernel: the Euler-alpha Bessel kernel
/// G_alpha(x) = K0(|x|/alpha)/(2 pi alpha^2), a Gaussian, or the algebraically
/// decaying Krasny blob. `scale` is alpha for EulerAlpha and epsilon otherwise.
struct Blob {
    BlobFamily family = BlobFamily::EulerAlpha;
    double scale = 1.0;

    Blob() = default;
    Blob(BlobFamily f, double s);
};

/// Radial density g(r) of the unit-mass blob. EulerAlpha diverges
/// logarithmically at r = 0 and throws there.
double blob_density(const Blob& b, double r);

/// Cumulative circulation gamma(r) = 2 pi \int_0^r s g(s) ds, in [0,1].
/// Closed forms:
///   EulerAlpha: 1 - (r/a) K1(r/a)
///   Gaussian:   1 - exp(-(r/e)^2)
///   Krasny:     r^2 / (r^2 + e^2)
double gamma(const Blob& b, double r);

/// Second moment \int |x|^2 blob dx: 4a^2 (EulerAlpha), e^2 (Gaussian).
/// Throws std::domain_error for Krasny (the integral diverges).
double second_moment(const Blob& b);

/// Whether gamma -> 1 exponentially (EulerAlpha/Gaussian) or only
/// algebraically (Krasny). Tail-sensitive diagnostics branch on this.
bool has_exponential_tail(const Blob& b);

/// Regularized Biot-Savart kernel K(x) gamma(|x|) with K(x) = x^perp/(2pi|x|^2).
/// Bounded; k_reg(0) = 0 so the self-interaction term vanishes. Antisymmetric
/// bit-exactly: k_reg(-x) == -k_reg(x).
Vec2 k_reg(const Blob& b, Vec2 x);

struct KernelTable {
    Blob blob;
    std::vector<double> radii;
    std::vector<double> gamma_values;
};

/// Sample gamma on a strictly increasing nonnegative grid.
/// Throws std::invalid_argument on an unsorted or negative grid.
KernelTable tabulate(const Blob& b, std::span<const double> radii);

/// CSV export, header "r,gamma", 17 significant digits.
void write_csv(const KernelTable& table, std::ostream& out);

} // namespace alphavortex::kernels
