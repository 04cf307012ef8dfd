#include "alphavortex/kernels.hpp"

#include "alphavortex/bessel.hpp"
#include "alphavortex/csv.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace alphavortex::kernels {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

const char* family_name(BlobFamily f) {
    switch (f) {
        case BlobFamily::EulerAlpha: return "euler-alpha";
        case BlobFamily::Gaussian: return "gaussian";
        case BlobFamily::Krasny: return "krasny";
    }
    return "?";
}

BlobFamily family_from_name(const std::string& name) {
    if (name == "euler-alpha") return BlobFamily::EulerAlpha;
    if (name == "gaussian") return BlobFamily::Gaussian;
    if (name == "krasny") return BlobFamily::Krasny;
    throw std::invalid_argument("unknown blob family '" + name +
                                "' (expected euler-alpha, gaussian or krasny)");
}

Blob::Blob(BlobFamily f, double s) : family(f), scale(s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("Blob: scale must be a positive finite number");
}

double blob_density(const Blob& b, double r) {
    if (r < 0.0) throw std::domain_error("blob_density: r must be >= 0");
    const double e = b.scale;
    switch (b.family) {
        case BlobFamily::EulerAlpha:
            if (r == 0.0)
                throw std::domain_error("blob_density: Euler-alpha kernel is singular at r = 0");
            return bessel::bessel_k0(r / e) / (two_pi * e * e);
        case BlobFamily::Gaussian: {
            const double z = r / e;
            return std::exp(-z * z) / (std::numbers::pi * e * e);
        }
        case BlobFamily::Krasny: {
            const double z = r / e;
            const double d = 1.0 + z * z;
            return 1.0 / (std::numbers::pi * e * e * d * d);
        }
    }
    throw std::logic_error("blob_density: bad family");
}

double gamma(const Blob& b, double r) {
    if (r < 0.0) throw std::domain_error("gamma: r must be >= 0");
    if (r == 0.0) return 0.0;
    const double z = r / b.scale;
    switch (b.family) {
        case BlobFamily::EulerAlpha:
            return 1.0 - bessel::detail::xk1(z);
        case BlobFamily::Gaussian:
            return -std::expm1(-z * z);
        case BlobFamily::Krasny:
            return z * z / (z * z + 1.0);
    }
    throw std::logic_error("gamma: bad family");
}

double second_moment(const Blob& b) {
    switch (b.family) {
        case BlobFamily::EulerAlpha:
            return 4.0 * b.scale * b.scale;
        case BlobFamily::Gaussian:
            return b.scale * b.scale;
        case BlobFamily::Krasny:
            throw std::domain_error("second_moment: diverges for the Krasny blob");
    }
    throw std::logic_error("second_moment: bad family");
}

bool has_exponential_tail(const Blob& b) {
    return b.family != BlobFamily::Krasny;
}

Vec2 k_reg(const Blob& b, Vec2 x) {
    const double r2 = x.norm2();
    if (r2 == 0.0) return {0.0, 0.0};
    const double r = std::sqrt(r2);
    const double w = gamma(b, r) / (two_pi * r2);
    return {-x.y * w, x.x * w};
}

KernelTable tabulate(const Blob& b, std::span<const double> radii) {
    if (radii.empty()) throw std::invalid_argument("tabulate: empty grid");
    if (radii.front() < 0.0)
        throw std::invalid_argument("tabulate: radii must be nonnegative");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("tabulate: radii must be strictly increasing");
    KernelTable table;
    table.blob = b;
    table.radii.assign(radii.begin(), radii.end());
    table.gamma_values.reserve(radii.size());
    for (double r : radii) table.gamma_values.push_back(gamma(b, r));
    return table;
}

void write_csv(const KernelTable& table, std::ostream& out) {
    out << "r,gamma\n";
    for (std::size_t i = 0; i < table.radii.size(); ++i)
        out << csv::num(table.radii[i]) << ',' << csv::num(table.gamma_values[i]) << '\n';
}

} // namespace alphavortex::kernels
