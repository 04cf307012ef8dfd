#include "alphavortex/bessel.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alphavortex::bessel {

namespace {

void require_positive(double x, const char* who) {
    if (!(x > 0.0))
        throw std::domain_error(std::string(who) + ": argument must be > 0");
}

struct GslInit {
    GslInit() { gsl_set_error_handler_off(); }
};
const GslInit gsl_init{};

// Ascending series for x*K1(x), x in (0, 2]. With u = x^2/4:
//   x*K1(x) = 1 + 2u*ln(x/2)*S1(u) - u*S2(u),
//   S1(u) = sum u^k / (k!(k+1)!),
//   S2(u) = sum [psi(k+1)+psi(k+2)] u^k / (k!(k+1)!).
// Terms fall below 1e-18 within ~14 terms at x = 2.
double xk1_series(double x) {
    const double u = 0.25 * x * x;
    const double euler = std::numbers::egamma;
    double term = 1.0;       // u^k / (k!(k+1)!)
    double harmonic_k = 0.0; // H_k
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < 40; ++k) {
        const double harmonic_k1 = harmonic_k + 1.0 / (k + 1);
        const double psi_sum = -2.0 * euler + harmonic_k + harmonic_k1;
        s1 += term;
        s2 += psi_sum * term;
        if (term < 1e-18) break;
        term *= u / ((k + 1.0) * (k + 2.0));
        harmonic_k = harmonic_k1;
    }
    return 1.0 + u * (2.0 * std::log(0.5 * x) * s1 - s2);
}

// Chebyshev fits of x*K1(x) itself on four segments of [2,26], built once
// from direct evaluations at the Chebyshev nodes and truncated where the
// coefficients fall below 1e-15. The function is analytic well away from the
// origin, so ~18 terms reach ~1e-13 absolute per segment, which is all
// gamma = 1 - x*K1 can resolve anyway. No exp() in the evaluation.
constexpr int kChebMax = 48;

struct ChebFit {
    double a, b;
    int n;
    std::array<double, kChebMax> coeff;
};

ChebFit make_fit(double a, double b) {
    ChebFit fit{a, b, kChebMax, {}};
    std::array<double, kChebMax> fx{};
    for (int j = 0; j < kChebMax; ++j) {
        const double t = std::cos(std::numbers::pi * (j + 0.5) / kChebMax);
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * t;
        fx[j] = x * gsl_sf_bessel_K1(x);
    }
    for (int k = 0; k < kChebMax; ++k) {
        double sum = 0.0;
        for (int j = 0; j < kChebMax; ++j)
            sum += fx[j] * std::cos(std::numbers::pi * k * (j + 0.5) / kChebMax);
        fit.coeff[k] = 2.0 / kChebMax * sum;
    }
    while (fit.n > 8 && std::abs(fit.coeff[fit.n - 1]) < 1e-15) --fit.n;
    return fit;
}

double cheb_eval(const ChebFit& fit, double x) {
    const double t = (2.0 * x - fit.a - fit.b) / (fit.b - fit.a);
    const double t2 = 2.0 * t;
    double d = 0.0, dd = 0.0;
    for (int k = fit.n - 1; k >= 1; --k) {
        const double sv = d;
        d = t2 * d - dd + fit.coeff[k];
        dd = sv;
    }
    return t * d - dd + 0.5 * fit.coeff[0];
}

const std::array<ChebFit, 4>& fits() {
    static const std::array<ChebFit, 4> all{make_fit(2.0, 4.0), make_fit(4.0, 8.0),
                                            make_fit(8.0, 16.0), make_fit(16.0, 26.0)};
    return all;
}

} // namespace

double bessel_k0(double x) {
    require_positive(x, "bessel_k0");
    if (x > 700.0) return 0.0; // below the double underflow threshold
    return gsl_sf_bessel_K0(x);
}

double bessel_k1(double x) {
    require_positive(x, "bessel_k1");
    if (x > 700.0) return 0.0;
    return gsl_sf_bessel_K1(x);
}

namespace detail {

double xk1(double x) {
    if (x < 0.0) throw std::domain_error("xk1: argument must be >= 0");
    if (x == 0.0) return 1.0;
    if (x <= 2.0) return xk1_series(x);
    if (x <= 26.0) {
        const auto& all = fits();
        const int seg = x <= 4.0 ? 0 : x <= 8.0 ? 1 : x <= 16.0 ? 2 : 3;
        return cheb_eval(all[seg], x);
    }
    if (x >= 40.0) return 0.0; // x*K1(x) < 4e-17: rounds away against 1
    return x * gsl_sf_bessel_K1(x);
}

} // namespace detail

} // namespace alphavortex::bessel
