#include "alphavortex/diagnostics.hpp"

#include "alphavortex/csv.hpp"
#include "alphavortex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace alphavortex::diagnostics {

namespace {
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();
}

Moments moments(const ParticleSystem& sys) {
    Moments out;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const double m = sys.masses[i];
        const Vec2 p = sys.positions[i];
        out.mass += m;
        out.center += m * p;
        out.inertia += m * p.norm2();
        out.abs_moment += m * p.norm();
    }
    return out;
}

double filtered_inertia(const ParticleSystem& sys) {
    const Moments m = moments(sys);
    return m.inertia + kernels::second_moment(sys.blob) * m.mass;
}

double support_radius(const ParticleSystem& sys, double quantile) {
    if (!(quantile > 0.0 && quantile <= 1.0))
        throw std::invalid_argument("support_radius: quantile must be in (0,1]");
    if (sys.size() == 0) return 0.0;
    if (quantile == 1.0) {
        double r2 = 0.0;
        for (const Vec2& p : sys.positions) r2 = std::max(r2, p.norm2());
        return std::sqrt(r2);
    }
    if (!sys.all_nonnegative())
        throw std::domain_error("support_radius: quantile variant requires nonnegative masses");
    const double total = sys.total_mass();
    if (!(total > 0.0))
        throw std::domain_error("support_radius: total mass must be positive");
    std::vector<std::pair<double, double>> rm(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i)
        rm[i] = {sys.positions[i].norm(), sys.masses[i]};
    std::sort(rm.begin(), rm.end());
    const double target = quantile * total;
    double acc = 0.0;
    for (const auto& [r, m] : rm) {
        acc += m;
        if (acc >= target) return r;
    }
    return rm.back().first;
}

double envelope(double t, const ConfinementParams& p) {
    if (t < 0.0) throw std::domain_error("envelope: t must be >= 0");
    return 8.0 * p.r0 + p.c * std::pow(t * std::log(2.0 + t), 0.25);
}

double eta(double s) {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (e + 1.0);
}

double mass_tail(const ParticleSystem& sys, double r, double lambda) {
    if (!(r > 0.0)) throw std::invalid_argument("mass_tail: r must be > 0");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("mass_tail: lambda must lie in (0,1)");
    if (!sys.all_nonnegative())
        throw std::domain_error("mass_tail: requires nonnegative masses");
    const double r2 = r * r;
    double sum = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i)
        sum += sys.masses[i] * eta((sys.positions[i].norm2() - r2) / (lambda * r2));
    return sum;
}

double lambda_for(double r, double r0, int k) {
    if (k < 1) throw std::invalid_argument("lambda_for: k must be >= 1");
    if (!(r0 > 0.0)) throw std::invalid_argument("lambda_for: r0 must be > 0");
    if (!(r > 0.0)) throw std::invalid_argument("lambda_for: r must be > 0");
    const double lambda = 1.0 / (4.0 * (k + 2) * std::log(r / r0));
    // guard band: at r = r0 e^{1/(4(k+2))} the exact lambda is 1, but log
    // rounding can land a hair under; reject anything indistinguishable from 1
    if (!(lambda > 0.0 && lambda < 1.0 - 1e-9))
        throw std::domain_error("lambda_for: r too small, schedule requires lambda in (0,1)");
    return lambda;
}

namespace {

// Mass of a unit blob centered at distance d from the origin that lies outside
// the disk of radius r. Rings of the blob with s < |d-r| are entirely on one
// side; rings beyond d+r are entirely outside; in between the outside angular
// fraction is 2*arccos(c)/2pi with c = (r^2 - d^2 - s^2)/(2 s d).
double single_blob_tail(const kernels::Blob& blob, double d, double r) {
    const double lo = std::abs(d - r);
    const double hi = d + r;
    double tail = 1.0 - kernels::gamma(blob, hi);
    if (d > r) tail += kernels::gamma(blob, lo);
    if (d == 0.0) return tail; // band is empty, purely radial geometry

    auto band = [&](double s) {
        const double c = (r * r - d * d - s * s) / (2.0 * s * d);
        if (c <= -1.0) return 2.0 * std::numbers::pi * s * kernels::blob_density(blob, s);
        if (c >= 1.0) return 0.0;
        return 2.0 * std::acos(c) * s * kernels::blob_density(blob, s);
    };
    quadrature::AdaptiveOptions opts;
    opts.rel_tol = 1e-9;
    // Split at the blob scale: the Euler-alpha density has a log singularity
    // at s = 0, which the band touches when d is close to r.
    std::vector<double> brk{lo};
    const double s0 = blob.scale;
    for (double b : {s0, 2.0 * s0, d, r}) {
        if (b > lo && b < hi) brk.push_back(b);
    }
    brk.push_back(hi);
    std::sort(brk.begin(), brk.end());
    tail += quadrature::integrate_segmented(band, brk, opts);
    return tail;
}

} // namespace

double filtered_tail(const ParticleSystem& sys, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("filtered_tail: r must be > 0");
    double sum = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i)
        sum += sys.masses[i] * single_blob_tail(sys.blob, sys.positions[i].norm(), r);
    return sum;
}

double f_r_upper_bound(double t, double r, double lambda, double m0, double c,
                       double c1) {
    const double inv2l = 1.0 / (2.0 * lambda);
    const double prefix = m0 + lambda * r * r + lambda * std::exp(inv2l - c * r);
    return prefix * std::exp(c1 * t / (lambda * lambda * std::pow(r, 4)) - inv2l);
}

std::vector<RadialSpeedSample> radial_speed_profile(const ParticleSystem& sys,
                                                    std::span<const double> radii,
                                                    int n_angles,
                                                    const dynamics::IntegratorConfig& cfg) {
    if (n_angles < 1) throw std::invalid_argument("radial_speed_profile: n_angles must be >= 1");
    const double r_supp = support_radius(sys, 1.0);
    std::vector<RadialSpeedSample> out;
    out.reserve(radii.size());
    std::vector<Vec2> pts(n_angles);
    for (double r : radii) {
        if (!(r > 0.0))
            throw std::invalid_argument("radial_speed_profile: radii must be > 0");
        for (int a = 0; a < n_angles; ++a) {
            const double th = 2.0 * std::numbers::pi * a / n_angles;
            pts[a] = {r * std::cos(th), r * std::sin(th)};
        }
        const auto u = dynamics::velocity_at(sys, pts, cfg);
        double vmax = 0.0;
        for (int a = 0; a < n_angles; ++a)
            vmax = std::max(vmax, std::abs(u[a].dot(pts[a])) / r);
        out.push_back({r, vmax, r <= r_supp});
    }
    return out;
}

DiagnosticsRecord record(const ParticleSystem& sys, const ConfinementParams& params,
                         const DiagnosticsConfig& config) {
    DiagnosticsRecord rec;
    rec.t = sys.time;
    rec.m = moments(sys);
    try {
        rec.filtered_inertia = filtered_inertia(sys);
    } catch (const std::domain_error&) {
        rec.filtered_inertia = std::nullopt;
    }
    rec.r_supp_max = support_radius(sys, 1.0);
    try {
        rec.r_supp_quantile = support_radius(sys, config.support_quantile);
    } catch (const std::exception&) {
        rec.r_supp_quantile = nan_v;
    }
    rec.radial_speed = radial_speed_profile(sys, config.probe_radii, config.n_angles);
    rec.f_r.reserve(config.f_r_radii.size());
    rec.f_r_lambda.reserve(config.f_r_radii.size());
    for (double r : config.f_r_radii) {
        try {
            const double lambda = lambda_for(r, params.r0, params.k);
            rec.f_r_lambda.push_back(lambda);
            rec.f_r.push_back(mass_tail(sys, r, lambda));
        } catch (const std::exception&) {
            rec.f_r_lambda.push_back(nan_v);
            rec.f_r.push_back(nan_v);
        }
    }
    rec.envelope = envelope(sys.time, params);
    return rec;
}

void write_timeseries_csv(std::span<const DiagnosticsRecord> records,
                          const DiagnosticsConfig& config, std::ostream& out) {
    out << "t,mass,center_x,center_y,inertia,filtered_inertia,abs_moment,"
           "r_supp_max,r_supp_q99";
    char buf[64];
    for (double r : config.probe_radii) {
        std::snprintf(buf, sizeof(buf), ",max_radial_speed@%g", r);
        out << buf;
    }
    for (double r : config.f_r_radii) {
        std::snprintf(buf, sizeof(buf), ",f_r@%g", r);
        out << buf;
    }
    out << ",envelope\n";
    for (const DiagnosticsRecord& rec : records) {
        out << csv::num(rec.t) << ',' << csv::num(rec.m.mass) << ','
            << csv::num(rec.m.center.x) << ',' << csv::num(rec.m.center.y) << ','
            << csv::num(rec.m.inertia) << ','
            << csv::num(rec.filtered_inertia.value_or(nan_v)) << ','
            << csv::num(rec.m.abs_moment) << ',' << csv::num(rec.r_supp_max) << ','
            << csv::num(rec.r_supp_quantile);
        for (const RadialSpeedSample& s : rec.radial_speed)
            out << ',' << csv::num(s.max_radial_speed);
        for (double f : rec.f_r) out << ',' << csv::num(f);
        out << ',' << csv::num(rec.envelope) << '\n';
    }
}

} // namespace alphavortex::diagnostics
