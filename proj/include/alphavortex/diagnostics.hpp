#pragma once

#include "alphavortex/dynamics.hpp"
#include "alphavortex/measures.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace alphavortex::diagnostics {

using measures::ParticleSystem;

/// Low moments of the discrete vorticity measure: mass, (unnormalized) center
/// of mass, moment of inertia, and the first absolute moment sum m_i |X_i|.
struct Moments {
    double mass = 0.0;
    Vec2 center{0.0, 0.0};
    double inertia = 0.0;
    double abs_moment = 0.0;

    Vec2 centroid() const { return {center.x / mass, center.y / mass}; }
};

Moments moments(const ParticleSystem& sys);

/// Moment of inertia of the blob-filtered field: i0 + (blob second moment)*m0.
/// For the Euler-alpha blob this is exactly i0 + 4 alpha^2 m0. Throws
/// std::domain_error for the Krasny blob (divergent second moment).
double filtered_inertia(const ParticleSystem& sys);

/// Radius about the origin containing the given mass fraction; quantile 1 is
/// max_i |X_i|. Quantiles below 1 require nonnegative masses. The system is
/// expected to be recentered.
double support_radius(const ParticleSystem& sys, double quantile);

struct ConfinementParams {
    double r0 = 1.0; // initial support radius about the origin
    double c = 1.0;  // fitted envelope constant
    int k = 6;       // tail exponent of the lambda schedule
};

/// Confinement envelope R(t) = 8 r0 + c [t ln(2+t)]^{1/4}.
double envelope(double t, const ConfinementParams& p);

/// Logistic cutoff e^s/(e^s+1), overflow-safe for large |s|.
double eta(double s);

/// Smoothed mass outside radius r: sum m_i eta((|X_i|^2 - r^2)/(lambda r^2)).
/// Requires r > 0, lambda in (0,1), nonnegative masses. Dominates half the
/// mass strictly outside r.
double mass_tail(const ParticleSystem& sys, double r, double lambda);

/// The schedule lambda = [4(k+2) ln(r/r0)]^{-1}; requires k >= 1 and r large
/// enough that lambda < 1, i.e. r > r0 e^{1/(4(k+2))}.
double lambda_for(double r, double r0, int k);

/// Mass of the blob-filtered field outside radius r, by per-particle radial
/// quadrature (one 1D integral per particle over the partially covered band,
/// plus closed-form gamma terms for the fully inside/outside rings).
double filtered_tail(const ParticleSystem& sys, double r);

/// Paper-shaped upper bound for f_r with caller-supplied constants; exposed
/// as an overlay only, nothing is asserted against it.
double f_r_upper_bound(double t, double r, double lambda, double m0, double c,
                       double c1);

struct RadialSpeedSample {
    double radius = 0.0;
    double max_radial_speed = 0.0;
    bool inside_support = false; // probe radius does not clear the support
};

/// Max over n_angles equispaced points on each circle |x| = r of |u . x/|x||.
/// Meaningful for recentered systems; radii inside the support are flagged.
std::vector<RadialSpeedSample> radial_speed_profile(const ParticleSystem& sys,
                                                    std::span<const double> radii,
                                                    int n_angles,
                                                    const dynamics::IntegratorConfig& cfg = {});

struct DiagnosticsConfig {
    std::vector<double> probe_radii; // radial-speed circles
    std::vector<double> f_r_radii;   // mass-tail functional radii
    int k = 6;
    int n_angles = 64;
    double support_quantile = 0.99;
    int record_stride = 1;
};

/// One time-series row. Component failures (Krasny filtered inertia, invalid
/// lambda, signed masses) surface as missing/NaN fields, never as exceptions.
struct DiagnosticsRecord {
    double t = 0.0;
    Moments m;
    std::optional<double> filtered_inertia;
    double r_supp_max = 0.0;
    double r_supp_quantile = 0.0;
    std::vector<RadialSpeedSample> radial_speed;
    std::vector<double> f_r;        // NaN where lambda_for rejects the radius
    std::vector<double> f_r_lambda; // the lambda used per radius (NaN if invalid)
    double envelope = 0.0;
};

DiagnosticsRecord record(const ParticleSystem& sys, const ConfinementParams& params,
                         const DiagnosticsConfig& config);

/// Time-series CSV: t,mass,center_x,center_y,inertia,filtered_inertia,
/// abs_moment,r_supp_max,r_supp_q99,max_radial_speed@r...,f_r@r...,envelope
void write_timeseries_csv(std::span<const DiagnosticsRecord> records,
                          const DiagnosticsConfig& config, std::ostream& out);

} // namespace alphavortex::diagnostics
