/// Moments, filtered quantities, support radii, the eta/f_r/lambda confinement
/// machinery, radial decay of the far field, and time-series assembly.

#include "alphavortex/diagnostics.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace alphavortex;
using namespace alphavortex::measures;
using namespace alphavortex::diagnostics;

namespace {

constexpr double pi = std::numbers::pi;
const kernels::Blob ea01{kernels::BlobFamily::EulerAlpha, 0.1};
const Box big_box{{-50, -50}, {50, 50}};

ParticleSystem atoms_sys(std::vector<Atom> atoms, const kernels::Blob& b = ea01) {
    return from_atoms(atom_spec(std::move(atoms), big_box), b);
}

VorticitySpec unit_disk() {
    Profile p;
    p.type = Profile::Type::UniformDisk;
    p.radius = 1.0;
    p.amplitude = 1.0;
    return analytic_spec(p, Box{{-1.5, -1.5}, {1.5, 1.5}});
}

double loglog_slope(const std::vector<RadialSpeedSample>& prof) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& s : prof) {
        if (s.max_radial_speed <= 0.0) continue;
        const double lx = std::log(s.radius), ly = std::log(s.max_radial_speed);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("moments: atom examples and discretized disk") {
    const auto m2 = moments(atoms_sys({{{1, 0}, 1.0}, {{-1, 0}, 1.0}}));
    CHECK(m2.mass == 2.0);
    CHECK(m2.center.x == 0.0);
    CHECK(m2.center.y == 0.0);
    CHECK(m2.inertia == 2.0);
    CHECK(m2.abs_moment == 2.0);

    const double a = 0.8, b = -1.2, m = 2.5;
    const auto m1 = moments(atoms_sys({{{a, b}, m}}));
    CHECK(m1.center.x == doctest::Approx(m * a).epsilon(1e-15));
    CHECK(m1.center.y == doctest::Approx(m * b).epsilon(1e-15));
    CHECK(m1.inertia == doctest::Approx(m * (a * a + b * b)).epsilon(1e-15));

    const auto md = moments(discretize(unit_disk(), 64, ea01));
    CHECK(std::abs(md.mass - pi) < 1e-3);
    CHECK(std::abs(md.inertia - pi / 2.0) < 1e-2);
}

TEST_CASE("first absolute moment bound: sum m|X| <= (m0+i0)/2 for nonnegative systems") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> up(-3.0, 3.0), um(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Atom> atoms;
        for (int i = 0; i < 40; ++i) atoms.push_back({{up(rng), up(rng)}, um(rng)});
        const auto m = moments(atoms_sys(std::move(atoms)));
        CHECK(m.abs_moment <= 0.5 * (m.mass + m.inertia) * (1.0 + 1e-15));
    }
}

TEST_CASE("filtered_inertia: closed identities per family") {
    const ParticleSystem sys = atoms_sys({{{1, 0}, 1.0}, {{0, 2}, 0.5}});
    const auto m = moments(sys);
    CHECK(filtered_inertia(sys) ==
          doctest::Approx(m.inertia + 4.0 * 0.1 * 0.1 * m.mass).epsilon(1e-15));

    const kernels::Blob ga{kernels::BlobFamily::Gaussian, 0.3};
    const ParticleSystem gauss = atoms_sys({{{0, 0}, 1.0}}, ga);
    CHECK(filtered_inertia(gauss) == doctest::Approx(0.09).epsilon(1e-15));

    const kernels::Blob kr{kernels::BlobFamily::Krasny, 0.3};
    const ParticleSystem krasny = atoms_sys({{{0, 0}, 1.0}}, kr);
    CHECK_THROWS_AS((void)filtered_inertia(krasny), std::domain_error);
}

TEST_CASE("filtered_inertia: 2D quadrature cross-check of the filtered field") {
    // int |x|^2 sum_j m_j G_a(x - X_j) dx over a box capturing the tails
    const kernels::Blob ea{kernels::BlobFamily::EulerAlpha, 0.2};
    const ParticleSystem sys = atoms_sys({{{0.3, 0.1}, 1.0}, {{-0.4, 0.2}, 0.7}}, ea);
    auto field = [&](Vec2 x) {
        double v = 0.0;
        for (std::size_t j = 0; j < sys.size(); ++j) {
            const double r = (x - sys.positions[j]).norm();
            v += sys.masses[j] * (r == 0.0 ? 0.0 : kernels::blob_density(ea, r));
        }
        return x.norm2() * v;
    };
    const Box box{{-4.5, -4.5}, {4.5, 4.5}};
    const double quad = oracle::box_integral(field, box, 1e-6);
    CHECK(quad == doctest::Approx(filtered_inertia(sys)).epsilon(1e-4));
}

TEST_CASE("support_radius: max and quantile variants") {
    const ParticleSystem two = atoms_sys({{{1, 0}, 1.0}, {{-1, 0}, 1.0}});
    CHECK(support_radius(two, 1.0) == 1.0);

    const ParticleSystem lop = atoms_sys({{{0.1, 0}, 1.0}, {{5, 0}, 1.0}});
    CHECK(support_radius(lop, 0.5) == 0.1);

    const ParticleSystem disk = discretize(unit_disk(), 64, ea01);
    CHECK(support_radius(disk, 1.0) == doctest::Approx(1.0).epsilon(0.012));

    CHECK_THROWS_AS((void)support_radius(two, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)support_radius(two, 1.2), std::invalid_argument);
    const ParticleSystem signed_sys = atoms_sys({{{1, 0}, 1.0}, {{-1, 0}, -0.5}});
    CHECK_THROWS_AS((void)support_radius(signed_sys, 0.5), std::domain_error);
    CHECK(support_radius(signed_sys, 1.0) == 1.0); // max variant is sign-blind
}

TEST_CASE("envelope: anchor values and monotonicity") {
    const ConfinementParams p{1.3, 0.7, 6};
    CHECK(envelope(0.0, p) == doctest::Approx(8.0 * 1.3).epsilon(1e-15));
    const double t = std::numbers::e - 2.0; // log(2+t) = 1
    CHECK(envelope(t, p) ==
          doctest::Approx(8.0 * 1.3 + 0.7 * std::pow(t, 0.25)).epsilon(1e-14));
    double prev = envelope(0.0, p);
    for (double tt = 0.5; tt < 60.0; tt += 0.5) {
        const double e = envelope(tt, p);
        CHECK(e >= prev);
        prev = e;
    }
    CHECK_THROWS_AS((void)envelope(-0.1, p), std::domain_error);
}

TEST_CASE("eta: logistic values, asymptotics, derivative bounds") {
    CHECK(eta(0.0) == 0.5);
    CHECK(eta(40.0) >= 1.0 - 1e-17);
    CHECK(eta(-40.0) <= 1e-17);
    CHECK(eta(800.0) == 1.0); // no overflow
    CHECK(eta(-800.0) == 0.0);

    // finite-difference checks of 0 < eta' <= min{eta, e^-|s|}, |eta''| <= eta.
    // Differencing values near 1 costs eps/2h (first) and 4 eps/h^2 (second)
    // of absolute noise; those floors sit alongside the 1e-6 tolerance.
    const double h = 1e-3, tol = 1e-6;
    const double fd1_floor = 1.2e-13, fd2_floor = 1e-9;
    for (int i = 0; i <= 400; ++i) {
        const double s = -20.0 + 40.0 * i / 400.0;
        const double e0 = eta(s);
        const double d1 = (eta(s + h) - eta(s - h)) / (2.0 * h);
        const double d2 = (eta(s + h) - 2.0 * e0 + eta(s - h)) / (h * h);
        CHECK(d1 > 0.0);
        CHECK(d1 <= std::min(e0, std::exp(-std::abs(s))) * (1.0 + tol) + fd1_floor);
        CHECK(std::abs(d2) <= e0 * (1.0 + tol) + fd2_floor);
    }
}

TEST_CASE("mass_tail: formula anchors and the half-mass lower bound") {
    const double lambda = 0.25;
    const ParticleSystem org = atoms_sys({{{0, 0}, 2.0}});
    CHECK(mass_tail(org, 1.0, lambda) ==
          doctest::Approx(2.0 * eta(-1.0 / lambda)).epsilon(1e-14));

    // a unit atom exactly on the circle |X| = r contributes eta(0) = 1/2
    const ParticleSystem rim = atoms_sys({{{3.0, 0.0}, 1.0}});
    CHECK(mass_tail(rim, 3.0, lambda) == 0.5);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> up(-4.0, 4.0), um(0.0, 1.0), ur(0.5, 3.0),
        ul(0.05, 0.95);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Atom> atoms;
        for (int i = 0; i < 30; ++i) atoms.push_back({{up(rng), up(rng)}, um(rng)});
        const ParticleSystem sys = atoms_sys(std::move(atoms));
        const double r = ur(rng), l = ul(rng);
        double outside = 0.0;
        for (std::size_t i = 0; i < sys.size(); ++i)
            if (sys.positions[i].norm() > r) outside += sys.masses[i];
        const double f = mass_tail(sys, r, l);
        CHECK(0.5 * outside <= f);
        if (outside > 0.0) CHECK(0.5 * outside < f);
    }

    CHECK_THROWS_AS((void)mass_tail(org, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)mass_tail(org, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)mass_tail(org, -1.0, 0.5), std::invalid_argument);
    const ParticleSystem neg = atoms_sys({{{1, 0}, -1.0}});
    CHECK_THROWS_AS((void)mass_tail(neg, 1.0, 0.5), std::domain_error);
}

TEST_CASE("lambda_for: schedule values, monotonicity, domain") {
    const double r0 = 0.8;
    CHECK(lambda_for(r0 * std::numbers::e, r0, 6) ==
          doctest::Approx(1.0 / 32.0).epsilon(1e-14));

    double prev = 1.0;
    for (double r = 2.0 * r0; r < 40.0 * r0; r *= 1.5) {
        const double l = lambda_for(r, r0, 6);
        CHECK(l < prev);
        prev = l;
    }
    CHECK(lambda_for(10.0 * r0, r0, 8) < lambda_for(10.0 * r0, r0, 6));

    // boundary r = r0 e^{1/(4(k+2))} gives lambda = 1: rejected
    const double edge = r0 * std::exp(1.0 / 32.0);
    CHECK_THROWS_AS((void)lambda_for(edge, r0, 6), std::domain_error);
    CHECK_THROWS_AS((void)lambda_for(0.5 * r0, r0, 6), std::domain_error);
    CHECK_THROWS_AS((void)lambda_for(2.0, r0, 0), std::invalid_argument);
}

TEST_CASE("filtered_tail: closed forms, additivity, consistency") {
    // unit Gaussian blob at the origin: tail = exp(-(r/eps)^2)
    const kernels::Blob ga{kernels::BlobFamily::Gaussian, 0.5};
    const ParticleSystem gsys = atoms_sys({{{0, 0}, 1.0}}, ga);
    for (double r : {0.5, 1.0, 2.0}) {
        const double z = r / 0.5;
        CHECK(filtered_tail(gsys, r) == doctest::Approx(std::exp(-z * z)).epsilon(1e-9));
    }

    // Euler-alpha blob at the origin: tail = 1 - gamma(r)
    const ParticleSystem esys = atoms_sys({{{0, 0}, 1.0}});
    for (double r : {0.2, 0.5})
        CHECK(filtered_tail(esys, r) ==
              doctest::Approx(1.0 - kernels::gamma(ea01, r)).epsilon(1e-9));

    // additivity (linearity in the measure)
    const ParticleSystem a = atoms_sys({{{0.4, 0.2}, 1.5}}, ga);
    const ParticleSystem b = atoms_sys({{{-0.3, 0.6}, 0.8}}, ga);
    const ParticleSystem ab =
        atoms_sys({{{0.4, 0.2}, 1.5}, {{-0.3, 0.6}, 0.8}}, ga);
    CHECK(filtered_tail(ab, 1.2) ==
          doctest::Approx(filtered_tail(a, 1.2) + filtered_tail(b, 1.2)).epsilon(1e-12));

    // off-center blob against a brute polar-grid reduction
    const ParticleSystem off = atoms_sys({{{0.7, 0.4}, 2.0}}, ga);
    const double d = Vec2{0.7, 0.4}.norm(), r = 1.5;
    double brute = 0.0;
    const int ns = 4000, na = 1024;
    const double smax = d + r + 10.0 * 0.5;
    for (int i = 0; i < ns; ++i) {
        const double s = smax * (i + 0.5) / ns;
        int outside = 0;
        for (int j = 0; j < na; ++j) {
            const double th = 2.0 * pi * (j + 0.5) / na;
            const double x = d + s * std::cos(th), y = s * std::sin(th);
            if (x * x + y * y > r * r) ++outside;
        }
        brute += s * kernels::blob_density(ga, s) * (2.0 * pi * outside / na);
    }
    brute *= 2.0 * (smax / ns);
    CHECK(filtered_tail(off, r) == doctest::Approx(brute).epsilon(1e-3));
}

TEST_CASE("filtered_tail: exponentially small when the blobs sit inside r/2") {
    // system contained in |y| <= 0.5 with r sweeping [1.5, 3]: the unfiltered
    // mass outside r/2 is identically zero, so the paper's transfer inequality
    // is carried entirely by the exponential term. Fit log(tail) ~ -c2 r and
    // check the rate matches the blob scale.
    const ParticleSystem sys =
        atoms_sys({{{0.5, 0.0}, 1.0}, {{-0.3, 0.2}, 0.5}, {{0.0, -0.4}, 0.8}});
    std::vector<double> rs, logs;
    for (double r = 1.5; r <= 3.01; r += 0.25) {
        for (std::size_t i = 0; i < sys.size(); ++i)
            CHECK(sys.positions[i].norm() <= 0.5 * r);
        const double t = filtered_tail(sys, r);
        CHECK(t > 0.0);
        rs.push_back(r);
        logs.push_back(std::log(t));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        sx += rs[i];
        sy += logs[i];
        sxx += rs[i] * rs[i];
        sxy += rs[i] * logs[i];
    }
    const double c2 = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(c2 > 0.5 / ea01.scale); // decay at least e^{-r/(2 alpha)}
    // every sample sits under the fitted envelope c1 (1+r) m0 e^{-c2 r}
    const double icpt = (sy + c2 * sx) / n;
    const double m0 = sys.total_mass();
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double bound = std::exp(icpt) * (1.0 + rs[i]) * m0 * std::exp(-c2 * rs[i]);
        CHECK(std::exp(logs[i]) <= bound * 1.05);
    }
}

TEST_CASE("radial_speed_profile: tangential monopole, quadrupole decay, dipole hazard") {
    std::vector<double> radii;
    for (int i = 0; i <= 12; ++i) radii.push_back(10.0 * std::pow(4.0, i / 12.0));

    // single atom at the origin: the field is purely tangential
    const auto prof0 = radial_speed_profile(atoms_sys({{{0, 0}, 1.0}}), radii, 32);
    for (const auto& s : prof0) CHECK(s.max_radial_speed < 1e-15);

    // centered two-atom system (zero dipole): measured slope -2.9999
    const auto prof2 =
        radial_speed_profile(atoms_sys({{{1, 0}, 1.0}, {{-1, 0}, 1.0}}), radii, 64);
    CHECK(loglog_slope(prof2) <= -3.0 + 0.2);
    for (const auto& s : prof2) CHECK_FALSE(s.inside_support);

    // uncentered single atom at (1,0): dipole term, slope ~ -2 (measured -2.007)
    const auto prof1 = radial_speed_profile(atoms_sys({{{1, 0}, 1.0}}), radii, 64);
    const double s1 = loglog_slope(prof1);
    CHECK(s1 > -2.3);
    CHECK(s1 < -1.8);

    // probe inside the support is flagged
    const double small[] = {0.5, 10.0};
    const auto profi =
        radial_speed_profile(atoms_sys({{{1, 0}, 1.0}, {{-1, 0}, 1.0}}), small, 16);
    CHECK(profi[0].inside_support);
    CHECK_FALSE(profi[1].inside_support);
}

TEST_CASE("record: assembly, initial-tail smallness, flagged failures") {
    ParticleSystem disk = recenter(discretize(unit_disk(), 16, ea01));
    const double r0 = support_radius(disk, 1.0);
    const ConfinementParams params{r0, 0.5, 6};
    DiagnosticsConfig cfg;
    cfg.probe_radii = {15.0, 30.0};
    cfg.f_r_radii = {2.5, 3.0, 4.0};
    cfg.record_stride = 1;

    const DiagnosticsRecord rec = record(disk, params, cfg);
    CHECK(rec.t == 0.0);
    CHECK(rec.r_supp_max <= r0 * (1.0 + 1e-15));
    CHECK(rec.envelope == doctest::Approx(8.0 * r0).epsilon(1e-15));
    const auto m = moments(disk);
    CHECK(rec.m.mass == m.mass);
    CHECK(rec.m.inertia == m.inertia);
    REQUIRE(rec.f_r.size() == 3);
    for (std::size_t i = 0; i < rec.f_r.size(); ++i) {
        // r > 2 R0: f_r(0) <= m0 e^{-1/(2 lambda)}
        CHECK(cfg.f_r_radii[i] > 2.0 * r0);
        CHECK(rec.f_r[i] <= m.mass * std::exp(-0.5 / rec.f_r_lambda[i]));
    }

    // Krasny blob: filtered inertia flagged missing, nothing throws
    ParticleSystem kr = disk;
    kr.blob = kernels::Blob{kernels::BlobFamily::Krasny, 0.1};
    const DiagnosticsRecord krec = record(kr, params, cfg);
    CHECK_FALSE(krec.filtered_inertia.has_value());

    // too-small f_r radius: lambda invalid, NaN field
    DiagnosticsConfig bad = cfg;
    bad.f_r_radii = {r0 * 1.001};
    const DiagnosticsRecord brec = record(disk, params, bad);
    CHECK(std::isnan(brec.f_r[0]));
}

TEST_CASE("record: row count over a completed run") {
    const ParticleSystem pair =
        atoms_sys({{{0.5, 0}, 1.0}, {{-0.5, 0}, 1.0}});
    dynamics::IntegratorConfig icfg;
    icfg.dt = 0.05;
    icfg.t_end = 1.0; // 20 steps
    const ConfinementParams params{1.0, 0.5, 6};
    DiagnosticsConfig dcfg;
    dcfg.f_r_radii = {3.0};
    dcfg.record_stride = 4;
    std::vector<DiagnosticsRecord> rows;
    const auto out = dynamics::simulate(pair, icfg, dcfg.record_stride,
                                        [&](const ParticleSystem& s) {
                                            rows.push_back(record(s, params, dcfg));
                                        });
    REQUIRE(out.completed);
    CHECK(rows.size() == static_cast<std::size_t>(1.0 / (0.05 * 4)) + 1);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].t > rows[i - 1].t);
}

TEST_CASE("timeseries CSV: header matches the configured radii") {
    const ParticleSystem sys = atoms_sys({{{0.2, 0}, 1.0}, {{-0.2, 0}, 1.0}});
    const ConfinementParams params{0.2, 0.5, 6};
    DiagnosticsConfig cfg;
    cfg.probe_radii = {5.0, 10.0};
    cfg.f_r_radii = {1.5};
    const DiagnosticsRecord rec = record(sys, params, cfg);
    std::ostringstream os;
    write_timeseries_csv(std::span{&rec, 1}, cfg, os);
    const std::string s = os.str();
    CHECK(s.find("t,mass,center_x,center_y,inertia,filtered_inertia,abs_moment,"
                 "r_supp_max,r_supp_q99,max_radial_speed@5,max_radial_speed@10,"
                 "f_r@1.5,envelope\n") == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 2);
}

TEST_CASE("f_r upper-bound overlay evaluates the paper-shaped formula") {
    // purely a smoke check: finite, positive, decaying in r
    const double v1 = f_r_upper_bound(1.0, 4.0, 0.1, 3.0, 1.0, 2.0);
    const double v2 = f_r_upper_bound(1.0, 8.0, 0.1, 3.0, 1.0, 2.0);
    CHECK(v1 > 0.0);
    CHECK(std::isfinite(v1));
    CHECK(v2 < v1);
}
