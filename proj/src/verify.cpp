#include "alphavortex/verify.hpp"

#include "alphavortex/diagnostics.hpp"
#include "alphavortex/dynamics.hpp"
#include "alphavortex/quadrature.hpp"
#include "alphavortex/runner.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace alphavortex::app::verify {

namespace {

using kernels::Blob;
using kernels::BlobFamily;
using measures::ParticleSystem;

constexpr double pi = std::numbers::pi;

std::string fmt(double measured, const char* rel, double threshold) {
    std::ostringstream os;
    os.precision(6);
    os << "measured " << measured << ' ' << rel << ' ' << threshold;
    return os.str();
}

void check(std::vector<Check>& out, const std::string& name, bool pass,
           const std::string& detail) {
    out.push_back({name, pass, detail});
}

// Quadrature route for gamma, independent of the closed forms.
double gamma_by_quadrature(const Blob& b, double r) {
    if (r == 0.0) return 0.0;
    quadrature::AdaptiveOptions opts;
    opts.rel_tol = 1e-11;
    auto f = [&](double s) { return s * kernels::blob_density(b, s); };
    std::vector<double> brk{0.0};
    if (b.scale < r) brk.push_back(b.scale);
    brk.push_back(r);
    return 2.0 * pi * quadrature::integrate_segmented(f, brk, opts);
}

struct LineFit {
    double slope = 0.0, rms = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    LineFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (f.slope * xs[i] + icpt);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

double radial_slope(const ParticleSystem& sys, double lo, double hi, int threads) {
    std::vector<double> radii;
    for (int i = 0; i <= 10; ++i) radii.push_back(lo * std::pow(hi / lo, i / 10.0));
    dynamics::IntegratorConfig cfg;
    cfg.deterministic_reduction = false;
    cfg.threads = threads;
    const auto prof = diagnostics::radial_speed_profile(sys, radii, 64, cfg);
    std::vector<double> xs, ys;
    for (const auto& s : prof) {
        if (s.max_radial_speed <= 0.0) continue;
        xs.push_back(std::log(s.radius));
        ys.push_back(std::log(s.max_radial_speed));
    }
    if (xs.size() < 3) return 0.0;
    return fit_line(xs, ys).slope;
}

ParticleSystem random_cloud(std::mt19937_64& rng, int count, const Blob& blob) {
    std::uniform_real_distribution<double> upos(-1.0, 1.0), umass(0.2, 1.0);
    std::vector<measures::Atom> atoms;
    atoms.reserve(count);
    while (static_cast<int>(atoms.size()) < count) {
        const Vec2 p{upos(rng), upos(rng)};
        if (p.norm2() <= 1.0) atoms.push_back({p, umass(rng)});
    }
    return measures::from_atoms(
        measures::atom_spec(std::move(atoms), measures::Box{{-2, -2}, {2, 2}}), blob);
}

} // namespace

std::vector<Check> suite_kernels(const Options& opts) {
    std::vector<Check> out;
    const double sign = opts.tamper ? -1.0 : 1.0;

    // closed form vs quadrature, 100 random draws across families
    std::mt19937_64 rng(opts.seed + 1);
    std::uniform_real_distribution<double> uscale(0.05, 1.0), u01(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Blob b{static_cast<BlobFamily>(i % 3), uscale(rng)};
        const double r = 30.0 * b.scale * u01(rng);
        const double closed = sign * kernels::gamma(b, r);
        worst = std::max(worst, std::abs(closed - gamma_by_quadrature(b, r)));
    }
    check(out, "gamma closed form vs quadrature oracle (100 draws)", worst <= 1e-8,
          fmt(worst, "<=", 1e-8));

    // normalization: gamma -> 1 at the far cutoff
    for (const auto fam : {BlobFamily::EulerAlpha, BlobFamily::Gaussian}) {
        double defect = 0.0;
        for (double s : {0.05, 0.1, 1.0}) {
            const Blob b{fam, s};
            defect = std::max(defect,
                              std::abs(sign * gamma_by_quadrature(b, 50.0 * s) - 1.0));
        }
        check(out, std::string("normalization defect, ") + kernels::family_name(fam),
              defect <= 1e-6, fmt(defect, "<=", 1e-6));
    }
    {
        double defect = 0.0;
        for (double s : {0.05, 0.1, 1.0})
            defect = std::max(defect, std::abs(sign * gamma_by_quadrature(
                                                          Blob{BlobFamily::Krasny, s},
                                                          1000.0 * s) -
                                               1.0));
        check(out, "normalization defect, krasny (algebraic tail, R=1000 scale)",
              defect <= 1e-3, fmt(defect, "<=", 1e-3));
    }

    // gamma bounds on a log grid
    {
        bool ok = true;
        double bad = 0.0;
        for (int fam = 0; fam < 3; ++fam) {
            const Blob b{static_cast<BlobFamily>(fam), 0.3};
            for (int i = 1; i <= 200; ++i) {
                const double r = 0.3 * 1e-5 * std::pow(1e7, i / 200.0);
                const double g = sign * kernels::gamma(b, r);
                if (!(g > 0.0 && g <= 1.0)) {
                    ok = false;
                    bad = g;
                }
            }
        }
        check(out, "gamma in (0,1] for r > 0", ok, fmt(bad, "in", 1.0));
    }

    // Lemma 2.1 item 1: sup gamma/r attained in the interior
    {
        const Blob b{BlobFamily::EulerAlpha, 1.0};
        double best = 0.0, argmax = 0.0;
        for (int i = 1; i <= 20000; ++i) {
            const double r = 100.0 * i / 20000.0;
            const double v = sign * kernels::gamma(b, r) / r;
            if (v > best) {
                best = v;
                argmax = r;
            }
        }
        check(out, "lemma 2.1(1): sup gamma/r interior and ~0.3993/alpha",
              argmax > 0.01 && argmax < 99.0 && std::abs(best - 0.3993) < 2e-3,
              fmt(best, "~", 0.3993));
    }

    // Lemma 2.1 item 2: exponential tail slope
    {
        const Blob b{BlobFamily::EulerAlpha, 0.1};
        std::vector<double> xs, ys;
        for (int i = 0; i <= 240; ++i) {
            const double r = 0.5 + 2.5 * i / 240.0;
            const double t = 1.0 - sign * kernels::gamma(b, r);
            if (t > 0.0) {
                xs.push_back(r);
                ys.push_back(std::log(t));
            }
        }
        const double slope = xs.size() >= 4 ? fit_line(xs, ys).slope : 1.0;
        check(out, "lemma 2.1(2): log(1-gamma) slope <= -1/(2 alpha)", slope <= -5.0,
              fmt(slope, "<=", -5.0));
    }

    // tangentiality and antisymmetry of the regularized kernel
    {
        const Blob b{BlobFamily::EulerAlpha, 0.25};
        std::mt19937_64 rng2(opts.seed + 2);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        double worst_dot = 0.0;
        bool antisym = true;
        for (int i = 0; i < 1000; ++i) {
            const Vec2 x{u(rng2), u(rng2)};
            const Vec2 k = sign * kernels::k_reg(b, x);
            const Vec2 km = sign * kernels::k_reg(b, -x);
            antisym = antisym && km.x == -k.x && km.y == -k.y;
            const double scale = x.norm() * k.norm();
            if (scale > 0.0) worst_dot = std::max(worst_dot, std::abs(x.dot(k)) / scale);
        }
        check(out, "k_reg tangential (|x.k| / |x||k| at one-ulp level)",
              worst_dot <= 4.4e-16, fmt(worst_dot, "<=", 4.4e-16));
        check(out, "k_reg antisymmetric bit-exactly", antisym, "k(-x) == -k(x)");
    }
    return out;
}

std::vector<Check> suite_conservation(const Options& opts) {
    std::vector<Check> out;
    std::mt19937_64 rng(opts.seed);
    const Blob blob{BlobFamily::EulerAlpha, 0.1};
    ParticleSystem sys = random_cloud(rng, 50, blob);

    // rhs identities at the initial state
    dynamics::IntegratorConfig icfg;
    icfg.deterministic_reduction = true;
    const auto v = dynamics::rhs(sys, icfg);
    double px = 0, py = 0, xdot = 0, vmax = 0, msum = 0, iscale = 0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        px += sys.masses[i] * v[i].x;
        py += sys.masses[i] * v[i].y;
        xdot += sys.masses[i] * sys.positions[i].dot(v[i]);
        vmax = std::max(vmax, v[i].norm());
        msum += std::abs(sys.masses[i]);
        iscale += std::abs(sys.masses[i]) * sys.positions[i].norm() * v[i].norm();
    }
    check(out, "momentum identity |sum m rhs|", std::hypot(px, py) <= 1e-12 * msum * vmax,
          fmt(std::hypot(px, py), "<=", 1e-12 * msum * vmax));
    check(out, "inertia identity |sum m X.rhs|", std::abs(xdot) <= 1e-12 * iscale,
          fmt(std::abs(xdot), "<=", 1e-12 * iscale));

    // 50-particle run to t=1: drift thresholds from the dt^4 scaling study
    icfg.dt = dynamics::default_dt(sys, icfg);
    icfg.t_end = 1.0;
    icfg.dt = 1.0 / std::ceil(1.0 / icfg.dt);
    const auto m0 = diagnostics::moments(sys);
    const auto run = dynamics::simulate(sys, icfg, 1 << 20);
    check(out, "run completed", run.completed, run.completed ? "ok" : run.error);
    if (run.completed) {
        const auto m1 = diagnostics::moments(run.trajectory.snapshots.back());
        const double dm = std::abs(m1.mass - m0.mass);
        const double dz = (m1.center - m0.center).norm() / (m0.mass * 1.0);
        const double di = std::abs(m1.inertia - m0.inertia) / m0.inertia;
        check(out, "mass drift exactly zero", dm == 0.0, fmt(dm, "==", 0.0));
        check(out, "center drift (linear invariant, rounding floor)", dz <= 1e-10,
              fmt(dz, "<=", 1e-10));
        check(out, "inertia relative drift", di <= 1e-7, fmt(di, "<=", 1e-7));
    }
    return out;
}

std::vector<Check> suite_decay(const Options& opts) {
    std::vector<Check> out;
    const Blob blob{BlobFamily::EulerAlpha, 0.1};
    const measures::Box box{{-50, -50}, {50, 50}};

    // single blob at the origin: purely tangential velocity field
    {
        const auto sys = measures::from_atoms(
            measures::atom_spec({{{0.0, 0.0}, 1.0}}, box), blob);
        const double radii[] = {5.0, 20.0};
        const auto prof = diagnostics::radial_speed_profile(sys, radii, 32);
        const double w = std::max(prof[0].max_radial_speed, prof[1].max_radial_speed);
        check(out, "origin blob: |u_r| = 0", w <= 1e-15, fmt(w, "<=", 1e-15));
    }

    // centered pair: quadrupole decay r^-3
    {
        const auto sys = measures::from_atoms(
            measures::atom_spec({{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}}, box), blob);
        const double slope = radial_slope(sys, 10.0, 40.0, opts.threads);
        check(out, "centered pair: radial decay slope <= -2.8", slope <= -2.8,
              fmt(slope, "<=", -2.8));
    }

    // off-center atom: dipole decay r^-2 (why recentering matters)
    {
        const auto sys = measures::from_atoms(
            measures::atom_spec({{{1.0, 0.0}, 1.0}}, box), blob);
        const double slope = radial_slope(sys, 10.0, 40.0, opts.threads);
        check(out, "uncentered atom: dipole slope ~ -2", slope > -2.3 && slope < -1.8,
              fmt(slope, "~", -2.0));
    }

    // recentered two-patch preset: the acceptance-style far-field measurement
    {
        SimConfig cfg = preset("two-patch");
        const auto sys = build_initial_system(cfg);
        const double rs = diagnostics::support_radius(sys, 1.0);
        const double slope = radial_slope(sys, 10.0 * rs, 40.0 * rs, opts.threads);
        check(out, "two-patch preset: radial decay slope <= -2.8", slope <= -2.8,
              fmt(slope, "<=", -2.8));
    }
    return out;
}

std::vector<Check> suite_tail(const Options& opts) {
    std::vector<Check> out;
    const Blob blob{BlobFamily::EulerAlpha, 0.1};

    // half-mass lower bound on 100 random draws
    {
        std::mt19937_64 rng(opts.seed + 7);
        std::uniform_real_distribution<double> ur(0.5, 3.0), ul(0.05, 0.95);
        bool ok = true;
        double margin = 1e300;
        for (int trial = 0; trial < 100; ++trial) {
            const ParticleSystem sys = random_cloud(rng, 30, blob);
            const double r = ur(rng), l = ul(rng);
            double outside = 0.0;
            for (std::size_t i = 0; i < sys.size(); ++i)
                if (sys.positions[i].norm() > r) outside += sys.masses[i];
            const double f = diagnostics::mass_tail(sys, r, l);
            ok = ok && 0.5 * outside <= f;
            margin = std::min(margin, f - 0.5 * outside);
        }
        check(out, "half-mass bound (1/2) m(>r) <= f_r (100 draws)", ok,
              fmt(margin, ">=", 0.0));
    }

    // initial smallness: f_r(0) <= m0 exp(-1/(2 lambda)) for r > 2 R0
    {
        SimConfig cfg = preset("disk-patch");
        const auto sys = build_initial_system(cfg);
        const double r0 = diagnostics::support_radius(sys, 1.0);
        const double m0 = sys.total_mass();
        bool ok = true;
        double worst = 0.0;
        for (double r : cfg.diag.f_r_radii) {
            if (r <= 2.0 * r0) continue;
            const double lambda = diagnostics::lambda_for(r, r0, cfg.diag.k);
            const double f = diagnostics::mass_tail(sys, r, lambda);
            const double bound = m0 * std::exp(-0.5 / lambda);
            ok = ok && f <= bound;
            worst = std::max(worst, f - bound);
        }
        check(out, "initial tail smallness f_r(0) <= m0 e^{-1/(2 lambda)}", ok,
              fmt(worst, "<=", 0.0));
    }

    // filtered tail: Gaussian closed form and additivity
    {
        const Blob ga{BlobFamily::Gaussian, 0.5};
        const measures::Box box{{-5, -5}, {5, 5}};
        const auto one = measures::from_atoms(
            measures::atom_spec({{{0.0, 0.0}, 1.0}}, box), ga);
        const double t = diagnostics::filtered_tail(one, 1.0);
        const double exact = std::exp(-4.0);
        check(out, "filtered tail of a unit Gaussian blob = e^{-(r/eps)^2}",
              std::abs(t - exact) <= 1e-9, fmt(std::abs(t - exact), "<=", 1e-9));

        const auto a = measures::from_atoms(
            measures::atom_spec({{{0.4, 0.2}, 1.5}}, box), ga);
        const auto b = measures::from_atoms(
            measures::atom_spec({{{-0.3, 0.6}, 0.8}}, box), ga);
        const auto ab = measures::from_atoms(
            measures::atom_spec({{{0.4, 0.2}, 1.5}, {{-0.3, 0.6}, 0.8}}, box), ga);
        const double lhs = diagnostics::filtered_tail(ab, 1.2);
        const double rhs = diagnostics::filtered_tail(a, 1.2) +
                           diagnostics::filtered_tail(b, 1.2);
        check(out, "filtered tail additivity", std::abs(lhs - rhs) <= 1e-12 * rhs,
              fmt(std::abs(lhs - rhs), "<=", 1e-12 * rhs));
    }

    // exponential domination when all mass sits inside r/2
    {
        const measures::Box box{{-5, -5}, {5, 5}};
        const auto sys = measures::from_atoms(
            measures::atom_spec(
                {{{0.5, 0.0}, 1.0}, {{-0.3, 0.2}, 0.5}, {{0.0, -0.4}, 0.8}}, box),
            blob);
        std::vector<double> rs, logs;
        for (double r = 1.5; r <= 3.01; r += 0.25) {
            rs.push_back(r);
            logs.push_back(std::log(diagnostics::filtered_tail(sys, r)));
        }
        const double c2 = -fit_line(rs, logs).slope;
        check(out, "filtered tail decays exponentially (rate >= 1/(2 alpha))",
              c2 >= 5.0, fmt(c2, ">=", 5.0));
    }
    return out;
}

std::vector<std::string> suite_names() {
    return {"kernels", "conservation", "decay", "tail"};
}

std::vector<Check> run_suite(const std::string& name, const Options& opts) {
    if (name == "kernels") return suite_kernels(opts);
    if (name == "conservation") return suite_conservation(opts);
    if (name == "decay") return suite_decay(opts);
    if (name == "tail") return suite_tail(opts);
    throw std::invalid_argument("unknown verify suite '" + name + "'");
}

int report(const std::vector<Check>& checks, std::ostream& out) {
    int failures = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << ": " << c.name << " (" << c.detail << ")\n";
        if (!c.pass) ++failures;
    }
    out << (failures == 0 ? "all checks passed" : "checks FAILED") << " ("
        << checks.size() - failures << "/" << checks.size() << ")\n";
    return failures == 0 ? 0 : 1;
}

} // namespace alphavortex::app::verify
