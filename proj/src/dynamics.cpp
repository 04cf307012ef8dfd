#include "alphavortex/dynamics.hpp"

#include "alphavortex/csv.hpp"
#include "alphavortex/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace alphavortex::dynamics {

namespace {

// Kahan-compensated accumulator.
struct Acc {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// Pairwise-symmetric evaluation at the particles: each interaction computed
// once, applied with opposite signs. Fixed index order, compensated sums.
std::vector<Vec2> rhs_pairwise(std::span<const Vec2> pos, std::span<const double> mass,
                               const kernels::Blob& blob) {
    const std::size_t m = pos.size();
    std::vector<Acc> ax(m), ay(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Vec2 k = kernels::k_reg(blob, pos[i] - pos[j]);
            ax[i].add(mass[j] * k.x);
            ay[i].add(mass[j] * k.y);
            ax[j].add(mass[i] * -k.x);
            ay[j].add(mass[i] * -k.y);
        }
    }
    std::vector<Vec2> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = {ax[i].sum, ay[i].sum};
    return out;
}

// Chunked-by-target evaluation; each target sums sources in index order, so
// results are reproducible for a fixed thread count.
std::vector<Vec2> eval_chunked(std::span<const Vec2> pos, std::span<const double> mass,
                               const kernels::Blob& blob, std::span<const Vec2> targets,
                               int threads) {
    const std::size_t n = targets.size();
    const std::size_t m = pos.size();
    std::vector<Vec2> out(n);
    const kernels::Blob b = blob;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(threads, 1))
#endif
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        const Vec2 p = targets[static_cast<std::size_t>(k)];
        double vx = 0.0, vy = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const Vec2 u = kernels::k_reg(b, p - pos[j]);
            vx += mass[j] * u.x;
            vy += mass[j] * u.y;
        }
        out[static_cast<std::size_t>(k)] = {vx, vy};
    }
    (void)threads;
    return out;
}

std::vector<Vec2> eval_at(std::span<const Vec2> pos, std::span<const double> mass,
                          const kernels::Blob& blob, std::span<const Vec2> targets,
                          const IntegratorConfig& cfg, bool targets_are_sources) {
    if (cfg.deterministic_reduction && targets_are_sources)
        return rhs_pairwise(pos, mass, blob);
    if (cfg.deterministic_reduction)
        return eval_chunked(pos, mass, blob, targets, 1);
    return eval_chunked(pos, mass, blob, targets, cfg.threads);
}

void check_finite(std::span<const Vec2> pos, double time, double blowup_radius) {
    const double r2max = blowup_radius > 0.0
                             ? blowup_radius * blowup_radius
                             : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (!finite(pos[i]) || pos[i].norm2() > r2max)
            throw BlowupError("integration blow-up at t=" + std::to_string(time) +
                              ", particle " + std::to_string(i));
    }
}

} // namespace

const char* method_name(IntegratorConfig::Method m) {
    return m == IntegratorConfig::Method::RK4 ? "rk4" : "euler";
}

IntegratorConfig::Method method_from_name(const std::string& name) {
    if (name == "rk4") return IntegratorConfig::Method::RK4;
    if (name == "euler") return IntegratorConfig::Method::Euler;
    throw std::invalid_argument("unknown integrator method '" + name + "'");
}

std::vector<Vec2> velocity_at(const ParticleSystem& sys, std::span<const Vec2> points,
                              const IntegratorConfig& cfg) {
    return eval_at(sys.positions, sys.masses, sys.blob, points, cfg, false);
}

std::vector<Vec2> rhs(const ParticleSystem& sys, const IntegratorConfig& cfg) {
    return eval_at(sys.positions, sys.masses, sys.blob, sys.positions, cfg, true);
}

ParticleSystem step(const ParticleSystem& sys, const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const double dt = cfg.dt;
    const std::size_t m = sys.size();

    ParticleSystem out = sys;
    auto shifted = [&](std::span<const Vec2> k, double factor) {
        ParticleSystem tmp = sys;
        for (std::size_t i = 0; i < m; ++i) tmp.positions[i] += factor * k[i];
        return tmp;
    };

    if (cfg.method == IntegratorConfig::Method::Euler) {
        const auto k1 = rhs(sys, cfg);
        for (std::size_t i = 0; i < m; ++i) out.positions[i] += dt * k1[i];
    } else {
        const auto k1 = rhs(sys, cfg);
        const auto k2 = rhs(shifted(k1, 0.5 * dt), cfg);
        const auto k3 = rhs(shifted(k2, 0.5 * dt), cfg);
        const auto k4 = rhs(shifted(k3, dt), cfg);
        for (std::size_t i = 0; i < m; ++i) {
            const Vec2 incr = k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i];
            out.positions[i] += (dt / 6.0) * incr;
        }
    }
    out.time = sys.time + dt;
    check_finite(out.positions, out.time, cfg.blowup_radius);
    return out;
}

double default_dt(const ParticleSystem& sys, const IntegratorConfig& cfg) {
    if (sys.size() < 2) return 1.0;
    double min_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j)
            min_d2 = std::min(min_d2, (sys.positions[i] - sys.positions[j]).norm2());
    const auto v = rhs(sys, cfg);
    double vmax = 0.0;
    for (const Vec2& u : v) vmax = std::max(vmax, u.norm());
    if (!(vmax > 0.0) || !(min_d2 > 0.0)) return 1.0;
    return std::clamp(0.1 * std::sqrt(min_d2) / vmax, 1e-8, 1e3);
}

SimOutcome simulate(const ParticleSystem& sys, const IntegratorConfig& cfg,
                    int record_stride, const RecordHook& hook) {
    if (record_stride < 1) throw std::invalid_argument("simulate: record_stride must be >= 1");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
    if (cfg.t_end < 0.0) throw std::invalid_argument("simulate: t_end must be >= 0");

    IntegratorConfig run_cfg = cfg;
    if (run_cfg.blowup_radius <= 0.0) {
        double r2 = 0.0;
        for (const Vec2& p : sys.positions) r2 = std::max(r2, p.norm2());
        run_cfg.blowup_radius = 1e6 * std::max(std::sqrt(r2), 1.0);
    }

    const long long nsteps = std::llround(cfg.t_end / cfg.dt);

    SimOutcome outcome;
    outcome.trajectory.record_stride = record_stride;
    auto record = [&](const ParticleSystem& s) {
        outcome.trajectory.snapshots.push_back(s);
        if (hook) hook(s);
    };

    ParticleSystem state = sys;
    record(state);
    for (long long k = 1; k <= nsteps; ++k) {
        try {
            state = step(state, run_cfg);
        } catch (const BlowupError& e) {
            outcome.error = e.what();
            return outcome;
        }
        if (k % record_stride == 0 || k == nsteps) record(state);
    }
    outcome.completed = true;
    return outcome;
}

void write_snapshots_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,i,x,y,mass\n";
    for (const ParticleSystem& s : traj.snapshots) {
        const std::string t = csv::num(s.time);
        for (std::size_t i = 0; i < s.size(); ++i)
            out << t << ',' << i << ',' << csv::num(s.positions[i].x) << ','
                << csv::num(s.positions[i].y) << ',' << csv::num(s.masses[i]) << '\n';
    }
}

} // namespace alphavortex::dynamics
