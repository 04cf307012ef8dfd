#pragma once

#include "alphavortex/measures.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace alphavortex::dynamics {

using measures::ParticleSystem;

struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegratorConfig {
    enum class Method { RK4, Euler };
    Method method = Method::RK4;
    double dt = 0.0; // <= 0 means: resolve via default_dt before stepping
    double t_end = 0.0;
    bool deterministic_reduction = true;
    int threads = 1;
    // Positions beyond this radius abort the run; resolved by simulate() from
    // the initial support when unset.
    double blowup_radius = 0.0;
};

const char* method_name(IntegratorConfig::Method m);
IntegratorConfig::Method method_from_name(const std::string& name);

/// Velocity induced by the particle system at arbitrary points:
/// out[k] = sum_j m_j K_reg(points[k] - X_j). The j-term vanishes when the
/// point coincides with X_j (bounded kernel, zero at the origin).
std::vector<Vec2> velocity_at(const ParticleSystem& sys, std::span<const Vec2> points,
                              const IntegratorConfig& cfg = {});

/// Right-hand side of the blob ODEs: the induced velocity at the particles
/// themselves. In deterministic mode each pair interaction is evaluated once
/// and applied with opposite signs under Kahan accumulation; otherwise the
/// sum is chunked over targets (parallel when built with OpenMP).
std::vector<Vec2> rhs(const ParticleSystem& sys, const IntegratorConfig& cfg = {});

/// One step of the configured method. Masses and blob are untouched; time
/// advances by dt. Throws BlowupError on non-finite or runaway positions.
ParticleSystem step(const ParticleSystem& sys, const IntegratorConfig& cfg);

/// CFL-like step heuristic: 0.1 * (min pairwise distance) / (max speed),
/// clamped to [1e-8, 1e3]. Falls back to 1.0 for M = 1 or a motionless system.
double default_dt(const ParticleSystem& sys, const IntegratorConfig& cfg = {});

struct Trajectory {
    std::vector<ParticleSystem> snapshots;
    int record_stride = 1;
};

struct SimOutcome {
    Trajectory trajectory;
    bool completed = false;
    std::string error;
};

using RecordHook = std::function<void(const ParticleSystem&)>;

/// Advance round(t_end/dt) steps of exactly dt, recording the initial state,
/// every record_stride-th step and the final state. The hook runs on each
/// recorded snapshot. A blow-up ends the run early with the partial trajectory.
SimOutcome simulate(const ParticleSystem& sys, const IntegratorConfig& cfg,
                    int record_stride, const RecordHook& hook = {});

/// CSV export of recorded snapshots, header "t,i,x,y,mass".
void write_snapshots_csv(const Trajectory& traj, std::ostream& out);

} // namespace alphavortex::dynamics
