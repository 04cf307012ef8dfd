#pragma once

#include "alphavortex/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alphavortex::app {

struct RunResult {
    SimConfig resolved;                 // dt and output_dir filled in
    measures::ParticleSystem initial;   // after optional recentering
    dynamics::SimOutcome outcome;
    std::vector<diagnostics::DiagnosticsRecord> records;
    diagnostics::ConfinementParams params; // r0 measured, c fitted
    bool theoretical_guarantee = false;    // exponential tail + nonnegative data
    double contained_fraction = 0.0;       // share of records under the envelope
};

struct RunOptions {
    int threads = 1;
    double fit_window = 1.0; // envelope constant fitted on t in (0, fit_window]
    bool write_outputs = true;
};

/// Discretize, recenter, resolve dt (heuristic, then rounded so steps*dt =
/// t_end exactly), run with diagnostics recording, fit the envelope constant
/// on the early window, and optionally write snapshots.csv, diagnostics.csv
/// and manifest.json to the config's output_dir.
RunResult run_simulation(const SimConfig& cfg, const RunOptions& opts = {});

/// The confinement experiment: run_simulation plus the containment report
/// (confinement.csv: t,r_supp,envelope,contained). Rejects signed measures.
RunResult run_confinement(const SimConfig& cfg, const RunOptions& opts = {});

/// The particle system a config describes, recentered when requested.
measures::ParticleSystem build_initial_system(const SimConfig& cfg);

} // namespace alphavortex::app
