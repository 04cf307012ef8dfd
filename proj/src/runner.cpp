#include "alphavortex/runner.hpp"

#include "alphavortex/csv.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace alphavortex::app {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary); // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
}

double fit_envelope_constant(const std::vector<diagnostics::DiagnosticsRecord>& records,
                             double r0, double fit_window) {
    // C = max over the window of (r_supp - 8 R0) / [t log(2+t)]^{1/4}, floored
    // at a small positive value: while the support stays below 8 R0 the fit
    // is vacuous and any positive C gives a valid envelope.
    double c = 0.0;
    for (const auto& rec : records) {
        if (rec.t <= 0.0 || rec.t > fit_window) continue;
        const double w = std::pow(rec.t * std::log(2.0 + rec.t), 0.25);
        if (w > 0.0) c = std::max(c, (rec.r_supp_max - 8.0 * r0) / w);
    }
    return std::max(c, 0.1 * r0);
}

} // namespace

measures::ParticleSystem build_initial_system(const SimConfig& cfg) {
    measures::ParticleSystem sys =
        cfg.spec.kind == measures::VorticitySpec::Kind::AnalyticDensity
            ? measures::discretize(cfg.spec, cfg.n, cfg.blob)
            : measures::from_atoms(cfg.spec, cfg.blob);
    if (cfg.recenter) sys = measures::recenter(sys);
    return sys;
}

RunResult run_simulation(const SimConfig& cfg, const RunOptions& opts) {
    RunResult result;
    result.resolved = cfg;
    result.initial = build_initial_system(cfg);
    result.theoretical_guarantee =
        kernels::has_exponential_tail(cfg.blob) && cfg.spec.nonnegative;

    dynamics::IntegratorConfig& icfg = result.resolved.integrator;
    icfg.threads = opts.threads;
    if (icfg.dt <= 0.0) icfg.dt = dynamics::default_dt(result.initial, icfg);
    if (icfg.t_end > 0.0) {
        // round so the step count divides t_end exactly
        const long long steps =
            std::max(1LL, static_cast<long long>(std::ceil(icfg.t_end / icfg.dt - 1e-9)));
        icfg.dt = icfg.t_end / static_cast<double>(steps);
    }

    const double r0 = diagnostics::support_radius(result.initial, 1.0);
    result.params = {r0, 0.1 * r0, result.resolved.diag.k};

    diagnostics::DiagnosticsConfig dcfg = result.resolved.diag;
    result.outcome = dynamics::simulate(
        result.initial, icfg, dcfg.record_stride,
        [&](const measures::ParticleSystem& snap) {
            result.records.push_back(diagnostics::record(snap, result.params, dcfg));
        });

    result.params.c = fit_envelope_constant(result.records, r0, opts.fit_window);
    int contained = 0;
    for (auto& rec : result.records) {
        rec.envelope = diagnostics::envelope(rec.t, result.params);
        if (rec.r_supp_max <= rec.envelope) ++contained;
    }
    result.contained_fraction =
        result.records.empty() ? 0.0
                               : static_cast<double>(contained) / result.records.size();

    if (opts.write_outputs) {
        const fs::path dir(result.resolved.output_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir))
            throw ConfigError("cannot create output directory '" + dir.string() + "'");

        auto snaps = open_output(dir, "snapshots.csv");
        dynamics::write_snapshots_csv(result.outcome.trajectory, snaps);
        auto diag = open_output(dir, "diagnostics.csv");
        diagnostics::write_timeseries_csv(result.records, dcfg, diag);

        nlohmann::json manifest;
        manifest["config"] = to_json(result.resolved);
        nlohmann::json res;
        res["particles"] = result.initial.size();
        res["r0"] = result.params.r0;
        res["fitted_c"] = result.params.c;
        res["fit_window"] = opts.fit_window;
        res["dt"] = icfg.dt;
        res["steps"] = icfg.dt > 0.0 ? std::llround(icfg.t_end / icfg.dt) : 0;
        res["completed"] = result.outcome.completed;
        if (!result.outcome.completed) res["error"] = result.outcome.error;
        res["origin_shift"] =
            nlohmann::json::array({result.initial.origin_shift.x,
                                   result.initial.origin_shift.y});
        res["theoretical_guarantee"] = result.theoretical_guarantee;
        res["contained_fraction"] = result.contained_fraction;
        res["threads"] = opts.threads;
        manifest["results"] = res;
        auto mf = open_output(dir, "manifest.json");
        mf << manifest.dump(2) << '\n';
    }
    return result;
}

RunResult run_confinement(const SimConfig& cfg, const RunOptions& opts) {
    if (!cfg.spec.nonnegative)
        throw ConfigError("confinement: the theorem requires a nonnegative measure");
    RunResult result = run_simulation(cfg, opts);
    if (opts.write_outputs) {
        auto out = open_output(fs::path(result.resolved.output_dir), "confinement.csv");
        out << "t,r_supp,envelope,contained\n";
        for (const auto& rec : result.records)
            out << csv::num(rec.t) << ',' << csv::num(rec.r_supp_max) << ','
                << csv::num(rec.envelope) << ','
                << (rec.r_supp_max <= rec.envelope ? 1 : 0) << '\n';
    }
    return result;
}

} // namespace alphavortex::app
