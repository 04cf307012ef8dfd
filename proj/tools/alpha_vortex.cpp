// alpha-vortex: 2D vortex-blob dynamics with regularized Biot-Savart kernels.
// Subcommands: tabulate (kernel tables), verify (property suites),
// run (simulation + diagnostics), confinement (support-growth experiment).
// Exit codes: 0 ok, 1 verification failure, 2 usage/config error,
// 3 numerical blow-up.

#include "alphavortex/config.hpp"
#include "alphavortex/runner.hpp"
#include "alphavortex/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace alphavortex;

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("ALPHA_VORTEX_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct TabulateArgs {
    std::string family = "euler-alpha";
    double scale = 0.1;
    double rmin = 0.0;
    double rmax = 1.0;
    int steps = 100;
    std::string out;
};

int cmd_tabulate(const TabulateArgs& a) {
    if (a.steps < 1) {
        std::cerr << "tabulate: --steps must be >= 1\n";
        return 2;
    }
    if (!(a.rmax > a.rmin) || a.rmin < 0.0) {
        std::cerr << "tabulate: need 0 <= rmin < rmax\n";
        return 2;
    }
    const kernels::Blob blob{kernels::family_from_name(a.family), a.scale};
    std::vector<double> radii;
    radii.reserve(a.steps + 1);
    for (int i = 0; i <= a.steps; ++i)
        radii.push_back(a.rmin + (a.rmax - a.rmin) * i / a.steps);
    const auto table = kernels::tabulate(blob, radii);
    if (a.out.empty()) {
        kernels::write_csv(table, std::cout);
    } else {
        std::ofstream out(a.out, std::ios::binary);
        if (!out) {
            std::cerr << "tabulate: cannot write '" << a.out << "'\n";
            return 2;
        }
        kernels::write_csv(table, out);
    }
    return 0;
}

app::SimConfig load_or_preset(const std::string& config_path, const std::string& preset_name,
                              const std::string& out_dir, double t_end_override,
                              double dt_override) {
    if (config_path.empty() == preset_name.empty())
        throw app::ConfigError("exactly one of --config or --preset is required");
    app::SimConfig cfg = config_path.empty() ? app::preset(preset_name)
                                             : app::load_config_file(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (t_end_override >= 0.0) cfg.integrator.t_end = t_end_override;
    if (dt_override > 0.0) cfg.integrator.dt = dt_override;
    return cfg;
}

int finish_run(const app::RunResult& result) {
    std::cout << "particles=" << result.initial.size()
              << " dt=" << result.resolved.integrator.dt
              << " records=" << result.records.size()
              << " r0=" << result.params.r0 << " fitted_c=" << result.params.c
              << "\noutputs: " << result.resolved.output_dir << "\n";
    if (!result.outcome.completed) {
        std::cerr << "blow-up: " << result.outcome.error << " (partial outputs kept)\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"2D vortex-blob dynamics with regularized Biot-Savart kernels"};
    cli.require_subcommand(1);
    int threads_flag = 0;
    cli.add_option("--threads", threads_flag,
                   "worker threads (default: machine parallelism or $ALPHA_VORTEX_THREADS)");

    TabulateArgs targs;
    auto* tab = cli.add_subcommand("tabulate", "write an r,gamma kernel table");
    tab->add_option("--family", targs.family, "euler-alpha | gaussian | krasny");
    tab->add_option("--scale", targs.scale, "blob scale (alpha or epsilon)")->required();
    tab->add_option("--rmin", targs.rmin, "first radius (default 0)");
    tab->add_option("--rmax", targs.rmax, "last radius")->required();
    tab->add_option("--steps", targs.steps, "number of grid intervals");
    tab->add_option("--out", targs.out, "output CSV (default: stdout)");

    std::string suite;
    std::uint64_t seed = 0;
    bool tamper = false;
    auto* ver = cli.add_subcommand("verify", "run a property-verification suite");
    ver->add_option("suite", suite, "kernels | conservation | decay | tail")->required();
    ver->add_option("--seed", seed, "seed for randomized checks");
    ver->add_flag("--tamper", tamper,
                  "negative control: flip the closed-form kernel sign (must fail)");

    std::string config_path, preset_name, out_dir;
    double t_end_override = -1.0, dt_override = 0.0, fit_window = 1.0;
    auto add_run_opts = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config (or manifest) file");
        sub->add_option("--preset", preset_name,
                        "disk-patch | smooth-bump | two-patch | two-vortex-orbit");
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--t-end", t_end_override, "override integrator t_end");
        sub->add_option("--dt", dt_override, "override integrator dt");
    };
    auto* run = cli.add_subcommand("run", "simulate and write diagnostics CSVs");
    add_run_opts(run);
    auto* conf = cli.add_subcommand("confinement",
                                    "fit the envelope early and test containment");
    add_run_opts(conf);
    conf->add_option("--fit-window", fit_window, "fit C on t in (0, window]");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << cli.help() << "\n";
        return 2;
    }

    const int threads = resolve_threads(threads_flag);

    try {
        if (tab->parsed()) return cmd_tabulate(targs);

        if (ver->parsed()) {
            app::verify::Options opts;
            opts.seed = seed;
            opts.tamper = tamper;
            opts.threads = threads;
            const auto checks = app::verify::run_suite(suite, opts);
            return app::verify::report(checks, std::cout);
        }

        if (run->parsed()) {
            const app::SimConfig cfg =
                load_or_preset(config_path, preset_name, out_dir, t_end_override, dt_override);
            app::RunOptions opts;
            opts.threads = threads;
            return finish_run(app::run_simulation(cfg, opts));
        }

        if (conf->parsed()) {
            const app::SimConfig cfg =
                load_or_preset(config_path, preset_name, out_dir, t_end_override, dt_override);
            app::RunOptions opts;
            opts.threads = threads;
            opts.fit_window = fit_window;
            const auto result = app::run_confinement(cfg, opts);
            std::cout << "theoretical_guarantee="
                      << (result.theoretical_guarantee ? "true" : "false") << "\n";
            std::cout << "contained_fraction=" << result.contained_fraction << "\n";
            return finish_run(result);
        }
    } catch (const app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const dynamics::BlowupError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
