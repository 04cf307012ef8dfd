/// JSON config parsing (strict keys), presets, manifest reruns and the atom
/// CSV interface.

#include "alphavortex/config.hpp"

#include "alphavortex/runner.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace alphavortex;
using namespace alphavortex::app;
using nlohmann::json;

namespace {

json minimal_config() {
    return json::parse(R"({
        "spec": {"kind": "atoms", "atoms": [[0.5, 0.0, 1.0], [-0.5, 0.0, 1.0]],
                 "support_box": {"lo": [-1, -1], "hi": [1, 1]}},
        "blob": {"family": "euler-alpha", "scale": 0.1},
        "integrator": {"t_end": 1.0}
    })");
}

} // namespace

TEST_CASE("parse_config: minimal config and defaults") {
    const SimConfig cfg = parse_config(minimal_config());
    CHECK(cfg.spec.kind == measures::VorticitySpec::Kind::AtomList);
    CHECK(cfg.spec.atoms.size() == 2);
    CHECK(cfg.blob.family == kernels::BlobFamily::EulerAlpha);
    CHECK(cfg.n == 16);
    CHECK(cfg.integrator.dt == 0.0); // heuristic
    CHECK(cfg.integrator.method == dynamics::IntegratorConfig::Method::RK4);
    CHECK(cfg.recenter);
    CHECK(cfg.diag.k == 6);
    CHECK(cfg.diag.support_quantile == 0.99);
}

TEST_CASE("parse_config: unknown keys are rejected at every level") {
    json j = minimal_config();
    j["bogus"] = 1;
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);

    j = minimal_config();
    j["integrator"]["cfl"] = 0.5;
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);

    j = minimal_config();
    j["spec"]["padding"] = 2.0;
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);

    j = minimal_config();
    j["blob"] = {{"family", "gaussian"}};
    CHECK_THROWS_AS((void)parse_config(j), ConfigError); // missing scale
}

TEST_CASE("parse_config: semantic validation") {
    json j = minimal_config();
    j["spec"]["kind"] = "analytic"; // atoms present but kind analytic
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);

    j = minimal_config();
    j["integrator"]["t_end"] = -1.0;
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);

    j = minimal_config();
    j["blob"]["family"] = "cauchy";
    CHECK_THROWS_AS((void)parse_config(j), std::invalid_argument);

    j = minimal_config();
    j["diagnostics"] = {{"record_stride", 0}};
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);
}

TEST_CASE("config round-trips through JSON") {
    for (const std::string& name : preset_names()) {
        const SimConfig a = preset(name);
        const SimConfig b = parse_config(to_json(a));
        CHECK(to_json(a).dump() == to_json(b).dump());
    }
}

TEST_CASE("presets build valid particle systems") {
    for (const std::string& name : preset_names()) {
        const SimConfig cfg = preset(name);
        const auto sys = build_initial_system(cfg);
        CHECK(sys.size() >= 2);
        CHECK(sys.all_nonnegative());
    }
    CHECK_THROWS_AS((void)preset("no-such-preset"), ConfigError);

    // disk-patch hits the scale the conservation experiment expects
    const auto disk = build_initial_system(preset("disk-patch"));
    CHECK(disk.size() > 700);
    CHECK(disk.size() < 1000);
}

TEST_CASE("load_config_file accepts a manifest and reuses its config") {
    const SimConfig cfg = preset("two-vortex-orbit");
    json manifest;
    manifest["config"] = to_json(cfg);
    manifest["results"] = {{"anything", 1}};
    const std::string path = "/tmp/alphavortex_test_manifest.json";
    {
        std::ofstream out(path);
        out << manifest.dump();
    }
    const SimConfig re = load_config_file(path);
    CHECK(to_json(re).dump() == to_json(cfg).dump());
}

TEST_CASE("atom CSV: header and row validation") {
    std::istringstream good("x,y,mass\n0.5,0,1\n-0.5,0,1\n");
    const auto atoms = read_atoms_csv(good);
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].pos.x == 0.5);
    CHECK(atoms[1].mass == 1.0);

    std::istringstream bad_header("a,b,c\n1,2,3\n");
    CHECK_THROWS_AS((void)read_atoms_csv(bad_header), ConfigError);
    std::istringstream bad_row("x,y,mass\n1,2\n");
    CHECK_THROWS_AS((void)read_atoms_csv(bad_row), ConfigError);
    std::istringstream bad_num("x,y,mass\n1,2,zebra\n");
    CHECK_THROWS_AS((void)read_atoms_csv(bad_num), std::exception);
}

TEST_CASE("runner: resolved dt divides t_end and diagnostics line up") {
    SimConfig cfg = preset("two-vortex-orbit");
    cfg.integrator.t_end = 1.0;
    cfg.integrator.dt = 0.3; // does not divide 1.0: rounded to 0.25
    cfg.diag.record_stride = 2;
    RunOptions opts;
    opts.write_outputs = false;
    const RunResult res = run_simulation(cfg, opts);
    CHECK(res.outcome.completed);
    CHECK(res.resolved.integrator.dt == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(res.records.size() == 3); // t = 0, 0.5, 1.0
    CHECK(res.records.back().t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.params.c > 0.0);
    CHECK(res.contained_fraction == 1.0);
}

TEST_CASE("runner: confinement rejects signed measures") {
    SimConfig cfg;
    cfg.spec = measures::atom_spec({{{0.5, 0}, 1.0}, {{-0.5, 0}, -1.0}},
                                   measures::Box{{-1, -1}, {1, 1}});
    cfg.blob = kernels::Blob{kernels::BlobFamily::EulerAlpha, 0.1};
    cfg.integrator.t_end = 0.1;
    cfg.recenter = false;
    RunOptions opts;
    opts.write_outputs = false;
    CHECK_THROWS_AS((void)run_confinement(cfg, opts), ConfigError);
}
