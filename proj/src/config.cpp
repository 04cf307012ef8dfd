#include "alphavortex/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace alphavortex::app {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        if (!required.contains(key) && !optional.contains(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
    }
    for (const std::string& key : required) {
        if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    }
}

Vec2 parse_vec2(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(where + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

measures::Box parse_box(const json& j, const std::string& where) {
    require_keys(j, where, {"lo", "hi"});
    return {parse_vec2(j["lo"], where + ".lo"), parse_vec2(j["hi"], where + ".hi")};
}

measures::Profile parse_profile(const json& j) {
    require_keys(j, "spec.profile", {"type"},
                 {"center", "radius", "amplitude", "separation"});
    measures::Profile p;
    p.type = measures::profile_from_name(j["type"].get<std::string>());
    if (j.contains("center")) p.center = parse_vec2(j["center"], "spec.profile.center");
    if (j.contains("radius")) p.radius = j["radius"].get<double>();
    if (j.contains("amplitude")) p.amplitude = j["amplitude"].get<double>();
    if (j.contains("separation")) p.separation = j["separation"].get<double>();
    if (p.type == measures::Profile::Type::TwoPatch && !(p.separation > 0.0))
        throw ConfigError("spec.profile: two-patch requires separation > 0");
    if (!(p.radius > 0.0)) throw ConfigError("spec.profile: radius must be > 0");
    return p;
}

measures::VorticitySpec parse_spec(const json& j) {
    require_keys(j, "spec", {"kind", "support_box"}, {"profile", "atoms", "atoms_file"});
    const std::string kind = j["kind"].get<std::string>();
    const measures::Box box = parse_box(j["support_box"], "spec.support_box");
    if (kind == "analytic") {
        if (!j.contains("profile"))
            throw ConfigError("spec: analytic kind requires a profile");
        if (j.contains("atoms") || j.contains("atoms_file"))
            throw ConfigError("spec: analytic kind does not take atoms");
        return measures::analytic_spec(parse_profile(j["profile"]), box);
    }
    if (kind == "atoms") {
        if (j.contains("profile"))
            throw ConfigError("spec: atoms kind does not take a profile");
        std::vector<measures::Atom> atoms;
        if (j.contains("atoms_file")) {
            std::ifstream in(j["atoms_file"].get<std::string>());
            if (!in)
                throw ConfigError("spec.atoms_file: cannot open '" +
                                  j["atoms_file"].get<std::string>() + "'");
            atoms = read_atoms_csv(in);
        } else if (j.contains("atoms")) {
            for (const auto& row : j["atoms"]) {
                if (!row.is_array() || row.size() != 3)
                    throw ConfigError("spec.atoms: expected rows [x, y, mass]");
                atoms.push_back({{row[0].get<double>(), row[1].get<double>()},
                                 row[2].get<double>()});
            }
        } else {
            throw ConfigError("spec: atoms kind requires atoms or atoms_file");
        }
        return measures::atom_spec(std::move(atoms), box);
    }
    throw ConfigError("spec.kind: expected 'analytic' or 'atoms'");
}

kernels::Blob parse_blob(const json& j) {
    require_keys(j, "blob", {"family", "scale"});
    return kernels::Blob{kernels::family_from_name(j["family"].get<std::string>()),
                         j["scale"].get<double>()};
}

dynamics::IntegratorConfig parse_integrator(const json& j) {
    require_keys(j, "integrator", {"t_end"},
                 {"method", "dt", "deterministic_reduction"});
    dynamics::IntegratorConfig c;
    c.t_end = j["t_end"].get<double>();
    if (c.t_end < 0.0) throw ConfigError("integrator.t_end: must be >= 0");
    if (j.contains("method"))
        c.method = dynamics::method_from_name(j["method"].get<std::string>());
    if (j.contains("dt")) c.dt = j["dt"].get<double>();
    if (j.contains("deterministic_reduction"))
        c.deterministic_reduction = j["deterministic_reduction"].get<bool>();
    return c;
}

diagnostics::DiagnosticsConfig parse_diag(const json& j) {
    require_keys(j, "diagnostics", {},
                 {"probe_radii", "f_r_radii", "k", "n_angles", "support_quantile",
                  "record_stride"});
    diagnostics::DiagnosticsConfig d;
    if (j.contains("probe_radii"))
        d.probe_radii = j["probe_radii"].get<std::vector<double>>();
    if (j.contains("f_r_radii"))
        d.f_r_radii = j["f_r_radii"].get<std::vector<double>>();
    if (j.contains("k")) d.k = j["k"].get<int>();
    if (j.contains("n_angles")) d.n_angles = j["n_angles"].get<int>();
    if (j.contains("support_quantile"))
        d.support_quantile = j["support_quantile"].get<double>();
    if (j.contains("record_stride")) d.record_stride = j["record_stride"].get<int>();
    if (d.k < 1) throw ConfigError("diagnostics.k: must be >= 1");
    if (d.record_stride < 1) throw ConfigError("diagnostics.record_stride: must be >= 1");
    if (!(d.support_quantile > 0.0 && d.support_quantile <= 1.0))
        throw ConfigError("diagnostics.support_quantile: must be in (0,1]");
    return d;
}

json vec2_json(Vec2 v) { return json::array({v.x, v.y}); }

} // namespace

SimConfig parse_config(const json& j) {
    require_keys(j, "config", {"spec", "blob", "integrator"},
                 {"n", "diagnostics", "recenter", "seed", "output_dir"});
    SimConfig cfg;
    cfg.spec = parse_spec(j["spec"]);
    cfg.blob = parse_blob(j["blob"]);
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (cfg.n < 1) throw ConfigError("n: must be >= 1");
    cfg.integrator = parse_integrator(j["integrator"]);
    if (j.contains("diagnostics")) cfg.diag = parse_diag(j["diagnostics"]);
    if (j.contains("recenter")) cfg.recenter = j["recenter"].get<bool>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    return cfg;
}

json to_json(const SimConfig& cfg) {
    json spec;
    spec["kind"] =
        cfg.spec.kind == measures::VorticitySpec::Kind::AnalyticDensity ? "analytic"
                                                                        : "atoms";
    spec["support_box"] = {{"lo", vec2_json(cfg.spec.support_box.lo)},
                           {"hi", vec2_json(cfg.spec.support_box.hi)}};
    if (cfg.spec.kind == measures::VorticitySpec::Kind::AnalyticDensity) {
        json p;
        p["type"] = measures::profile_name(cfg.spec.density.type);
        p["center"] = vec2_json(cfg.spec.density.center);
        p["radius"] = cfg.spec.density.radius;
        p["amplitude"] = cfg.spec.density.amplitude;
        if (cfg.spec.density.type == measures::Profile::Type::TwoPatch)
            p["separation"] = cfg.spec.density.separation;
        spec["profile"] = p;
    } else {
        json rows = json::array();
        for (const auto& a : cfg.spec.atoms)
            rows.push_back(json::array({a.pos.x, a.pos.y, a.mass}));
        spec["atoms"] = rows;
    }

    json j;
    j["spec"] = spec;
    j["blob"] = {{"family", kernels::family_name(cfg.blob.family)},
                 {"scale", cfg.blob.scale}};
    j["n"] = cfg.n;
    j["integrator"] = {{"method", dynamics::method_name(cfg.integrator.method)},
                       {"dt", cfg.integrator.dt},
                       {"t_end", cfg.integrator.t_end},
                       {"deterministic_reduction", cfg.integrator.deterministic_reduction}};
    j["diagnostics"] = {{"probe_radii", cfg.diag.probe_radii},
                        {"f_r_radii", cfg.diag.f_r_radii},
                        {"k", cfg.diag.k},
                        {"n_angles", cfg.diag.n_angles},
                        {"support_quantile", cfg.diag.support_quantile},
                        {"record_stride", cfg.diag.record_stride}};
    j["recenter"] = cfg.recenter;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    return j;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    if (j.is_object() && j.contains("config")) return parse_config(j["config"]);
    return parse_config(j);
}

std::vector<std::string> preset_names() {
    return {"disk-patch", "smooth-bump", "two-patch", "two-vortex-orbit"};
}

SimConfig preset(const std::string& name) {
    SimConfig cfg;
    cfg.blob = kernels::Blob{kernels::BlobFamily::EulerAlpha, 0.1};
    cfg.integrator.method = dynamics::IntegratorConfig::Method::RK4;
    cfg.integrator.deterministic_reduction = true;

    if (name == "disk-patch") {
        // off-grid center so the discretization has no mirror symmetry and
        // conservation drift is a genuine integrator signal
        measures::Profile p;
        p.type = measures::Profile::Type::UniformDisk;
        p.center = {0.3, 0.15};
        p.radius = 1.0;
        p.amplitude = 1.0;
        cfg.spec = measures::analytic_spec(
            p, measures::Box{{-1.2, -1.35}, {1.8, 1.65}});
        cfg.n = 16;
        cfg.integrator.t_end = 10.0;
        cfg.diag.probe_radii = {12.0, 42.0};
        cfg.diag.f_r_radii = {2.5, 3.0, 4.0, 6.0};
        cfg.diag.record_stride = 50;
        cfg.output_dir = "out/disk-patch";
        return cfg;
    }
    if (name == "smooth-bump") {
        measures::Profile p;
        p.type = measures::Profile::Type::SmoothBump;
        p.radius = 1.0;
        p.amplitude = 4.0 / std::numbers::pi; // unit total mass
        cfg.spec = measures::analytic_spec(
            p, measures::Box{{-1.5, -1.5}, {1.5, 1.5}});
        cfg.n = 16;
        cfg.integrator.t_end = 10.0;
        cfg.diag.probe_radii = {12.0, 42.0};
        cfg.diag.f_r_radii = {2.5, 3.0, 4.0};
        cfg.diag.record_stride = 50;
        cfg.output_dir = "out/smooth-bump";
        return cfg;
    }
    if (name == "two-patch") {
        measures::Profile p;
        p.type = measures::Profile::Type::TwoPatch;
        p.radius = 0.5;
        p.amplitude = 1.0;
        p.separation = 1.5;
        cfg.spec = measures::analytic_spec(
            p, measures::Box{{-1.5, -0.75}, {1.5, 0.75}});
        cfg.n = 16;
        cfg.integrator.t_end = 1.0;
        // far-field probes spanning [10, 40] support radii (support ~ 1.25)
        for (int i = 0; i <= 8; ++i)
            cfg.diag.probe_radii.push_back(12.5 * std::pow(4.0, i / 8.0));
        cfg.diag.f_r_radii = {3.0, 4.0, 6.0};
        cfg.diag.record_stride = 20;
        cfg.output_dir = "out/two-patch";
        return cfg;
    }
    if (name == "two-vortex-orbit") {
        cfg.spec = measures::atom_spec({{{0.5, 0.0}, 1.0}, {{-0.5, 0.0}, 1.0}},
                                       measures::Box{{-2.0, -2.0}, {2.0, 2.0}});
        const double period =
            2.0 * std::numbers::pi * std::numbers::pi / kernels::gamma(cfg.blob, 1.0);
        cfg.integrator.dt = period / 2000.0;
        cfg.integrator.t_end = period;
        cfg.recenter = false; // atoms are already placed about the origin
        cfg.diag.probe_radii = {10.0, 40.0};
        cfg.diag.f_r_radii = {3.0};
        cfg.diag.record_stride = 100;
        cfg.output_dir = "out/two-vortex-orbit";
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<measures::Atom> read_atoms_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "x,y,mass")
        throw ConfigError("atom CSV: expected header 'x,y,mass'");
    std::vector<measures::Atom> atoms;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        double v[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(row, field, i < 2 ? ',' : '\n'))
                throw ConfigError("atom CSV: malformed row '" + line + "'");
            std::size_t pos = 0;
            v[i] = std::stod(field, &pos);
            if (pos != field.size())
                throw ConfigError("atom CSV: bad number '" + field + "'");
        }
        atoms.push_back({{v[0], v[1]}, v[2]});
    }
    return atoms;
}

} // namespace alphavortex::app
