#pragma once

#include "alphavortex/diagnostics.hpp"
#include "alphavortex/dynamics.hpp"
#include "alphavortex/measures.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace alphavortex::app {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Full experiment description. JSON round-trips losslessly; unknown keys are
/// rejected so a config means exactly what it says.
struct SimConfig {
    measures::VorticitySpec spec;
    kernels::Blob blob;
    int n = 16; // squares per unit length
    dynamics::IntegratorConfig integrator;
    diagnostics::DiagnosticsConfig diag;
    bool recenter = true;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
};

SimConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const SimConfig& cfg);

/// Load from a file; a manifest ({"config": {...}, "results": {...}}) is
/// accepted and its config section used, so runs reproduce from manifests.
SimConfig load_config_file(const std::string& path);

/// Built-in experiment presets: disk-patch, smooth-bump, two-patch,
/// two-vortex-orbit.
SimConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Atom list CSV (header "x,y,mass") -> atoms.
std::vector<measures::Atom> read_atoms_csv(std::istream& in);

} // namespace alphavortex::app
