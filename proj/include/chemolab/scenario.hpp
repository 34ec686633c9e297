#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "chemolab/solver.hpp"

namespace chemolab {

/// Parsed form of one boundary signal entry in a config file.
struct BoundarySignalSpec {
    std::string family;  // constant | one-plus-exponential-decay | exponential-decay |
                         // damped-oscillation | one-plus-algebraic-decay | tabulated
    double value = 0.0;
    double c = 0.0;
    double lambda = 0.0;
    double omega = 0.0;
    double offset = 0.0;
    std::string path;  // tabulated: CSV of (t, value) rows

    BoundarySignal build(const std::filesystem::path& base_dir) const;
};

struct BoundarySpec {
    BoundarySignalSpec alpha1, alpha2;
    std::optional<BoundarySignalSpec> beta1, beta2;

    BoundaryData build(const std::filesystem::path& base_dir) const;
};

struct InitialSpec {
    enum class Kind { Profile, Constant, Manufactured, Tabulated };
    Kind kind = Kind::Profile;
    // Profile: reference profiles at t = 0 plus sine bumps that vanish at the
    // endpoints, so compatibility is automatic.
    double u_amplitude = 0.0;
    int u_mode = 1;
    double v_amplitude = 0.0;
    int v_mode = 2;
    double v_base = 0.0;  // hyperbolic variant: base level of v0
    // Constant:
    double u_value = 1.0;
    double v_value = 0.0;
    // Tabulated: CSV of (x, u, v) rows, re-interpolated linearly.
    std::string path;
};

/// The unit of one simulation run, as read from a config file.
struct Scenario {
    std::string name;
    ModelParams model;
    BoundarySpec boundary;
    InitialSpec initial;
    NumericsConfig numerics;
    int diagnostics_cadence = 1;
    std::string output_dir;  // relative names resolve under the output root
    bool manufactured_sources = false;
    double compatibility_tol = 1e-10;
    std::filesystem::path base_dir;  // directory of the config file
};

Scenario load_scenario(const std::filesystem::path& config_path);
Scenario parse_scenario_json(const std::string& text, const std::filesystem::path& base_dir);

State build_initial_state(const Scenario& sc);
SimulationInput build_simulation_input(const Scenario& sc);

/// Directory holding the bundled scenario configs (compile-time default,
/// overridable with CHEMOLAB_SCENARIO_DIR).
std::filesystem::path bundled_scenario_dir();
Scenario load_bundled_scenario(const std::string& name);

}  // namespace chemolab
