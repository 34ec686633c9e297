#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chemolab/scenario.hpp"
#include "chemolab/solver.hpp"

namespace chemolab {

/// Explicit override > CHEMOLAB_OUTPUT_ROOT environment variable > cwd.
std::filesystem::path resolve_output_root(const std::string& override_root = "");

struct RunPaths {
    std::filesystem::path dir;
    std::filesystem::path diagnostics_csv;
    std::filesystem::path final_state_csv;
    std::filesystem::path run_json;
};

struct RunArtifacts {
    RunResult result;
    RunPaths paths;
};

/// Runs one scenario and persists diagnostics.csv, final_state.csv and
/// run.json under output_root / scenario.output_dir.
RunArtifacts run_scenario(const Scenario& sc, const std::string& output_root = "");
RunArtifacts run_scenario_file(const std::filesystem::path& config_path,
                               const std::string& output_root = "");

std::string final_state_csv(const RunResult& result, const BoundaryData& bd,
                            const ModelParams& params);
/// Reloads the (x, u, v) columns of a final_state.csv; exact to the 17
/// serialized digits.
State parse_final_state_csv(const std::string& text, double t);

/// First sample time at which h1_u_dev + h1_v_dev drops below
/// threshold_fraction of its initial value.
std::optional<double> time_to_threshold(const std::vector<DiagnosticsRecord>& records,
                                        double threshold_fraction = 1e-2);

struct ConvergenceReport {
    std::vector<int> grids;
    int reference_n = 0;
    std::vector<double> u_errors;
    std::vector<double> v_errors;
    std::vector<double> u_orders;  // one per consecutive grid pair
    std::vector<double> v_orders;
    bool degenerate = false;  // all errors at the rounding floor

    std::string table() const;
};

/// Self-convergence study: runs the scenario on each grid plus a fine
/// reference, with dt scaled like h^2 off the scenario's base resolution so
/// the time-discretization error shrinks at the same rate as the spatial one.
/// Grids must nest into the reference ((n-1) divides (reference_n-1)) and the
/// reference must be at least twice as fine as the largest grid.
ConvergenceReport convergence_study(const Scenario& sc, const std::vector<int>& grids,
                                    int reference_n);

struct SweepRow {
    double value = 0.0;
    RunStatus status = RunStatus::Rejected;
    std::optional<double> final_h1_dev;
    std::optional<double> gronwall_cstar;
    std::optional<double> time_to_threshold;
    std::string ba_verdict;
};

struct SweepResult {
    std::string axis;
    std::vector<SweepRow> rows;
    std::filesystem::path summary_csv;

    std::string csv() const;
};

/// Runs the base config once per axis value (axis is a dotted path into the
/// config JSON, e.g. "model.gamma"), fanning out over up to `parallelism`
/// threads. Individual failures become rows, never abort the sweep. The
/// summary is deterministic and independent of the parallelism level.
SweepResult sweep(const std::filesystem::path& config_path, const std::string& axis,
                  const std::vector<double>& values, int parallelism,
                  const std::string& output_root = "");

}  // namespace chemolab
