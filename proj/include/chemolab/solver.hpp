#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chemolab/boundary.hpp"
#include "chemolab/diagnostics.hpp"
#include "chemolab/grid.hpp"
#include "chemolab/manufactured.hpp"
#include "chemolab/model.hpp"

namespace chemolab {

enum class Scheme { Imex, FullyExplicit };
enum class AdvectionForm { Conservative, ProductRule };
enum class HyperbolicFlux { Central, Upwind };

struct NumericsConfig {
    int n = 101;
    double dt = 1e-3;
    double t_end = 1.0;
    double cfl_safety = 0.9;
    Scheme scheme = Scheme::Imex;
    double positivity_floor = 0.0;  // diagnostic threshold; u is never clipped
    AdvectionForm advection_form = AdvectionForm::Conservative;
    HyperbolicFlux hyperbolic_flux = HyperbolicFlux::Central;
    // h^2-scaled zero-mean dissipation of the hyperbolic v update. The central
    // stencil leaves the grid-scale odd-even mode of v neutral; this damps it
    // at an O(1) rate without touching the discrete mean (end fluxes are zero)
    // and without costing second-order accuracy. 0 disables.
    double v_grid_dissipation = 1.0;
};

/// Largest dt the up-front stability check allows for this configuration.
/// Evaluated against the initial data and the alpha bounds; the run itself
/// keeps dt fixed.
double stability_dt_cap(const NumericsConfig& cfg, const ModelParams& params,
                        const State& initial, const AlphaBounds& bounds);

struct StepReport {
    double t_new = 0.0;
    double max_u = 0.0;
    double min_u = 0.0;
    double cfl_used = 0.0;
    double linear_solve_residual = 0.0;
};

enum class StepStatus { Ok, PositivityLost, StepUnstable };

struct StepResult {
    State state;  // on failure, the state at failure (attached, not valid)
    StepReport report;
    StepStatus status = StepStatus::Ok;
};

struct PhStepResult {
    State state;
    double psi = 0.0;
    StepReport report;
    StepStatus status = StepStatus::Ok;
};

/// One step of the parabolic-parabolic system. Diffusion implicit
/// (tridiagonal solve per unknown) under Scheme::Imex, fluxes and reaction
/// explicit; Dirichlet rows pinned to the traces at the new time.
StepResult step_pp(const State& s, const BoundaryData& bd, const ModelParams& params,
                   const NumericsConfig& cfg,
                   const std::optional<ManufacturedSolution>& sources = std::nullopt);

/// One step of the parabolic-hyperbolic system; u as in step_pp, v updated
/// explicitly from the (u^gamma)_x flux divergence averaged over the step
/// endpoints. psi is the running flux accumulator (one trapezoid increment
/// per step); no boundary condition is imposed on v.
PhStepResult step_ph(const State& s, double psi, const BoundaryData& bd,
                     const ModelParams& params, const NumericsConfig& cfg,
                     const std::optional<ManufacturedSolution>& sources = std::nullopt);

/// Discrete flux-divergence operator of the hyperbolic v-update, exposed for
/// direct testing. Interior: central differences of g; endpoints: half-cell
/// balances, so the trapezoid mean of the result telescopes exactly to
/// (g_last - g_first)/(b-a).
Field hyperbolic_flux_divergence(const Field& g, HyperbolicFlux mode, const Field& wind);

enum class RunStatus { Completed, PositivityLost, StepUnstable, Rejected };

const char* run_status_name(RunStatus s);

struct RunMetadata {
    int n = 0;
    double dt = 0.0;
    double t_end = 0.0;
    long long steps_taken = 0;
    double wall_seconds = 0.0;
    double alpha_lower = 0.0;
    double alpha_upper = 0.0;
    double alpha_sample_dt = 0.0;  // resolution of the bound witnesses
    std::vector<std::string> theory_flags;
    std::string ba_verdict;
    std::optional<double> gronwall_cstar;
    std::string rejection_reason;
    double initial_h1_total = 0.0;  // h1_u_dev + h1_v_dev at t = 0
    std::optional<double> final_psi;  // hyperbolic flux accumulator at t_end
};

struct RunResult {
    RunStatus status = RunStatus::Rejected;
    std::vector<DiagnosticsRecord> records;
    State final_state;
    RunMetadata metadata;
};

using RecordSink = std::function<void(const DiagnosticsRecord&)>;

/// Everything simulate needs, already assembled on a grid.
struct SimulationInput {
    ModelParams params;
    BoundaryData boundary;
    NumericsConfig numerics;
    State initial;
    int diagnostics_cadence = 1;
    std::optional<ManufacturedSolution> sources;
    double compatibility_tol = 1e-10;
};

/// Runs the configured stepper from 0 to t_end with diagnostics at the given
/// cadence. Precondition failures and step failures become a terminal status,
/// never an exception.
RunResult simulate(const SimulationInput& input, const RecordSink& sink = {});

/// Reference profile at time t for the given variant (beta or psi branch).
ReferenceProfileSample reference_profile(const BoundaryData& bd, const SpatialGrid& grid,
                                         const ModelParams& params, double t, double psi);

}  // namespace chemolab
