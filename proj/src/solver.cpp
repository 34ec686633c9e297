#include "chemolab/solver.hpp"

#include <chrono>
#include <cmath>

#include "chemolab/numerics.hpp"

namespace chemolab {

namespace {

double pow_gamma(double base, double gamma) {
    if (gamma == 1.0) return base;
    if (gamma == 2.0) return base * base;
    return std::pow(base, gamma);
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (int i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

// Explicit interior tendency of the u equation: (uv)_x + u(1-u) (+ source).
std::vector<double> u_tendency(const State& s, const NumericsConfig& cfg,
                               const std::optional<ManufacturedSolution>& src) {
    const int n = s.u.size();
    const double h = s.u.grid.h();
    std::vector<double> tend(static_cast<std::size_t>(n), 0.0);
    const Field& u = s.u;
    const Field& v = s.v;
    for (int i = 1; i < n - 1; ++i) {
        double adv;
        if (cfg.advection_form == AdvectionForm::Conservative)
            adv = (u[i + 1] * v[i + 1] - u[i - 1] * v[i - 1]) / (2.0 * h);
        else
            adv = ((u[i + 1] - u[i - 1]) * v[i] + u[i] * (v[i + 1] - v[i - 1])) / (2.0 * h);
        double val = adv + u[i] * (1.0 - u[i]);
        if (src) val += src->source_u(s.u.grid.node(i), s.t);
        tend[static_cast<std::size_t>(i)] = val;
    }
    return tend;
}

// Explicit interior tendency of the parabolic v equation: (v^2 + u^gamma)_x (+ source).
std::vector<double> v_tendency_pp(const State& s, double gamma,
                                  const std::optional<ManufacturedSolution>& src) {
    const int n = s.v.size();
    const double h = s.v.grid.h();
    std::vector<double> flux(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        flux[static_cast<std::size_t>(i)] = s.v[i] * s.v[i] + pow_gamma(s.u[i], gamma);
    std::vector<double> tend(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i < n - 1; ++i) {
        double val = (flux[static_cast<std::size_t>(i + 1)] - flux[static_cast<std::size_t>(i - 1)]) /
                     (2.0 * h);
        if (src) val += src->source_v(s.v.grid.node(i), s.t);
        tend[static_cast<std::size_t>(i)] = val;
    }
    return tend;
}

struct ParabolicUpdate {
    Field next;
    double linear_residual = 0.0;
};

// Advances one field with implicit diffusion and the given explicit tendency,
// in increment form: (I - dt L) delta = dt (L f + tendency), Dirichlet rows
// pinned so delta at the ends is exactly (target - current). The increment
// form makes constant equilibria exact fixed points of the discrete update.
ParabolicUpdate advance_parabolic(const Field& f, const std::vector<double>& tendency,
                                  double left_target, double right_target,
                                  const NumericsConfig& cfg) {
    const int n = f.size();
    const double h = f.grid.h();
    const double dt = cfg.dt;
    ParabolicUpdate out;
    out.next = Field(f.grid);

    if (cfg.scheme == Scheme::FullyExplicit) {
        for (int i = 1; i < n - 1; ++i) {
            const double lap = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / (h * h);
            out.next[i] = f[i] + dt * (lap + tendency[static_cast<std::size_t>(i)]);
        }
        out.next[0] = left_target;
        out.next[n - 1] = right_target;
        return out;
    }

    const double r = dt / (h * h);
    Tridiagonal A(n);
    std::vector<double> rhs(static_cast<std::size_t>(n));
    A.diag[0] = 1.0;
    A.upper[0] = 0.0;
    rhs[0] = left_target - f[0];
    for (int i = 1; i < n - 1; ++i) {
        A.lower[static_cast<std::size_t>(i)] = -r;
        A.diag[static_cast<std::size_t>(i)] = 1.0 + 2.0 * r;
        A.upper[static_cast<std::size_t>(i)] = -r;
        const double lap = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / (h * h);
        rhs[static_cast<std::size_t>(i)] = dt * (lap + tendency[static_cast<std::size_t>(i)]);
    }
    A.diag[static_cast<std::size_t>(n - 1)] = 1.0;
    A.lower[static_cast<std::size_t>(n - 1)] = 0.0;
    rhs[static_cast<std::size_t>(n - 1)] = right_target - f[n - 1];

    const std::vector<double> delta = A.solve(rhs);
    out.linear_residual = A.residual_inf(delta, rhs);
    for (int i = 0; i < n; ++i) out.next[i] = f[i] + delta[static_cast<std::size_t>(i)];
    return out;
}

StepStatus classify(const Field& u_new, const Field& v_new, double floor) {
    if (!u_new.all_finite() || !v_new.all_finite()) return StepStatus::StepUnstable;
    if (!(u_new.min() > floor)) return StepStatus::PositivityLost;
    return StepStatus::Ok;
}

}  // namespace

Field hyperbolic_flux_divergence(const Field& g, HyperbolicFlux mode, const Field& wind) {
    const int n = g.size();
    const double h = g.grid.h();
    Field d(g.grid);
    // Endpoint half-cell balances: with trapezoid weights the mean of d
    // telescopes exactly to (g_last - g_first) / (b - a).
    d[0] = (g[1] - g[0]) / h;
    d[n - 1] = (g[n - 1] - g[n - 2]) / h;
    if (mode == HyperbolicFlux::Central) {
        for (int i = 1; i < n - 1; ++i) d[i] = (g[i + 1] - g[i - 1]) / (2.0 * h);
    } else {
        for (int i = 1; i < n - 1; ++i)
            d[i] = (wind[i] >= 0.0) ? (g[i] - g[i - 1]) / h : (g[i + 1] - g[i]) / h;
    }
    return d;
}

double stability_dt_cap(const NumericsConfig& cfg, const ModelParams& params,
                        const State& initial, const AlphaBounds& bounds) {
    const double h = initial.u.grid.h();
    double cap = std::numeric_limits<double>::infinity();
    if (cfg.scheme == Scheme::FullyExplicit) cap = std::min(cap, 0.5 * h * h);
    const double vmax = max_abs(initial.v);
    if (vmax > 1e-12) cap = std::min(cap, h / vmax);
    double umax = std::max(initial.u.max(), bounds.upper);
    cap = std::min(cap, 1.0 / std::max(1.0, std::abs(1.0 - 2.0 * umax)));  // logistic term
    // Explicit coupling of the (u^gamma)_x / (uv)_x pair; k-independent bound.
    cap = std::min(cap, 1.0 / (params.gamma * pow_gamma(umax, params.gamma) + 1.0));
    if (params.variant == Variant::ParabolicHyperbolic && cfg.v_grid_dissipation > 0.0)
        cap = std::min(cap, 0.5 / cfg.v_grid_dissipation);  // explicit grid-dissipation step
    return cfg.cfl_safety * cap;
}

StepResult step_pp(const State& s, const BoundaryData& bd, const ModelParams& params,
                   const NumericsConfig& cfg, const std::optional<ManufacturedSolution>& sources) {
    if (params.variant != Variant::ParabolicParabolic)
        throw InvalidParams("step_pp: model variant is not parabolic-parabolic");
    if (!bd.has_beta()) throw MissingBetaSignals("step_pp: beta boundary signals required");

    const double t_new = s.t + cfg.dt;
    const auto u_upd = advance_parabolic(s.u, u_tendency(s, cfg, sources), bd.alpha1(t_new),
                                         bd.alpha2(t_new), cfg);
    const auto v_upd = advance_parabolic(s.v, v_tendency_pp(s, params.gamma, sources),
                                         bd.beta1->value(t_new), bd.beta2->value(t_new), cfg);

    StepResult out;
    out.status = classify(u_upd.next, v_upd.next, cfg.positivity_floor);
    out.report.t_new = t_new;
    out.report.min_u = u_upd.next.values.empty() ? 0.0 : u_upd.next.min();
    out.report.max_u = u_upd.next.values.empty() ? 0.0 : u_upd.next.max();
    out.report.cfl_used = cfg.dt * max_abs(s.v) / s.u.grid.h();
    out.report.linear_solve_residual = std::max(u_upd.linear_residual, v_upd.linear_residual);
    out.state = State{};
    out.state.t = t_new;
    out.state.u = std::move(u_upd.next);
    out.state.v = std::move(v_upd.next);
    return out;
}

PhStepResult step_ph(const State& s, double psi, const BoundaryData& bd,
                     const ModelParams& params, const NumericsConfig& cfg,
                     const std::optional<ManufacturedSolution>& sources) {
    if (params.variant != Variant::ParabolicHyperbolic)
        throw InvalidParams("step_ph: model variant is not parabolic-hyperbolic");

    const int n = s.u.size();
    const double dt = cfg.dt;
    const double t_new = s.t + dt;
    const double length = s.u.grid.length();

    const auto u_upd = advance_parabolic(s.u, u_tendency(s, cfg, sources), bd.alpha1(t_new),
                                         bd.alpha2(t_new), cfg);

    Field g_old(s.u.grid), g_new(s.u.grid);
    for (int i = 0; i < n; ++i) {
        g_old[i] = pow_gamma(s.u[i], params.gamma);
        g_new[i] = pow_gamma(u_upd.next[i], params.gamma);
    }
    const Field d_old = hyperbolic_flux_divergence(g_old, cfg.hyperbolic_flux, s.v);
    const Field d_new = hyperbolic_flux_divergence(g_new, cfg.hyperbolic_flux, s.v);

    // Zero-mean grid dissipation: interface fluxes with zero end flux, so the
    // trapezoid mean of the whole term telescopes to exactly zero.
    std::vector<double> dissipation(static_cast<std::size_t>(n), 0.0);
    if (cfg.v_grid_dissipation > 0.0) {
        const double h = s.v.grid.h();
        const double eps = cfg.v_grid_dissipation * h * h;
        std::vector<double> q(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i)
            q[static_cast<std::size_t>(i)] = (s.v[i + 1] - s.v[i]) / h;
        dissipation[0] = eps * q[0] / (0.5 * h);
        for (int i = 1; i < n - 1; ++i)
            dissipation[static_cast<std::size_t>(i)] =
                eps * (q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i - 1)]) / h;
        dissipation[static_cast<std::size_t>(n - 1)] =
            -eps * q[static_cast<std::size_t>(n - 2)] / (0.5 * h);
    }

    Field v_new(s.v.grid);
    for (int i = 0; i < n; ++i) {
        double inc = 0.5 * dt * (d_old[i] + d_new[i]) +
                     dt * dissipation[static_cast<std::size_t>(i)];
        if (sources) {
            const double x = s.v.grid.node(i);
            inc += 0.5 * dt * (sources->source_v(x, s.t) + sources->source_v(x, t_new));
        }
        v_new[i] = s.v[i] + inc;
    }
    // One trapezoid increment of the boundary flux difference; evaluated from
    // the same g arrays as the v update, so the zero-mass telescoping is exact.
    const double psi_new =
        psi + 0.5 * dt * ((g_old[n - 1] - g_old[0]) + (g_new[n - 1] - g_new[0])) / length;

    PhStepResult out;
    out.status = classify(u_upd.next, v_new, cfg.positivity_floor);
    out.report.t_new = t_new;
    out.report.min_u = u_upd.next.min();
    out.report.max_u = u_upd.next.max();
    out.report.cfl_used = dt * max_abs(s.v) / s.u.grid.h();
    out.report.linear_solve_residual = u_upd.linear_residual;
    out.psi = psi_new;
    out.state = State{};
    out.state.t = t_new;
    out.state.u = std::move(u_upd.next);
    out.state.v = std::move(v_new);
    return out;
}

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "Completed";
        case RunStatus::PositivityLost: return "PositivityLost";
        case RunStatus::StepUnstable: return "StepUnstable";
        case RunStatus::Rejected: return "Rejected";
    }
    return "?";
}

ReferenceProfileSample reference_profile(const BoundaryData& bd, const SpatialGrid& grid,
                                         const ModelParams& params, double t, double psi) {
    ReferenceProfileSample p;
    p.t = t;
    p.alpha = alpha_profile(bd, grid, t);
    if (params.variant == Variant::ParabolicParabolic)
        p.beta = beta_profile(bd, grid, t);
    else
        p.psi = psi;
    return p;
}

RunResult simulate(const SimulationInput& input, const RecordSink& sink) {
    const auto wall_start = std::chrono::steady_clock::now();

    RunResult result;
    result.final_state = input.initial;
    result.metadata.n = input.initial.u.grid.n;
    result.metadata.dt = input.numerics.dt;
    result.metadata.t_end = input.numerics.t_end;

    auto finish = [&](RunStatus status) {
        result.status = status;
        result.metadata.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
        return result;
    };
    auto reject = [&](const std::string& why) {
        result.metadata.rejection_reason = why;
        return finish(RunStatus::Rejected);
    };

    try {
        input.params.validate();
    } catch (const Error& e) {
        return reject(e.what());
    }
    if (input.params.variant == Variant::ParabolicParabolic && !input.boundary.has_beta())
        return reject("parabolic-parabolic run requires beta boundary signals");
    if (input.params.variant == Variant::ParabolicHyperbolic && input.boundary.has_beta())
        return reject("parabolic-hyperbolic run must not carry beta boundary signals");
    if (!(input.numerics.dt > 0.0) || !(input.numerics.t_end > 0.0))
        return reject("numerics: dt and t_end must be positive");
    if (!(input.numerics.cfl_safety > 0.0) || input.numerics.cfl_safety > 1.0)
        return reject("numerics: cfl_safety must lie in (0, 1]");
    if (input.diagnostics_cadence < 1) return reject("diagnostics cadence must be >= 1");

    if (input.params.outside_theory())
        result.metadata.theory_flags.push_back("hyperbolic-gamma-outside-theory");

    // Run-horizon alpha witnesses, sampled at 10x the stepper density.
    const AlphaBounds bounds = sample_alpha_bounds(input.boundary, input.numerics.t_end,
                                                   input.numerics.dt / 10.0);
    result.metadata.alpha_lower = bounds.lower;
    result.metadata.alpha_upper = bounds.upper;
    result.metadata.alpha_sample_dt = bounds.sample_dt;
    if (!(bounds.lower > 0.0))
        return reject("boundary data violates the positive lower bound on alpha");

    const BaReport ba = ba_integrability_check(
        input.boundary, std::max(50.0, input.numerics.t_end), std::min(0.01, input.numerics.dt));
    result.metadata.ba_verdict = ba.verdict();

    const CompatibilityReport compat =
        check_compatibility(input.initial, input.boundary, input.compatibility_tol);
    if (!compat.ok()) return reject("incompatible initial data: " + compat.summary());

    const double dt_cap =
        stability_dt_cap(input.numerics, input.params, input.initial, bounds);
    if (input.numerics.dt > dt_cap)
        return reject("dt " + std::to_string(input.numerics.dt) +
                      " exceeds the stability budget " + std::to_string(dt_cap));

    const long long steps = std::llround(input.numerics.t_end / input.numerics.dt);
    if (steps < 1) return reject("t_end shorter than one time step");
    if (std::abs(static_cast<double>(steps) * input.numerics.dt - input.numerics.t_end) >
        1e-9 * std::max(1.0, input.numerics.t_end))
        return reject("dt must divide t_end so the run ends exactly at the horizon");

    const bool hyperbolic = input.params.variant == Variant::ParabolicHyperbolic;
    double psi = hyperbolic ? trapezoid_mean(input.initial.v) : 0.0;

    State state = input.initial;
    auto record_at = [&](const State& st) {
        const ReferenceProfileSample profile =
            reference_profile(input.boundary, st.u.grid, input.params, st.t, psi);
        DiagnosticsRecord rec = make_record(st, profile, input.boundary, input.params, bounds);
        result.records.push_back(rec);
        if (sink) sink(rec);
    };
    record_at(state);
    result.metadata.initial_h1_total =
        result.records.front().h1_u_dev + result.records.front().h1_v_dev;

    RunStatus status = RunStatus::Completed;
    for (long long k = 1; k <= steps; ++k) {
        StepStatus step_status;
        if (hyperbolic) {
            PhStepResult r = step_ph(state, psi, input.boundary, input.params, input.numerics,
                                     input.sources);
            state = std::move(r.state);
            psi = r.psi;
            step_status = r.status;
        } else {
            StepResult r = step_pp(state, input.boundary, input.params, input.numerics,
                                   input.sources);
            state = std::move(r.state);
            step_status = r.status;
        }
        if (step_status != StepStatus::Ok) {
            status = (step_status == StepStatus::PositivityLost) ? RunStatus::PositivityLost
                                                                 : RunStatus::StepUnstable;
            break;
        }
        if (k % input.diagnostics_cadence == 0 || k == steps) record_at(state);
        result.metadata.steps_taken = k;
    }

    result.final_state = state;
    if (hyperbolic) result.metadata.final_psi = psi;
    if (status == RunStatus::Completed && result.records.size() >= 2) {
        const GronwallLedger ledger = fit_gronwall(result.records);
        result.metadata.gronwall_cstar = ledger.cstar;
        if (ledger.cstar.has_value()) fill_ledger_rhs(result.records, *ledger.cstar);
    }
    return finish(status);
}

}  // namespace chemolab
