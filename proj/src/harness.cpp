#include "chemolab/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "chemolab/csv.hpp"
#include "chemolab/numerics.hpp"

namespace chemolab {

std::filesystem::path resolve_output_root(const std::string& override_root) {
    if (!override_root.empty()) return override_root;
    if (const char* env = std::getenv("CHEMOLAB_OUTPUT_ROOT")) return env;
    return std::filesystem::current_path();
}

std::string final_state_csv(const RunResult& result, const BoundaryData& bd,
                            const ModelParams& params) {
    const State& s = result.final_state;
    const SpatialGrid& grid = s.u.grid;
    const bool hyperbolic = params.variant == Variant::ParabolicHyperbolic;

    const Field alpha = alpha_profile(bd, grid, s.t);
    Field ref_v(grid);
    if (hyperbolic) {
        const double psi = result.metadata.final_psi.value_or(trapezoid_mean(s.v));
        for (int i = 0; i < grid.n; ++i) ref_v[i] = psi;
    } else {
        ref_v = beta_profile(bd, grid, s.t);
    }

    std::ostringstream os;
    os << "x,u,v,alpha," << (hyperbolic ? "psi" : "beta") << '\n';
    for (int i = 0; i < grid.n; ++i) {
        os << csv::format(grid.node(i)) << ',' << csv::format(s.u[i]) << ','
           << csv::format(s.v[i]) << ',' << csv::format(alpha[i]) << ','
           << csv::format(ref_v[i]) << '\n';
    }
    return os.str();
}

State parse_final_state_csv(const std::string& text, double t) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("final state CSV: empty file");
    std::vector<double> xs, us, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = csv::split(line);
        if (cells.size() < 3) throw ConfigError("final state CSV: expected x,u,v columns");
        xs.push_back(csv::parse(cells[0]));
        us.push_back(csv::parse(cells[1]));
        vs.push_back(csv::parse(cells[2]));
    }
    if (xs.size() < 3) throw ConfigError("final state CSV: too few rows");
    const SpatialGrid grid(xs.front(), xs.back(), static_cast<int>(xs.size()));
    return State(t, Field(grid, us), Field(grid, vs));
}

std::optional<double> time_to_threshold(const std::vector<DiagnosticsRecord>& records,
                                        double threshold_fraction) {
    if (records.empty()) return std::nullopt;
    const double initial = records.front().h1_u_dev + records.front().h1_v_dev;
    if (!(initial > 0.0)) return records.front().t;
    for (const auto& r : records)
        if (r.h1_u_dev + r.h1_v_dev < threshold_fraction * initial) return r.t;
    return std::nullopt;
}

namespace {

nlohmann::json metadata_json(const Scenario& sc, const RunResult& result) {
    const RunMetadata& m = result.metadata;
    nlohmann::json j;
    j["scenario"] = sc.name;
    j["status"] = run_status_name(result.status);
    j["grid_n"] = m.n;
    j["dt"] = m.dt;
    j["t_end"] = m.t_end;
    j["steps_taken"] = m.steps_taken;
    j["wall_seconds"] = m.wall_seconds;
    j["alpha_lower"] = m.alpha_lower;
    j["alpha_upper"] = m.alpha_upper;
    j["alpha_sample_dt"] = m.alpha_sample_dt;
    j["ba_verdict"] = m.ba_verdict;
    j["theory_flags"] = m.theory_flags;
    j["initial_h1_total"] = m.initial_h1_total;
    if (m.gronwall_cstar)
        j["gronwall_cstar"] = *m.gronwall_cstar;
    else
        j["gronwall_cstar"] = nullptr;
    if (m.final_psi) j["final_psi"] = *m.final_psi;
    if (!m.rejection_reason.empty()) j["rejection_reason"] = m.rejection_reason;
    const auto ttt = time_to_threshold(result.records);
    if (ttt)
        j["time_to_threshold"] = *ttt;
    else
        j["time_to_threshold"] = nullptr;
    return j;
}

}  // namespace

RunArtifacts run_scenario(const Scenario& sc, const std::string& output_root) {
    RunArtifacts art;
    art.paths.dir = resolve_output_root(output_root) / sc.output_dir;
    std::filesystem::create_directories(art.paths.dir);
    art.paths.diagnostics_csv = art.paths.dir / "diagnostics.csv";
    art.paths.final_state_csv = art.paths.dir / "final_state.csv";
    art.paths.run_json = art.paths.dir / "run.json";

    const SimulationInput input = build_simulation_input(sc);
    art.result = simulate(input);

    if (!art.result.records.empty()) {
        csv::write_file(art.paths.diagnostics_csv.string(), diagnostics_csv(art.result.records));
        csv::write_file(art.paths.final_state_csv.string(),
                        final_state_csv(art.result, input.boundary, input.params));
    }
    csv::write_file(art.paths.run_json.string(), metadata_json(sc, art.result).dump(2) + "\n");
    return art;
}

RunArtifacts run_scenario_file(const std::filesystem::path& config_path,
                               const std::string& output_root) {
    return run_scenario(load_scenario(config_path), output_root);
}

std::string ConvergenceReport::table() const {
    std::ostringstream os;
    os << "n,u_error,v_error\n";
    for (std::size_t i = 0; i < grids.size(); ++i)
        os << grids[i] << ',' << csv::format(u_errors[i]) << ',' << csv::format(v_errors[i])
           << '\n';
    if (degenerate) {
        os << "degenerate: errors below floor\n";
        return os.str();
    }
    for (std::size_t i = 0; i + 1 < grids.size(); ++i)
        os << "order " << grids[i] << "->" << grids[i + 1] << ": u " << csv::format(u_orders[i])
           << ", v " << csv::format(v_orders[i]) << '\n';
    return os.str();
}

namespace {

double shared_node_l2_error(const Field& coarse, const Field& fine) {
    const int stride = (fine.grid.n - 1) / (coarse.grid.n - 1);
    Field diff(coarse.grid);
    for (int i = 0; i < coarse.grid.n; ++i) {
        const double d = coarse[i] - fine[i * stride];
        diff[i] = d * d;
    }
    return std::sqrt(trapezoid(diff));
}

RunResult run_at_resolution(const Scenario& sc, int n) {
    Scenario copy = sc;
    copy.numerics.n = n;
    const double base = static_cast<double>(sc.numerics.n - 1) / static_cast<double>(n - 1);
    const double scaled = sc.numerics.dt * base * base;
    // Snap dt so it divides t_end; all runs then end at exactly the same time.
    const double steps = std::ceil(sc.numerics.t_end / scaled - 1e-12);
    copy.numerics.dt = sc.numerics.t_end / steps;
    return simulate(build_simulation_input(copy));
}

}  // namespace

ConvergenceReport convergence_study(const Scenario& sc, const std::vector<int>& grids,
                                    int reference_n) {
    if (grids.empty()) throw InvalidParams("convergence_study: no grids given");
    int max_n = 0;
    for (int n : grids) {
        if (n < 3) throw InvalidParams("convergence_study: grids must have n >= 3");
        max_n = std::max(max_n, n);
        if ((reference_n - 1) % (n - 1) != 0)
            throw InvalidParams("convergence_study: grid n=" + std::to_string(n) +
                                " does not nest into the reference");
    }
    if (reference_n < 2 * max_n - 1)
        throw InvalidParams("convergence_study: reference must be at least twice the finest grid");

    ConvergenceReport rep;
    rep.grids = grids;
    std::sort(rep.grids.begin(), rep.grids.end());
    rep.reference_n = reference_n;

    const RunResult ref = run_at_resolution(sc, reference_n);
    if (ref.status != RunStatus::Completed)
        throw Error(std::string("convergence_study: reference run failed: ") +
                    run_status_name(ref.status) + " " + ref.metadata.rejection_reason);

    for (int n : rep.grids) {
        const RunResult run = run_at_resolution(sc, n);
        if (run.status != RunStatus::Completed)
            throw Error("convergence_study: run at n=" + std::to_string(n) +
                        " failed: " + run_status_name(run.status) + " " +
                        run.metadata.rejection_reason);
        rep.u_errors.push_back(shared_node_l2_error(run.final_state.u, ref.final_state.u));
        rep.v_errors.push_back(shared_node_l2_error(run.final_state.v, ref.final_state.v));
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < rep.grids.size(); ++i)
        worst = std::max({worst, rep.u_errors[i], rep.v_errors[i]});
    if (worst < 1e-12) {
        rep.degenerate = true;
        return rep;
    }

    for (std::size_t i = 0; i + 1 < rep.grids.size(); ++i) {
        const double hr = static_cast<double>(rep.grids[i + 1] - 1) /
                          static_cast<double>(rep.grids[i] - 1);  // h_i / h_{i+1}
        rep.u_orders.push_back(std::log(rep.u_errors[i] / rep.u_errors[i + 1]) / std::log(hr));
        rep.v_orders.push_back(std::log(rep.v_errors[i] / rep.v_errors[i + 1]) / std::log(hr));
    }
    return rep;
}

std::string SweepResult::csv() const {
    std::ostringstream os;
    os << "value,status,final_h1_dev,gronwall_cstar,time_to_threshold,ba_verdict\n";
    for (const auto& r : rows) {
        os << csv::format(r.value) << ',' << run_status_name(r.status) << ','
           << csv::format_optional(r.final_h1_dev) << ','
           << csv::format_optional(r.gronwall_cstar) << ','
           << csv::format_optional(r.time_to_threshold) << ',' << r.ba_verdict << '\n';
    }
    return os.str();
}

SweepResult sweep(const std::filesystem::path& config_path, const std::string& axis,
                  const std::vector<double>& values, int parallelism,
                  const std::string& output_root) {
    if (values.empty()) throw ConfigError("sweep: no axis values given");
    if (parallelism < 1) throw ConfigError("sweep: parallelism must be >= 1");

    const std::string base_text = csv::read_file(config_path.string());
    nlohmann::json base_json;
    try {
        base_json = nlohmann::json::parse(base_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("sweep: config parse error: ") + e.what());
    }

    std::string pointer = "/" + axis;
    for (auto& ch : pointer)
        if (ch == '.') ch = '/';
    const nlohmann::json::json_pointer jp(pointer);
    if (!base_json.contains(jp))
        throw ConfigError("sweep: axis path '" + axis + "' not found in config");
    if (!base_json.at(jp).is_number())
        throw ConfigError("sweep: axis path '" + axis + "' is not a numeric field");

    std::string axis_tag = axis;
    for (auto& ch : axis_tag)
        if (ch == '.') ch = '-';

    SweepResult result;
    result.axis = axis;
    result.rows.resize(values.size());

    auto run_one = [&](std::size_t idx) {
        SweepRow row;
        row.value = values[idx];
        char vbuf[32];
        std::snprintf(vbuf, sizeof(vbuf), "%g", values[idx]);
        try {
            nlohmann::json j = base_json;
            j[jp] = values[idx];
            const std::string sweep_dir =
                j.at("name").get<std::string>() + "-sweep/" + axis_tag + "=" + vbuf;
            j["output_dir"] = sweep_dir;
            Scenario sc = parse_scenario_json(j.dump(), config_path.parent_path());
            const RunArtifacts art = run_scenario(sc, output_root);
            row.status = art.result.status;
            row.ba_verdict = art.result.metadata.ba_verdict;
            row.gronwall_cstar = art.result.metadata.gronwall_cstar;
            row.time_to_threshold = time_to_threshold(art.result.records);
            if (!art.result.records.empty()) {
                const auto& last = art.result.records.back();
                row.final_h1_dev = last.h1_u_dev + last.h1_v_dev;
            }
        } catch (const std::exception& e) {
            row.status = RunStatus::Rejected;
            row.ba_verdict = std::string("error: ") + e.what();
        }
        result.rows[idx] = row;
    };

    if (parallelism == 1) {
        for (std::size_t i = 0; i < values.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= values.size()) return;
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        const int nthreads = std::min<int>(parallelism, static_cast<int>(values.size()));
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const std::filesystem::path sweep_root =
        resolve_output_root(output_root) /
        (base_json.at("name").get<std::string>() + "-sweep");
    std::filesystem::create_directories(sweep_root);
    result.summary_csv = sweep_root / "sweep.csv";
    csv::write_file(result.summary_csv.string(), result.csv());
    return result;
}

}  // namespace chemolab
