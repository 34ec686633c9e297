#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemolab/csv.hpp"
#include "chemolab/harness.hpp"
#include "chemolab/lemmas.hpp"
#include "chemolab/numerics.hpp"

namespace {

using namespace chemolab;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRunFailure = 2;
constexpr int kExitLemmaViolation = 3;

std::vector<double> parse_value_list(const std::string& csv_list) {
    std::vector<double> out;
    std::stringstream ss(csv_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& csv_list) {
    std::vector<int> out;
    for (double v : parse_value_list(csv_list)) out.push_back(static_cast<int>(v));
    return out;
}

int cmd_simulate(const std::string& config, const std::string& output_root) {
    const RunArtifacts art = run_scenario_file(config, output_root);
    const RunResult& r = art.result;
    std::cout << "scenario: " << config << "\n"
              << "status:   " << run_status_name(r.status) << "\n"
              << "steps:    " << r.metadata.steps_taken << "\n"
              << "ba:       " << r.metadata.ba_verdict << "\n";
    if (!r.metadata.rejection_reason.empty())
        std::cout << "reason:   " << r.metadata.rejection_reason << "\n";
    if (!r.records.empty()) {
        const auto& last = r.records.back();
        std::cout << "final H1 deviation: " << (last.h1_u_dev + last.h1_v_dev) << "\n";
    }
    if (r.metadata.gronwall_cstar)
        std::cout << "gronwall C*: " << *r.metadata.gronwall_cstar << "\n";
    std::cout << "outputs:  " << art.paths.dir.string() << "\n";
    switch (r.status) {
        case RunStatus::Completed: return kExitOk;
        case RunStatus::Rejected: return kExitValidation;
        default: return kExitRunFailure;
    }
}

int cmd_sweep(const std::string& config, const std::string& axis, const std::string& values,
              int parallel, const std::string& output_root) {
    const SweepResult res = sweep(config, axis, parse_value_list(values), parallel, output_root);
    std::cout << res.csv();
    std::cout << "summary: " << res.summary_csv.string() << "\n";
    return kExitOk;
}

int cmd_convergence(const std::string& config, const std::string& grids, int reference) {
    const Scenario sc = load_scenario(config);
    try {
        const ConvergenceReport rep = convergence_study(sc, parse_int_list(grids), reference);
        std::cout << rep.table();
        return kExitOk;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRunFailure;
    }
}

int cmd_verify_lemmas(std::int64_t samples, std::uint64_t seed, double rho_max) {
    const LemmaId ids[] = {LemmaId::T1, LemmaId::T2, LemmaId::T3, LemmaId::T4, LemmaId::T5};
    bool ok = true;

    std::printf("%-6s %-14s %-24s %-10s %s\n", "lemma", "min residual", "at (rho, s)", "violations",
                "verdict");
    for (LemmaId id : ids) {
        const FuzzReport rep = fuzz_lemma(id, samples, seed, rho_max);
        const bool pass = rep.passed() && rep.min_residual >= -1e-12;
        ok = ok && pass;
        std::printf("%-6s %-14.3e (%.6g, %.6g)%*s %-10lld %s\n", lemma_name(id), rep.min_residual,
                    rep.worst.rho, rep.worst.s, 4, "", static_cast<long long>(rep.violations),
                    pass ? "pass" : "FAIL");
    }

    // Equality witnesses: rho = 1 for every lemma, the s = 2 identity line for
    // T1/T3, the s = 1 line for T4/T5, and the double root of the T2 bound.
    auto near_zero = [](double r) { return std::abs(r) <= 1e-10; };
    bool witnesses = true;
    for (LemmaId id : ids) {
        const double s_probe = (id == LemmaId::T1 || id == LemmaId::T3) ? 3.0
                               : (id == LemmaId::T2)                    ? 1.5
                               : (id == LemmaId::T4)                    ? 2.0
                                                                        : 0.5;
        const auto at_one = lemma_residual(id, 1.0, s_probe);
        if (id == LemmaId::T2) {
            // rho = 1 is not an equality point of T2; its touch point is rho*.
            witnesses = witnesses && at_one.residual >= 0.0;
        } else {
            witnesses = witnesses && near_zero(at_one.residual);
        }
    }
    for (double rho : {0.0, 0.5, 1.0, 2.5, 7.0, 10.0}) {
        witnesses = witnesses && near_zero(ineq_t1(rho, 2.0).residual);
        witnesses = witnesses && near_zero(ineq_t3(rho, 2.0).residual);
        witnesses = witnesses && near_zero(ineq_t4(rho, 1.0).residual);
        witnesses = witnesses && near_zero(ineq_t5(rho, 1.0).residual);
    }
    for (double s : {1.05, 1.25, 1.5, 1.75, 2.0}) {
        const double rho_star = t2_equality_rho(s);
        witnesses = witnesses && near_zero(ineq_t2(rho_star, s).residual);
    }
    std::printf("equality witnesses: %s\n", witnesses ? "pass" : "FAIL");

    return (ok && witnesses) ? kExitOk : kExitLemmaViolation;
}

int cmd_transform(const std::string& input, const std::string& direction, double anchor,
                  double sigma, double t, const std::string& out_path) {
    const std::string text = csv::read_file(input);
    std::istringstream is(text);
    std::string line;
    std::vector<double> xs, ys;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = csv::split(line);
        if (cells.size() < 2) throw ConfigError("transform: expected two columns (x, value)");
        if (first) {
            first = false;
            try {
                csv::parse(cells[0]);
            } catch (const Error&) {
                continue;  // header
            }
        }
        xs.push_back(csv::parse(cells[0]));
        ys.push_back(csv::parse(cells[1]));
    }
    if (xs.size() < 3) throw ConfigError("transform: needs at least three rows");
    const SpatialGrid grid(xs.front(), xs.back(), static_cast<int>(xs.size()));
    const Field in(grid, ys);

    Field out;
    if (direction == "forward")
        out = cole_hopf_forward(in, sigma, t);
    else if (direction == "inverse")
        out = cole_hopf_inverse(in, anchor);
    else
        throw ConfigError("transform: direction must be forward or inverse");

    std::ostringstream os;
    os << "x," << (direction == "forward" ? "v" : "c") << '\n';
    for (int i = 0; i < out.size(); ++i)
        os << csv::format(grid.node(i)) << ',' << csv::format(out[i]) << '\n';
    if (out_path.empty())
        std::cout << os.str();
    else
        csv::write_file(out_path, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D chemotaxis-growth simulation laboratory"};
    app.require_subcommand(1);

    std::string config, output_root, axis, values, grids_list, direction = "forward";
    std::string transform_input, transform_out;
    int parallel = 1, reference = 801;
    std::int64_t samples = 100000;
    std::uint64_t seed = 20240901;
    double rho_max = 1e3, anchor = 1.0, sigma = 0.0, t_shift = 0.0;

    auto* sim = app.add_subcommand("simulate", "run one scenario config");
    sim->add_option("config", config)->required();
    sim->add_option("--output-root", output_root);

    auto* sw = app.add_subcommand("sweep", "run a scenario across one parameter axis");
    sw->add_option("config", config)->required();
    sw->add_option("--axis", axis, "dotted path into the config, e.g. model.gamma")->required();
    sw->add_option("--values", values, "comma-separated values")->required();
    sw->add_option("--parallel", parallel);
    sw->add_option("--output-root", output_root);

    auto* conv = app.add_subcommand("convergence", "grid self-convergence study");
    conv->add_option("config", config)->required();
    conv->add_option("--grids", grids_list, "comma-separated node counts")->required();
    conv->add_option("--reference", reference)->required();

    auto* lem = app.add_subcommand("verify-lemmas", "fuzz the elementary inequalities");
    lem->add_option("--samples", samples);
    lem->add_option("--seed", seed);
    lem->add_option("--rho-max", rho_max);

    auto* tr = app.add_subcommand("transform", "log-gradient transform of a sampled field");
    tr->add_option("csv", transform_input)->required();
    tr->add_option("--direction", direction, "forward|inverse")->required();
    tr->add_option("--anchor", anchor, "left-endpoint value for the inverse direction");
    tr->add_option("--sigma", sigma);
    tr->add_option("--t", t_shift);
    tr->add_option("--out", transform_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config, output_root);
        if (sw->parsed()) return cmd_sweep(config, axis, values, parallel, output_root);
        if (conv->parsed()) return cmd_convergence(config, grids_list, reference);
        if (lem->parsed()) return cmd_verify_lemmas(samples, seed, rho_max);
        if (tr->parsed())
            return cmd_transform(transform_input, direction, anchor, sigma, t_shift, transform_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRunFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRunFailure;
    }
    return kExitValidation;
}
