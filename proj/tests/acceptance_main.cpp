// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "chemolab/csv.hpp"
#include "chemolab/harness.hpp"
#include "chemolab/lemmas.hpp"
#include "chemolab/numerics.hpp"

using namespace chemolab;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what, detail.c_str());
    if (!ok) ++g_failures;
}

fs::path out_root() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() / "chemolab-acceptance";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_lemmas() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    for (LemmaId id : {LemmaId::T1, LemmaId::T2, LemmaId::T3, LemmaId::T4, LemmaId::T5}) {
        const FuzzReport rep = fuzz_lemma(id, 100000, 20240901, 1e3);
        ok = ok && rep.violations == 0 && rep.min_residual >= -1e-12;
        worst = std::min(worst, rep.min_residual);
    }
    auto near_zero = [](double r) { return std::abs(r) <= 1e-10; };
    bool witnesses = near_zero(ineq_t1(1.0, 4.0).residual) &&
                     near_zero(ineq_t3(1.0, 2.5).residual) &&
                     near_zero(ineq_t4(1.0, 3.0).residual) &&
                     near_zero(ineq_t5(1.0, 0.7).residual);
    for (double rho : {0.0, 0.5, 2.0, 10.0}) {
        witnesses = witnesses && near_zero(ineq_t1(rho, 2.0).residual);
        witnesses = witnesses && near_zero(ineq_t3(rho, 2.0).residual);
        witnesses = witnesses && near_zero(ineq_t4(rho, 1.0).residual);
        witnesses = witnesses && near_zero(ineq_t5(rho, 1.0).residual);
    }
    for (double s : {1.1, 1.5, 2.0})
        witnesses = witnesses && near_zero(ineq_t2(t2_equality_rho(s), s).residual);
    const double secs = elapsed_s(t0);
    report(1, "lemma fuzz, 1e5 samples each, with equality witnesses", ok && witnesses && secs < 5.0,
           fmt("min residual %.2e, %.2f s", worst, secs));
}

// --- criterion 2 -----------------------------------------------------------

void criterion_equilibrium() {
    bool ok = true;
    double worst = 0.0;
    for (const char* name : {"equilibrium", "equilibrium-ph"}) {
        const Scenario sc = load_bundled_scenario(name);
        const RunResult r = simulate(build_simulation_input(sc));
        ok = ok && r.status == RunStatus::Completed;
        for (int i = 0; i < r.final_state.u.size(); ++i) {
            worst = std::max(worst, std::abs(r.final_state.u[i] - 1.0));
            worst = std::max(worst, std::abs(r.final_state.v[i]));
        }
        for (const auto& rec : r.records)
            worst = std::max({worst, rec.l2_u_dev, rec.l2_v_dev, rec.h1_u_dev, rec.h1_v_dev});
    }
    report(2, "equilibrium is a fixed point to 1e-13", ok && worst <= 1e-13,
           fmt("max deviation %.2e", worst));
}

// --- criteria 3, 4, 9 ------------------------------------------------------

struct DecayOutcome {
    RunResult run;
    bool completed = false;
    double ratio = 0.0;
    double entropy_bound_margin = 0.0;
    bool entropy_bounded = false;
};

DecayOutcome run_decay(const std::string& name, int n) {
    Scenario sc = load_bundled_scenario(name);
    sc.numerics.n = n;
    DecayOutcome out;
    out.run = simulate(build_simulation_input(sc));
    out.completed = out.run.status == RunStatus::Completed;
    if (!out.completed || out.run.records.empty()) return out;
    const auto& first = out.run.records.front();
    const auto& last = out.run.records.back();
    const double h1_0 = first.h1_u_dev + first.h1_v_dev;
    out.ratio = (last.h1_u_dev + last.h1_v_dev) / h1_0;
    const double bound = 2.0 * first.entropy + 1e-9;  // frozen run-constant
    double max_e = -1e300;
    for (const auto& rec : out.run.records) max_e = std::max(max_e, rec.entropy);
    out.entropy_bounded = max_e <= bound;
    out.entropy_bound_margin = bound - max_e;
    return out;
}

void criterion_thm1(DecayOutcome& g1, DecayOutcome& g2) {
    g1 = run_decay("thm1-decay-g1", 201);
    g2 = run_decay("thm1-decay-g2", 201);
    const bool ok = g1.completed && g2.completed && g1.ratio <= 1e-2 && g2.ratio <= 1e-2 &&
                    g1.entropy_bounded && g2.entropy_bounded;
    report(3, "parabolic-parabolic decay, gamma 1 and 2", ok,
           fmt("H1 ratios %.2e / %.2e, entropies bounded", g1.ratio, g2.ratio));
}

void criterion_thm2(DecayOutcome& g1, DecayOutcome& g2) {
    g1 = run_decay("thm2-decay-g1", 201);
    g2 = run_decay("thm2-decay-g2", 201);
    bool mass_ok = true;
    double worst_mass = 0.0;
    for (const DecayOutcome* o : {&g1, &g2})
        for (const auto& rec : o->run.records) {
            const double scaled = std::abs(rec.vtilde_mean) / (1.0 + rec.t);
            worst_mass = std::max(worst_mass, scaled);
            mass_ok = mass_ok && std::abs(rec.vtilde_mean) <= 1e-10 * (1.0 + rec.t);
        }
    const bool ok =
        g1.completed && g2.completed && g1.ratio <= 1e-2 && g2.ratio <= 1e-2 && mass_ok;
    report(4, "hyperbolic decay with exact zero-mass, gamma 1 and 2", ok,
           fmt("H1 ratios %.2e / %.2e, max |mass|/(1+t) %.2e", g1.ratio, g2.ratio, worst_mass));
}

void criterion_damped(const DecayOutcome& g2) {
    bool lower_ok = true, trend_ok = false;
    double worst = 1e300;
    if (g2.completed && !g2.run.records.empty()) {
        for (const auto& rec : g2.run.records) {
            if (!rec.K.has_value()) {
                lower_ok = false;
                break;
            }
            const double margin = *rec.K - rec.v_dissipation / 8.0;  // 1/(4 gamma), gamma = 2
            worst = std::min(worst, margin);
            lower_ok = lower_ok && margin >= -1e-10;
        }
        const auto& first = g2.run.records.front();
        const auto& last = g2.run.records.back();
        trend_ok = first.K.has_value() && last.K.has_value() && *last.K <= *first.K;
    }
    report(9, "hyperbolic damped-equation diagnostics (gamma 2)", lower_ok && trend_ok,
           fmt("min K - ||v~_x||^2/(4g) margin %.2e, K decreasing", worst));
}

// --- criterion 5 -----------------------------------------------------------

void criterion_ledger() {
    bool finite = true, stable = true;
    std::string detail;
    for (const char* name : {"thm1-decay-g1", "thm1-decay-g2", "thm2-decay-g1", "thm2-decay-g2"}) {
        double cstar[2];
        const int ns[2] = {101, 201};
        for (int k = 0; k < 2; ++k) {
            Scenario sc = load_bundled_scenario(name);
            sc.numerics.n = ns[k];
            const RunResult r = simulate(build_simulation_input(sc));
            if (r.status != RunStatus::Completed || !r.metadata.gronwall_cstar) {
                finite = false;
                cstar[k] = -1.0;
                continue;
            }
            cstar[k] = *r.metadata.gronwall_cstar;
        }
        if (finite) {
            const double denom = std::max(std::abs(cstar[1]), 1e-12);
            if (std::abs(cstar[0] - cstar[1]) > 0.2 * denom) stable = false;
        }
        detail += fmt("%.3g/%.3g ", cstar[0], cstar[1]);
    }

    // Frozen equilibrium boundary data (X = 0) with interior bumps: the
    // ledger must enforce G(t) <= G(0) + 1e-10 at every sample.
    Scenario sc = load_bundled_scenario("thm1-decay-g1");
    sc.boundary.alpha1 = {"constant", 1.0, 0.0, 0.0, 0.0, 0.0, ""};
    sc.boundary.alpha2 = sc.boundary.alpha1;
    sc.boundary.beta1 = BoundarySignalSpec{"constant", 0.0, 0.0, 0.0, 0.0, 0.0, ""};
    sc.boundary.beta2 = sc.boundary.beta1;
    sc.initial.u_amplitude = 0.3;
    sc.initial.v_amplitude = 0.2;
    sc.numerics.n = 101;
    sc.numerics.t_end = 10.0;
    const RunResult r = simulate(build_simulation_input(sc));
    bool zero_forcing_ok = r.status == RunStatus::Completed;
    if (zero_forcing_ok) {
        const double g0 = r.records.front().ledger_lhs;
        for (const auto& rec : r.records)
            zero_forcing_ok = zero_forcing_ok && rec.ledger_lhs <= g0 + 1e-10;
        zero_forcing_ok = zero_forcing_ok && gronwall_holds(r.records, 0.0);
    }

    report(5, "Gronwall ledger: finite stable C*, monotone under zero forcing",
           finite && stable && zero_forcing_ok, "C* at n=101/201: " + detail);
}

// --- criterion 6 -----------------------------------------------------------

void criterion_entropy_fuzz() {
    const auto t0 = std::chrono::steady_clock::now();
    SpatialGrid g(0.0, 1.0, 101);
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> endpoint(0.2, 3.0);
    std::uniform_real_distribution<double> logu(std::log(0.05), std::log(9.0));

    bool ok = true;
    double min_e1 = 1e300, worst_a16 = -1e300, worst_n65 = -1e300;
    Field u(g), alpha(g), sq(g);
    for (int trial = 0; trial < 10000; ++trial) {
        const double a1 = endpoint(rng), a2 = endpoint(rng);
        const bool near = trial % 3 == 0;
        for (int i = 0; i < g.n; ++i) {
            const double th = static_cast<double>(i) / (g.n - 1);
            alpha[i] = a1 + th * (a2 - a1);
            u[i] = near ? alpha[i] * std::exp(1e-6 * logu(rng)) : std::exp(logu(rng));
        }
        const double e1 = log_entropy(u, alpha);
        min_e1 = std::min(min_e1, e1);
        ok = ok && e1 >= -1e-12;
        worst_a16 =
            std::max(worst_a16, trapezoid(u) - (e1 + (M_E - 1.0) * trapezoid(alpha)));
        for (int i = 0; i < g.n; ++i) sq[i] = (u[i] - alpha[i]) * (u[i] - alpha[i]);
        const double l2sq = trapezoid(sq);
        const double lower = std::min(a1, a2);
        for (double gamma : {2.0, 3.0, 4.5}) {
            const double e2 = power_entropy(u, alpha, gamma);
            ok = ok && e2 >= -1e-12;
            const double bound = gamma * std::pow(lower, gamma - 2.0) / (gamma - 1.0) * l2sq;
            worst_n65 = std::max(worst_n65, bound - 2.0 * e2);
        }
    }
    ok = ok && worst_a16 <= 1e-10 && worst_n65 <= 1e-10;
    const double secs = elapsed_s(t0);
    report(6, "entropy bounds over 1e4 random field pairs", ok && secs < 10.0,
           fmt("min E1 %.2e, worst slack %.2e, %.2f s", min_e1,
               std::max(worst_a16, worst_n65), secs));
}

// --- criterion 7 -----------------------------------------------------------

void criterion_convergence() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const char* name : {"mms-pp", "mms-ph"}) {
        const Scenario sc = load_bundled_scenario(name);
        const ConvergenceReport rep = convergence_study(sc, {51, 101, 201}, 801);
        double min_order = 1e300;
        for (double o : rep.u_orders) min_order = std::min(min_order, o);
        for (double o : rep.v_orders) min_order = std::min(min_order, o);
        ok = ok && !rep.degenerate && min_order >= 1.7;
        detail += fmt("%.2f ", min_order);
    }
    const double secs = elapsed_s(t0);
    report(7, "self-convergence order >= 1.7 in both variants", ok && secs < 60.0,
           "min observed orders: " + detail + fmt("(%.1f s)", secs));
}

// --- criterion 8 -----------------------------------------------------------

void criterion_cole_hopf() {
    SpatialGrid g(0.0, 1.0, 401);
    const Field v = sample_field(g, [](double x) { return std::sin(2.0 * kPi * x); });
    const Field back = cole_hopf_forward(cole_hopf_inverse(v, 1.0));
    double sup = 0.0;
    for (int i = 0; i < v.size(); ++i) sup = std::max(sup, std::abs(back[i] - v[i]));

    const Field c = sample_field(g, [](double x) { return 1.0 + 0.4 * std::sin(5.0 * x); });
    const Field w1 = cole_hopf_forward(c, 0.0, 0.0);
    const Field w2 = cole_hopf_forward(c, 1e8, 1e8);
    bool shift_exact = true;
    for (int i = 0; i < w1.size(); ++i) shift_exact = shift_exact && w1[i] == w2[i];

    report(8, "Cole-Hopf round trip and shift invariance", sup <= 1e-3 && shift_exact,
           fmt("round-trip sup %.2e, shift bit-exact", sup));
}

// --- criterion 10 ----------------------------------------------------------

void criterion_determinism() {
    bool ok = true;
    for (const char* name : {"equilibrium", "thm2-decay-g2"}) {
        Scenario sc = load_bundled_scenario(name);
        const RunArtifacts a = run_scenario(sc, (out_root() / "det-a").string());
        const RunArtifacts b = run_scenario(sc, (out_root() / "det-b").string());
        ok = ok && csv::read_file(a.paths.diagnostics_csv.string()) ==
                       csv::read_file(b.paths.diagnostics_csv.string());
        ok = ok && csv::read_file(a.paths.final_state_csv.string()) ==
                       csv::read_file(b.paths.final_state_csv.string());
    }

    const fs::path cfg = bundled_scenario_dir() / "thm1-decay-g1.json";
    const auto serial =
        sweep(cfg, "model.gamma", {1.0, 2.0, 3.0}, 1, (out_root() / "sw1").string());
    const auto parallel =
        sweep(cfg, "model.gamma", {1.0, 2.0, 3.0}, 4, (out_root() / "sw4").string());
    ok = ok && serial.csv() == parallel.csv();
    for (const char* leaf : {"model-gamma=1", "model-gamma=2", "model-gamma=3"}) {
        const fs::path pa =
            out_root() / "sw1" / "thm1-decay-g1-sweep" / leaf / "diagnostics.csv";
        const fs::path pb =
            out_root() / "sw4" / "thm1-decay-g1-sweep" / leaf / "diagnostics.csv";
        ok = ok && fs::exists(pa) && fs::exists(pb) &&
             csv::read_file(pa.string()) == csv::read_file(pb.string());
    }
    report(10, "bit-identical CSV outputs across reruns and sweep parallelism", ok,
           ok ? "all byte comparisons equal" : "byte mismatch");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    criterion_lemmas();
    criterion_equilibrium();

    DecayOutcome t1g1, t1g2, t2g1, t2g2;
    criterion_thm1(t1g1, t1g2);
    criterion_thm2(t2g1, t2g2);
    criterion_ledger();
    criterion_entropy_fuzz();
    criterion_convergence();
    criterion_cole_hopf();
    criterion_damped(t2g2);
    criterion_determinism();

    std::printf("acceptance: %d failure(s), %.1f s total\n", g_failures, elapsed_s(t0));
    return g_failures == 0 ? 0 : 1;
}
