#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "chemolab/csv.hpp"
#include "chemolab/harness.hpp"

using namespace chemolab;
namespace fs = std::filesystem;

namespace {

fs::path test_root() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() / "chemolab-harness-tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

std::string slurp(const fs::path& p) { return csv::read_file(p.string()); }

}  // namespace

TEST_CASE("all bundled scenarios load and validate") {
    for (const char* name :
         {"equilibrium", "equilibrium-ph", "thm1-decay-g1", "thm1-decay-g2", "thm2-decay-g1",
          "thm2-decay-g2", "asymmetric-u", "ba-violation", "mms-pp", "mms-ph"}) {
        const Scenario sc = load_bundled_scenario(name);
        CHECK(sc.name == name);
        CHECK(sc.numerics.n >= 3);
        const State s0 = build_initial_state(sc);
        CHECK(s0.u.all_positive());
    }
}

TEST_CASE("run_scenario persists diagnostics, final state and metadata") {
    Scenario sc = load_bundled_scenario("equilibrium");
    sc.numerics.t_end = 2.0;
    const RunArtifacts art = run_scenario(sc, (test_root() / "eq").string());
    CHECK(art.result.status == RunStatus::Completed);
    CHECK(fs::exists(art.paths.diagnostics_csv));
    CHECK(fs::exists(art.paths.final_state_csv));
    CHECK(fs::exists(art.paths.run_json));

    const auto series = parse_diagnostics_csv(slurp(art.paths.diagnostics_csv));
    REQUIRE_FALSE(series.empty());
    for (const auto& r : series) {
        CHECK(r.l2_u_dev == 0.0);
        CHECK(r.l2_v_dev == 0.0);
        CHECK(r.h1_u_dev == 0.0);
        CHECK(r.h1_v_dev == 0.0);
    }

    const std::string meta = slurp(art.paths.run_json);
    CHECK(meta.find("\"status\": \"Completed\"") != std::string::npos);
    CHECK(meta.find("\"ba_verdict\": \"Satisfied\"") != std::string::npos);
}

TEST_CASE("missing required fields are reported by name") {
    const char* text = R"({
      "name": "broken",
      "model": { "variant": "parabolic-parabolic", "domain": { "a": 0.0, "b": 1.0 } },
      "boundary": {
        "alpha1": { "family": "constant", "value": 1.0 },
        "alpha2": { "family": "constant", "value": 1.0 },
        "beta1":  { "family": "constant", "value": 0.0 },
        "beta2":  { "family": "constant", "value": 0.0 }
      },
      "initial": { "kind": "constant", "u": 1.0, "v": 0.0 },
      "numerics": { "n": 11, "dt": 0.01, "t_end": 0.1 }
    })";
    try {
        parse_scenario_json(text, ".");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("gamma") != std::string::npos);
    }
}

TEST_CASE("config validation catches structural mistakes") {
    CHECK_THROWS_AS(parse_scenario_json("not json", "."), ConfigError);
    // beta on the hyperbolic variant
    const char* hyper_beta = R"({
      "name": "x",
      "model": { "variant": "parabolic-hyperbolic", "gamma": 1.0, "domain": { "a": 0, "b": 1 } },
      "boundary": {
        "alpha1": { "family": "constant", "value": 1.0 },
        "alpha2": { "family": "constant", "value": 1.0 },
        "beta1":  { "family": "constant", "value": 0.0 },
        "beta2":  { "family": "constant", "value": 0.0 }
      },
      "initial": { "kind": "constant", "u": 1.0, "v": 0.0 },
      "numerics": { "n": 11, "dt": 0.01, "t_end": 0.1 }
    })";
    CHECK_THROWS_AS(parse_scenario_json(hyper_beta, "."), ConfigError);
}

TEST_CASE("final state round trips through its CSV to full precision") {
    Scenario sc = load_bundled_scenario("thm1-decay-g1");
    sc.numerics.n = 101;
    sc.numerics.t_end = 1.0;
    const RunArtifacts art = run_scenario(sc, (test_root() / "round").string());
    REQUIRE(art.result.status == RunStatus::Completed);

    const State back =
        parse_final_state_csv(slurp(art.paths.final_state_csv), art.result.final_state.t);
    REQUIRE(back.u.size() == art.result.final_state.u.size());
    for (int i = 0; i < back.u.size(); ++i) {
        CHECK(back.u[i] == art.result.final_state.u[i]);
        CHECK(back.v[i] == art.result.final_state.v[i]);
    }
}

TEST_CASE("re-running a scenario reproduces the CSV outputs byte for byte") {
    Scenario sc = load_bundled_scenario("thm2-decay-g1");
    sc.numerics.t_end = 2.0;
    const RunArtifacts a = run_scenario(sc, (test_root() / "det-a").string());
    const RunArtifacts b = run_scenario(sc, (test_root() / "det-b").string());
    CHECK(slurp(a.paths.diagnostics_csv) == slurp(b.paths.diagnostics_csv));
    CHECK(slurp(a.paths.final_state_csv) == slurp(b.paths.final_state_csv));
}

TEST_CASE("convergence study validates its grids") {
    const Scenario sc = load_bundled_scenario("mms-pp");
    CHECK_THROWS_AS(convergence_study(sc, {50, 101}, 401), InvalidParams);  // 50 does not nest
    CHECK_THROWS_AS(convergence_study(sc, {101, 201}, 301), InvalidParams); // reference too coarse
}

TEST_CASE("convergence study flags degenerate all-zero errors") {
    Scenario sc = load_bundled_scenario("equilibrium");
    sc.numerics.t_end = 0.5;
    const ConvergenceReport rep = convergence_study(sc, {51, 101}, 201);
    CHECK(rep.degenerate);
    CHECK(rep.table().find("degenerate") != std::string::npos);
}

TEST_CASE("convergence study observes second order on the manufactured scenario") {
    Scenario sc = load_bundled_scenario("mms-pp");
    sc.numerics.t_end = 0.5;
    const ConvergenceReport rep = convergence_study(sc, {51, 101}, 401);
    REQUIRE(rep.u_orders.size() == 1);
    CHECK(rep.u_orders[0] >= 1.7);
    CHECK(rep.u_orders[0] <= 2.3);
    CHECK(rep.v_orders[0] >= 1.7);
    CHECK(rep.v_orders[0] <= 2.3);
}

TEST_CASE("sweep runs every axis value and is parallelism-invariant") {
    const fs::path cfg = bundled_scenario_dir() / "thm1-decay-g1.json";

    Scenario base = load_bundled_scenario("thm1-decay-g1");
    (void)base;

    const auto serial = sweep(cfg, "model.gamma", {1.0, 2.0}, 1,
                              (test_root() / "sweep-serial").string());
    const auto parallel = sweep(cfg, "model.gamma", {1.0, 2.0}, 4,
                                (test_root() / "sweep-parallel").string());
    REQUIRE(serial.rows.size() == 2);
    for (const auto& row : serial.rows) {
        CHECK(row.status == RunStatus::Completed);
        CHECK(row.time_to_threshold.has_value());
        CHECK(row.gronwall_cstar.has_value());
    }
    CHECK(serial.csv() == parallel.csv());

    // The per-run diagnostics must agree byte for byte as well.
    for (const char* leaf : {"model-gamma=1", "model-gamma=2"}) {
        const fs::path pa = test_root() / "sweep-serial" / "thm1-decay-g1-sweep" / leaf /
                            "diagnostics.csv";
        const fs::path pb = test_root() / "sweep-parallel" / "thm1-decay-g1-sweep" / leaf /
                            "diagnostics.csv";
        REQUIRE(fs::exists(pa));
        REQUIRE(fs::exists(pb));
        CHECK(slurp(pa) == slurp(pb));
    }
}

TEST_CASE("sweeping a boundary rate to zero flags the hypothesis violation and still runs") {
    const fs::path cfg = bundled_scenario_dir() / "thm1-decay-g1.json";
    // Shorten the horizon through the axis? No: patch a copy of the config.
    const std::string text = csv::read_file(cfg.string());
    const fs::path short_cfg = test_root() / "thm1-short.json";
    std::string patched = text;
    const std::string key = "\"t_end\": 30.0";
    patched.replace(patched.find(key), key.size(), "\"t_end\": 3.0");
    csv::write_file(short_cfg.string(), patched);

    const auto res = sweep(short_cfg, "boundary.beta1.lambda", {1.0, 0.0}, 2,
                           (test_root() / "sweep-ba").string());
    REQUIRE(res.rows.size() == 2);
    CHECK(res.rows[0].status == RunStatus::Completed);
    CHECK(res.rows[0].ba_verdict == "Satisfied");
    CHECK(res.rows[1].status == RunStatus::Completed);  // violation is a flag, not a crash
    CHECK(res.rows[1].ba_verdict == "Suspect");
}

TEST_CASE("sweep rejects a bad axis path") {
    const fs::path cfg = bundled_scenario_dir() / "thm1-decay-g1.json";
    CHECK_THROWS_AS(sweep(cfg, "model.nope", {1.0}, 1, (test_root() / "x").string()),
                    ConfigError);
    CHECK_THROWS_AS(sweep(cfg, "model.variant", {1.0}, 1, (test_root() / "x").string()),
                    ConfigError);
}

TEST_CASE("tabulated boundary signals and initial data load through the config") {
    const fs::path dir = test_root() / "tabulated";
    fs::create_directories(dir);

    // A sampled trace of 1 + 0.5 e^{-t} and an initial state table.
    {
        std::ofstream f(dir / "alpha1.csv");
        f << "t,value\n";
        for (int k = 0; k <= 400; ++k) {
            const double t = 0.05 * k;
            f << csv::format(t) << ',' << csv::format(1.0 + 0.5 * std::exp(-t)) << '\n';
        }
    }
    {
        std::ofstream f(dir / "initial.csv");
        f << "x,u,v\n";
        for (int k = 0; k <= 200; ++k) {
            const double x = k / 200.0;
            f << csv::format(x) << ",1.5,0\n";
        }
    }
    const std::string cfg_text = R"({
      "name": "tabulated-run",
      "model": { "variant": "parabolic-parabolic", "gamma": 1.0, "domain": { "a": 0.0, "b": 1.0 } },
      "boundary": {
        "alpha1": { "family": "tabulated", "path": "alpha1.csv" },
        "alpha2": { "family": "constant", "value": 1.5 },
        "beta1":  { "family": "constant", "value": 0.0 },
        "beta2":  { "family": "constant", "value": 0.0 }
      },
      "initial": { "kind": "tabulated", "path": "initial.csv" },
      "numerics": { "n": 101, "dt": 0.005, "t_end": 2.0 },
      "diagnostics_cadence": 20,
      "output_dir": "tabulated-run"
    })";
    csv::write_file((dir / "run.json.in").string(), cfg_text);
    const Scenario sc = load_scenario(dir / "run.json.in");

    const BoundaryData bd = sc.boundary.build(sc.base_dir);
    CHECK(bd.alpha1.kind == BoundarySignal::Kind::Tabulated);
    CHECK(bd.alpha1(0.0) == doctest::Approx(1.5));
    CHECK(bd.alpha1(0.025) == doctest::Approx(0.5 * (1.5 + 1.0 + 0.5 * std::exp(-0.05))));

    const RunArtifacts art = run_scenario(sc, (test_root() / "tab-out").string());
    CHECK(art.result.status == RunStatus::Completed);
}

TEST_CASE("output root override via the environment") {
    const fs::path root = test_root() / "env-root";
    setenv("CHEMOLAB_OUTPUT_ROOT", root.string().c_str(), 1);
    Scenario sc = load_bundled_scenario("equilibrium");
    sc.numerics.t_end = 0.5;
    const RunArtifacts art = run_scenario(sc);
    unsetenv("CHEMOLAB_OUTPUT_ROOT");
    CHECK(art.paths.dir.string().find(root.string()) == 0);
    CHECK(fs::exists(art.paths.run_json));
}
