#include "chemolab/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chemolab/csv.hpp"

namespace chemolab {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void missing(const std::string& field) {
    throw ConfigError("config: missing required field '" + field + "'");
}

const json& require(const json& j, const std::string& field, const std::string& context) {
    if (!j.contains(field)) missing(context.empty() ? field : context + "." + field);
    return j.at(field);
}

std::string qualify(const std::string& field, const std::string& context) {
    return context.empty() ? field : context + "." + field;
}

double require_number(const json& j, const std::string& field, const std::string& context) {
    const json& v = require(j, field, context);
    if (!v.is_number())
        throw ConfigError("config: field '" + qualify(field, context) + "' must be a number");
    return v.get<double>();
}

double optional_number(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    return j.at(field).get<double>();
}

std::string require_string(const json& j, const std::string& field, const std::string& context) {
    const json& v = require(j, field, context);
    if (!v.is_string())
        throw ConfigError("config: field '" + qualify(field, context) + "' must be a string");
    return v.get<std::string>();
}

BoundarySignalSpec parse_signal(const json& j, const std::string& context) {
    BoundarySignalSpec s;
    s.family = require_string(j, "family", context);
    if (s.family == "constant") {
        s.value = require_number(j, "value", context);
    } else if (s.family == "one-plus-exponential-decay" || s.family == "exponential-decay" ||
               s.family == "one-plus-algebraic-decay") {
        s.c = require_number(j, "c", context);
        s.lambda = require_number(j, "lambda", context);
    } else if (s.family == "damped-oscillation") {
        s.c = require_number(j, "c", context);
        s.lambda = require_number(j, "lambda", context);
        s.omega = require_number(j, "omega", context);
        s.offset = optional_number(j, "offset", 0.0);
    } else if (s.family == "tabulated") {
        s.path = require_string(j, "path", context);
    } else {
        throw ConfigError("config: unknown boundary family '" + s.family + "' at " + context);
    }
    return s;
}

std::vector<std::pair<double, double>> read_time_table(const std::filesystem::path& path) {
    const std::string text = csv::read_file(path.string());
    std::vector<std::pair<double, double>> rows;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = csv::split(line);
        if (cells.size() != 2)
            throw ConfigError("tabulated signal " + path.string() + ": expected two columns");
        if (first) {
            first = false;
            // Tolerate a header row.
            try {
                csv::parse(cells[0]);
            } catch (const Error&) {
                continue;
            }
        }
        rows.emplace_back(csv::parse(cells[0]), csv::parse(cells[1]));
    }
    if (rows.size() < 2)
        throw ConfigError("tabulated signal " + path.string() + ": needs at least two rows");
    return rows;
}

}  // namespace

BoundarySignal BoundarySignalSpec::build(const std::filesystem::path& base_dir) const {
    if (family == "constant") return constant_signal(value);
    if (family == "one-plus-exponential-decay") return one_plus_exponential_decay(c, lambda);
    if (family == "exponential-decay") return exponential_decay(c, lambda);
    if (family == "damped-oscillation") return damped_oscillation(c, lambda, omega, offset);
    if (family == "one-plus-algebraic-decay") return one_plus_algebraic_decay(c, lambda);
    if (family == "tabulated") {
        std::filesystem::path p(path);
        if (p.is_relative()) p = base_dir / p;
        return tabulated_signal(read_time_table(p));
    }
    throw ConfigError("unknown boundary family '" + family + "'");
}

BoundaryData BoundarySpec::build(const std::filesystem::path& base_dir) const {
    BoundaryData bd;
    bd.alpha1 = alpha1.build(base_dir);
    bd.alpha2 = alpha2.build(base_dir);
    if (beta1.has_value() != beta2.has_value())
        throw ConfigError("config: beta1 and beta2 must be given together");
    if (beta1) {
        bd.beta1 = beta1->build(base_dir);
        bd.beta2 = beta2->build(base_dir);
    }
    return bd;
}

namespace {
Scenario parse_scenario_impl(const std::string& text, const std::filesystem::path& base_dir);
}

Scenario parse_scenario_json(const std::string& text, const std::filesystem::path& base_dir) {
    try {
        return parse_scenario_impl(text, base_dir);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

namespace {

Scenario parse_scenario_impl(const std::string& text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }

    Scenario sc;
    sc.base_dir = base_dir;
    sc.name = require_string(j, "name", "");

    const json& jm = require(j, "model", "");
    const std::string variant = require_string(jm, "variant", "model");
    if (variant == "parabolic-parabolic")
        sc.model.variant = Variant::ParabolicParabolic;
    else if (variant == "parabolic-hyperbolic")
        sc.model.variant = Variant::ParabolicHyperbolic;
    else
        throw ConfigError("config: model.variant must be parabolic-parabolic or parabolic-hyperbolic");
    sc.model.gamma = require_number(jm, "gamma", "model");
    const json& jd = require(jm, "domain", "model");
    sc.model.domain.a = require_number(jd, "a", "model.domain");
    sc.model.domain.b = require_number(jd, "b", "model.domain");
    try {
        sc.model.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    const json& jb = require(j, "boundary", "");
    sc.boundary.alpha1 = parse_signal(require(jb, "alpha1", "boundary"), "boundary.alpha1");
    sc.boundary.alpha2 = parse_signal(require(jb, "alpha2", "boundary"), "boundary.alpha2");
    const bool has_b1 = jb.contains("beta1"), has_b2 = jb.contains("beta2");
    if (has_b1 != has_b2) throw ConfigError("config: beta1 and beta2 must be given together");
    if (sc.model.variant == Variant::ParabolicHyperbolic && has_b1)
        throw ConfigError("config: parabolic-hyperbolic variant takes no beta signals");
    if (sc.model.variant == Variant::ParabolicParabolic && !has_b1)
        throw ConfigError("config: parabolic-parabolic variant requires beta1 and beta2");
    if (has_b1) {
        sc.boundary.beta1 = parse_signal(jb.at("beta1"), "boundary.beta1");
        sc.boundary.beta2 = parse_signal(jb.at("beta2"), "boundary.beta2");
    }

    const json& ji = require(j, "initial", "");
    const std::string kind = require_string(ji, "kind", "initial");
    if (kind == "profile") {
        sc.initial.kind = InitialSpec::Kind::Profile;
        sc.initial.u_amplitude = optional_number(ji, "u_amplitude", 0.0);
        sc.initial.u_mode = static_cast<int>(optional_number(ji, "u_mode", 1));
        sc.initial.v_amplitude = optional_number(ji, "v_amplitude", 0.0);
        sc.initial.v_mode = static_cast<int>(optional_number(ji, "v_mode", 2));
        sc.initial.v_base = optional_number(ji, "v_base", 0.0);
    } else if (kind == "constant") {
        sc.initial.kind = InitialSpec::Kind::Constant;
        sc.initial.u_value = require_number(ji, "u", "initial");
        sc.initial.v_value = require_number(ji, "v", "initial");
    } else if (kind == "manufactured") {
        sc.initial.kind = InitialSpec::Kind::Manufactured;
    } else if (kind == "tabulated") {
        sc.initial.kind = InitialSpec::Kind::Tabulated;
        sc.initial.path = require_string(ji, "path", "initial");
    } else {
        throw ConfigError("config: unknown initial kind '" + kind + "'");
    }

    const json& jn = require(j, "numerics", "");
    sc.numerics.n = static_cast<int>(require_number(jn, "n", "numerics"));
    sc.numerics.dt = require_number(jn, "dt", "numerics");
    sc.numerics.t_end = require_number(jn, "t_end", "numerics");
    sc.numerics.cfl_safety = optional_number(jn, "cfl_safety", 0.9);
    sc.numerics.positivity_floor = optional_number(jn, "positivity_floor", 0.0);
    if (jn.contains("scheme")) {
        const std::string s = jn.at("scheme").get<std::string>();
        if (s == "imex")
            sc.numerics.scheme = Scheme::Imex;
        else if (s == "fully-explicit")
            sc.numerics.scheme = Scheme::FullyExplicit;
        else
            throw ConfigError("config: numerics.scheme must be imex or fully-explicit");
    }
    if (jn.contains("advection_form")) {
        const std::string s = jn.at("advection_form").get<std::string>();
        if (s == "conservative")
            sc.numerics.advection_form = AdvectionForm::Conservative;
        else if (s == "product-rule")
            sc.numerics.advection_form = AdvectionForm::ProductRule;
        else
            throw ConfigError("config: numerics.advection_form must be conservative or product-rule");
    }
    sc.numerics.v_grid_dissipation = optional_number(jn, "v_grid_dissipation", 1.0);
    if (jn.contains("hyperbolic_flux")) {
        const std::string s = jn.at("hyperbolic_flux").get<std::string>();
        if (s == "central")
            sc.numerics.hyperbolic_flux = HyperbolicFlux::Central;
        else if (s == "upwind")
            sc.numerics.hyperbolic_flux = HyperbolicFlux::Upwind;
        else
            throw ConfigError("config: numerics.hyperbolic_flux must be central or upwind");
    }
    if (sc.numerics.n < 3) throw ConfigError("config: numerics.n must be >= 3");

    sc.diagnostics_cadence = static_cast<int>(optional_number(j, "diagnostics_cadence", 1));
    sc.output_dir = j.contains("output_dir") ? j.at("output_dir").get<std::string>() : sc.name;
    sc.compatibility_tol = optional_number(j, "compatibility_tol", 1e-10);

    if (j.contains("sources")) {
        const std::string s = j.at("sources").get<std::string>();
        if (s == "manufactured-decay")
            sc.manufactured_sources = true;
        else if (s != "none")
            throw ConfigError("config: sources must be none or manufactured-decay");
    }
    if (sc.initial.kind == InitialSpec::Kind::Manufactured && !sc.manufactured_sources)
        throw ConfigError("config: manufactured initial data requires sources: manufactured-decay");

    return sc;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& config_path) {
    std::ifstream f(config_path);
    if (!f) throw ConfigError("cannot open config file: " + config_path.string());
    std::ostringstream os;
    os << f.rdbuf();
    return parse_scenario_json(os.str(), config_path.parent_path());
}

namespace {

Field interpolate_column(const SpatialGrid& grid, const std::vector<double>& xs,
                         const std::vector<double>& ys) {
    Field out(grid);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        if (x <= xs.front()) {
            out[i] = ys.front();
            continue;
        }
        if (x >= xs.back()) {
            out[i] = ys.back();
            continue;
        }
        std::size_t k = 1;
        while (k < xs.size() - 1 && xs[k] < x) ++k;
        const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
        out[i] = ys[k - 1] + w * (ys[k] - ys[k - 1]);
    }
    return out;
}

}  // namespace

State build_initial_state(const Scenario& sc) {
    const SpatialGrid grid(sc.model.domain.a, sc.model.domain.b, sc.numerics.n);
    const BoundaryData bd = sc.boundary.build(sc.base_dir);

    State s;
    s.t = 0.0;
    switch (sc.initial.kind) {
        case InitialSpec::Kind::Profile: {
            Field u0 = alpha_profile(bd, grid, 0.0);
            Field v0 = bd.has_beta() ? beta_profile(bd, grid, 0.0) : Field(grid, sc.initial.v_base);
            const double L = grid.length();
            for (int i = 0; i < grid.n; ++i) {
                const double xh = (grid.node(i) - grid.a) / L;
                u0[i] += sc.initial.u_amplitude * std::sin(kPi * sc.initial.u_mode * xh);
                v0[i] += sc.initial.v_amplitude * std::sin(kPi * sc.initial.v_mode * xh);
            }
            // Bumps vanish at the endpoints analytically; pin them exactly.
            u0[0] = bd.alpha1(0.0);
            u0[grid.n - 1] = bd.alpha2(0.0);
            if (bd.has_beta()) {
                v0[0] = bd.beta1->value(0.0);
                v0[grid.n - 1] = bd.beta2->value(0.0);
            }
            s.u = std::move(u0);
            s.v = std::move(v0);
            break;
        }
        case InitialSpec::Kind::Constant:
            s.u = Field(grid, sc.initial.u_value);
            s.v = Field(grid, sc.initial.v_value);
            break;
        case InitialSpec::Kind::Manufactured: {
            ManufacturedSolution mms{sc.model.domain, sc.model.gamma, sc.model.variant};
            s.u = mms.sample_u(grid, 0.0);
            s.v = mms.sample_v(grid, 0.0);
            break;
        }
        case InitialSpec::Kind::Tabulated: {
            std::filesystem::path p(sc.initial.path);
            if (p.is_relative()) p = sc.base_dir / p;
            const std::string text = csv::read_file(p.string());
            std::istringstream is(text);
            std::string line;
            std::vector<double> xs, us, vs;
            bool first = true;
            while (std::getline(is, line)) {
                if (line.empty()) continue;
                const auto cells = csv::split(line);
                if (cells.size() < 3)
                    throw ConfigError("initial table " + p.string() + ": expected x,u,v columns");
                if (first) {
                    first = false;
                    try {
                        csv::parse(cells[0]);
                    } catch (const Error&) {
                        continue;  // header row
                    }
                }
                xs.push_back(csv::parse(cells[0]));
                us.push_back(csv::parse(cells[1]));
                vs.push_back(csv::parse(cells[2]));
            }
            if (xs.size() < 2) throw ConfigError("initial table " + p.string() + ": too few rows");
            s.u = interpolate_column(grid, xs, us);
            s.v = interpolate_column(grid, xs, vs);
            break;
        }
    }
    return s;
}

SimulationInput build_simulation_input(const Scenario& sc) {
    SimulationInput in;
    in.params = sc.model;
    in.boundary = sc.boundary.build(sc.base_dir);
    in.numerics = sc.numerics;
    in.initial = build_initial_state(sc);
    in.diagnostics_cadence = sc.diagnostics_cadence;
    in.compatibility_tol = sc.compatibility_tol;
    if (sc.manufactured_sources)
        in.sources = ManufacturedSolution{sc.model.domain, sc.model.gamma, sc.model.variant};
    return in;
}

std::filesystem::path bundled_scenario_dir() {
    if (const char* env = std::getenv("CHEMOLAB_SCENARIO_DIR")) return env;
#ifdef CHEMOLAB_SCENARIO_DIR
    return CHEMOLAB_SCENARIO_DIR;
#else
    return "scenarios";
#endif
}

Scenario load_bundled_scenario(const std::string& name) {
    return load_scenario(bundled_scenario_dir() / (name + ".json"));
}

}  // namespace chemolab
