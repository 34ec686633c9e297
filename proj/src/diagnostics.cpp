#include "chemolab/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "chemolab/csv.hpp"
#include "chemolab/numerics.hpp"

namespace chemolab {

namespace {

double pow_gamma(double base, double gamma) {
    if (gamma == 1.0) return base;
    if (gamma == 2.0) return base * base;
    return std::pow(base, gamma);
}

double l2_norm_sq(const Field& f) {
    Field sq(f.grid);
    for (int i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
    return trapezoid(sq);
}

Field deviation(const Field& a, const Field& b) {
    require_same_grid(a, b, "deviation");
    Field d(a.grid);
    for (int i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

Field v_deviation(const State& s, const ReferenceProfileSample& profile) {
    if (profile.beta.has_value()) return deviation(s.v, *profile.beta);
    if (profile.psi.has_value()) {
        Field d(s.v.grid);
        for (int i = 0; i < s.v.size(); ++i) d[i] = s.v[i] - *profile.psi;
        return d;
    }
    throw InvalidParams("reference profile carries neither beta nor psi");
}

}  // namespace

double log_entropy(const Field& u, const Field& alpha) {
    require_same_grid(u, alpha, "log_entropy");
    if (!u.all_positive() || !alpha.all_positive())
        throw NonPositiveInput("log_entropy: u and alpha must be strictly positive");
    Field integrand(u.grid);
    for (int i = 0; i < u.size(); ++i) {
        const double ui = u[i], ai = alpha[i];
        integrand[i] = (ui * std::log(ui) - ui) - (ai * std::log(ai) - ai) -
                       std::log(ai) * (ui - ai);
    }
    return trapezoid(integrand);
}

double power_entropy(const Field& u, const Field& alpha, double gamma) {
    require_same_grid(u, alpha, "power_entropy");
    if (!(gamma > 1.0)) throw InvalidGamma("power_entropy: gamma must be > 1");
    if (!alpha.all_positive())
        throw NonPositiveInput("power_entropy: alpha must be strictly positive");
    for (int i = 0; i < u.size(); ++i)
        if (u[i] < 0.0) throw NonPositiveInput("power_entropy: u must be non-negative");
    Field integrand(u.grid);
    for (int i = 0; i < u.size(); ++i) {
        const double ui = u[i], ai = alpha[i];
        integrand[i] = pow_gamma(ui, gamma) - pow_gamma(ai, gamma) -
                       gamma * pow_gamma(ai, gamma - 1.0) * (ui - ai);
    }
    return trapezoid(integrand) / (gamma - 1.0);
}

DeviationNorms deviation_norms(const State& s, const ReferenceProfileSample& profile) {
    require_same_grid(s.u, profile.alpha, "deviation_norms");
    const Field ud = deviation(s.u, profile.alpha);
    const Field vd = v_deviation(s, profile);
    DeviationNorms out;
    const double l2u_sq = l2_norm_sq(ud);
    const double l2v_sq = l2_norm_sq(vd);
    out.l2_u = std::sqrt(l2u_sq);
    out.l2_v = std::sqrt(l2v_sq);
    out.h1_u = std::sqrt(l2u_sq + l2_norm_sq(derivative(ud)));
    out.h1_v = std::sqrt(l2v_sq + l2_norm_sq(derivative(vd)));
    return out;
}

DissipationTerms dissipation_terms(const State& s, const ReferenceProfileSample& profile,
                                   double gamma) {
    if (!s.u.all_positive())
        throw NonPositiveInput("dissipation_terms: u must be strictly positive");
    DissipationTerms out;

    // ||(sqrt u)_x||^2 as int |u_x|^2/(4u): one nonlinear discretization, and
    // the chain-rule identity is exact in the continuum.
    const Field ux = derivative(s.u);
    Field integrand(s.u.grid);
    for (int i = 0; i < s.u.size(); ++i) integrand[i] = ux[i] * ux[i] / (4.0 * s.u[i]);
    out.sqrt_u = trapezoid(integrand);

    out.v = l2_norm_sq(derivative(v_deviation(s, profile)));

    const Field udx = derivative(deviation(s.u, profile.alpha));
    for (int i = 0; i < s.u.size(); ++i)
        integrand[i] = pow_gamma(s.u[i], gamma - 2.0) * udx[i] * udx[i];
    out.weighted_u = trapezoid(integrand);
    return out;
}

DampedQuantities damped_energy_terms(const State& s, const ReferenceProfileSample& profile,
                                     const BoundaryData& bd, double gamma,
                                     const AlphaBounds& bounds) {
    if (!(gamma >= 2.0)) throw InvalidGamma("damped_energy_terms: requires gamma >= 2");
    if (!profile.psi.has_value())
        throw InvalidParams("damped_energy_terms: hyperbolic profile (psi) required");
    if (!(bounds.lower > 0.0))
        throw NonPositiveInput("damped_energy_terms: alpha lower bound must be positive");

    const Field ud = deviation(s.u, profile.alpha);
    const Field vdx = derivative(v_deviation(s, profile));
    const Field udx = derivative(ud);

    DampedQuantities q;
    const double vdx_sq = l2_norm_sq(vdx);

    Field integrand(s.u.grid);
    for (int i = 0; i < s.u.size(); ++i)
        integrand[i] = pow_gamma(profile.alpha[i], gamma - 1.0) * ud[i] * vdx[i];
    q.H = vdx_sq / (2.0 * gamma) - trapezoid(integrand);

    const double forcing_y = forcing_alpha(bd, s.t);
    if (gamma <= 4.0) {
        for (int i = 0; i < s.u.size(); ++i) {
            const double w = ud[i] * udx[i];
            integrand[i] = w * w;
        }
    } else {
        for (int i = 0; i < s.u.size(); ++i) {
            const double w = std::pow(std::abs(ud[i]), 0.5 * (gamma - 1.0)) * udx[i];
            integrand[i] = w * w;
        }
    }
    q.J = trapezoid(integrand) + l2_norm_sq(udx) + forcing_y;

    const double chi = (gamma - 1.0) * std::pow(bounds.upper, 2.0 * gamma - 2.0) *
                       std::pow(bounds.lower, 2.0 - gamma);
    const double e2 = power_entropy(s.u, profile.alpha, gamma);
    q.K = 2.0 * chi * e2 + q.H + chi * l2_norm_sq(v_deviation(s, profile)) +
          std::pow(bounds.lower, gamma) / (4.0 * bounds.upper * bounds.upper) * l2_norm_sq(udx);
    return q;
}

double vtilde_mass(const Field& v, double psi) {
    Field d(v.grid);
    for (int i = 0; i < v.size(); ++i) d[i] = v[i] - psi;
    return trapezoid_mean(d);
}

DiagnosticsRecord make_record(const State& s, const ReferenceProfileSample& profile,
                              const BoundaryData& bd, const ModelParams& params,
                              const AlphaBounds& bounds) {
    DiagnosticsRecord r;
    r.t = s.t;

    const DeviationNorms n = deviation_norms(s, profile);
    r.l2_u_dev = n.l2_u;
    r.l2_v_dev = n.l2_v;
    r.h1_u_dev = n.h1_u;
    r.h1_v_dev = n.h1_v;

    r.entropy = (params.gamma == 1.0) ? log_entropy(s.u, profile.alpha)
                                      : power_entropy(s.u, profile.alpha, params.gamma);

    const DissipationTerms d = dissipation_terms(s, profile, params.gamma);
    r.sqrt_u_dissipation = d.sqrt_u;
    r.v_dissipation = d.v;
    r.weighted_u_dissipation = d.weighted_u;

    r.forcing = (params.variant == Variant::ParabolicParabolic) ? forcing_full(bd, s.t)
                                                                : forcing_alpha(bd, s.t);

    r.vtilde_mean = trapezoid_mean(v_deviation(s, profile));

    if (params.variant == Variant::ParabolicHyperbolic && params.gamma >= 2.0) {
        const DampedQuantities q = damped_energy_terms(s, profile, bd, params.gamma, bounds);
        r.H = q.H;
        r.J = q.J;
        r.K = q.K;
    }

    r.ledger_lhs = 2.0 * r.entropy + r.l2_v_dev * r.l2_v_dev;
    return r;
}

namespace {

// Cumulative trapezoid of the forcing over the sample times.
std::vector<double> forcing_integral(const std::vector<DiagnosticsRecord>& series) {
    std::vector<double> acc(series.size(), 0.0);
    for (std::size_t k = 1; k < series.size(); ++k) {
        const double dt = series[k].t - series[k - 1].t;
        acc[k] = acc[k - 1] + 0.5 * dt * (series[k].forcing + series[k - 1].forcing);
    }
    return acc;
}

}  // namespace

bool gronwall_holds(const std::vector<DiagnosticsRecord>& series, double C,
                    std::vector<double>* margin_out, double tolerance) {
    if (series.empty()) return true;
    const std::vector<double> integral = forcing_integral(series);
    const double g0 = series.front().ledger_lhs;
    bool ok = true;
    if (margin_out) margin_out->assign(series.size(), 0.0);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double rhs = (g0 + C * integral[k]) * std::exp(C * integral[k]);
        const double margin = rhs - series[k].ledger_lhs;
        if (margin_out) (*margin_out)[k] = margin;
        if (!(margin >= -tolerance)) ok = false;
    }
    return ok;
}

GronwallLedger fit_gronwall(const std::vector<DiagnosticsRecord>& series) {
    GronwallLedger out;
    if (series.empty()) {
        out.cstar = 0.0;
        return out;
    }
    if (gronwall_holds(series, 0.0, nullptr, out.tolerance)) {
        out.cstar = 0.0;
        gronwall_holds(series, 0.0, &out.margin, out.tolerance);
        return out;
    }
    double hi = 1e-6;
    while (hi <= out.cap && !gronwall_holds(series, hi, nullptr, out.tolerance)) hi *= 2.0;
    if (hi > out.cap) return out;  // no finite constant: inequality violated
    double lo = hi / 2.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gronwall_holds(series, mid, nullptr, out.tolerance))
            hi = mid;
        else
            lo = mid;
    }
    out.cstar = hi;
    gronwall_holds(series, hi, &out.margin, out.tolerance);
    return out;
}

void fill_ledger_rhs(std::vector<DiagnosticsRecord>& series, double C) {
    const std::vector<double> integral = forcing_integral(series);
    const double g0 = series.empty() ? 0.0 : series.front().ledger_lhs;
    for (std::size_t k = 0; k < series.size(); ++k)
        series[k].ledger_rhs = (g0 + C * integral[k]) * std::exp(C * integral[k]);
}

const std::vector<std::string> kDiagnosticsCsvHeader = {
    "t",       "l2_u_dev",           "l2_v_dev",      "h1_u_dev",
    "h1_v_dev", "entropy",           "sqrt_u_dissipation", "v_dissipation",
    "weighted_u_dissipation", "forcing", "vtilde_mean", "H",
    "J",       "K",                  "ledger_lhs",    "ledger_rhs"};

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& series) {
    std::ostringstream os;
    os << csv::join(kDiagnosticsCsvHeader) << '\n';
    for (const auto& r : series) {
        std::vector<std::string> cells = {
            csv::format(r.t),
            csv::format(r.l2_u_dev),
            csv::format(r.l2_v_dev),
            csv::format(r.h1_u_dev),
            csv::format(r.h1_v_dev),
            csv::format(r.entropy),
            csv::format(r.sqrt_u_dissipation),
            csv::format(r.v_dissipation),
            csv::format(r.weighted_u_dissipation),
            csv::format(r.forcing),
            csv::format(r.vtilde_mean),
            csv::format_optional(r.H),
            csv::format_optional(r.J),
            csv::format_optional(r.K),
            csv::format(r.ledger_lhs),
            csv::format_optional(r.ledger_rhs)};
        os << csv::join(cells) << '\n';
    }
    return os.str();
}

std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& text) {
    std::vector<DiagnosticsRecord> out;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) return out;
    if (csv::split(line) != kDiagnosticsCsvHeader)
        throw ConfigError("diagnostics CSV: unexpected header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = csv::split(line);
        if (cells.size() != kDiagnosticsCsvHeader.size())
            throw ConfigError("diagnostics CSV: wrong column count");
        DiagnosticsRecord r;
        r.t = csv::parse(cells[0]);
        r.l2_u_dev = csv::parse(cells[1]);
        r.l2_v_dev = csv::parse(cells[2]);
        r.h1_u_dev = csv::parse(cells[3]);
        r.h1_v_dev = csv::parse(cells[4]);
        r.entropy = csv::parse(cells[5]);
        r.sqrt_u_dissipation = csv::parse(cells[6]);
        r.v_dissipation = csv::parse(cells[7]);
        r.weighted_u_dissipation = csv::parse(cells[8]);
        r.forcing = csv::parse(cells[9]);
        r.vtilde_mean = csv::parse(cells[10]);
        r.H = csv::parse_optional(cells[11]);
        r.J = csv::parse_optional(cells[12]);
        r.K = csv::parse_optional(cells[13]);
        r.ledger_lhs = csv::parse(cells[14]);
        r.ledger_rhs = csv::parse_optional(cells[15]);
        out.push_back(r);
    }
    return out;
}

}  // namespace chemolab
