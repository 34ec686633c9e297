#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemolab/boundary.hpp"
#include "chemolab/grid.hpp"
#include "chemolab/model.hpp"
#include "chemolab/profiles.hpp"

namespace chemolab {

/// One ledger row of the stability functionals at a sample time.
/// Serialized to CSV with exactly these field names; absent entries
/// (H/J/K outside the hyperbolic gamma>=2 case, unfitted ledger_rhs)
/// become empty cells.
struct DiagnosticsRecord {
    double t = 0.0;
    double l2_u_dev = 0.0;
    double l2_v_dev = 0.0;
    double h1_u_dev = 0.0;
    double h1_v_dev = 0.0;
    double entropy = 0.0;
    double sqrt_u_dissipation = 0.0;
    double v_dissipation = 0.0;
    double weighted_u_dissipation = 0.0;
    double forcing = 0.0;
    double vtilde_mean = 0.0;
    std::optional<double> H;
    std::optional<double> J;
    std::optional<double> K;
    double ledger_lhs = 0.0;
    std::optional<double> ledger_rhs;
};

/// Bregman distance of u ln u - u between the solution and its reference
/// profile; non-negative for positive inputs by convexity.
double log_entropy(const Field& u, const Field& alpha);

/// Bregman distance of u^gamma / (gamma-1); requires gamma > 1, u >= 0, alpha > 0.
double power_entropy(const Field& u, const Field& alpha, double gamma);

struct DeviationNorms {
    double l2_u = 0.0;
    double h1_u = 0.0;
    double l2_v = 0.0;
    double h1_v = 0.0;
};

/// L2 and H1 norms of u - alpha and of v - beta (or v - psi).
/// H1 convention: sqrt(L2^2 + ||d/dx||_L2^2).
DeviationNorms deviation_norms(const State& s, const ReferenceProfileSample& profile);

struct DissipationTerms {
    double sqrt_u = 0.0;      // ||(sqrt u)_x||^2, computed as int |u_x|^2/(4u)
    double v = 0.0;           // ||vtilde_x||^2
    double weighted_u = 0.0;  // int u^{gamma-2} |utilde_x|^2
};

DissipationTerms dissipation_terms(const State& s, const ReferenceProfileSample& profile,
                                   double gamma);

struct DampedQuantities {
    double H = 0.0;
    double J = 0.0;
    double K = 0.0;
};

/// Quantities of the damped-equation estimate for the hyperbolic variant with
/// gamma >= 2. The alpha bounds are the run-horizon witnesses.
DampedQuantities damped_energy_terms(const State& s, const ReferenceProfileSample& profile,
                                     const BoundaryData& bd, double gamma,
                                     const AlphaBounds& bounds);

/// Spatial mean of v - psi (trapezoid); conserved along hyperbolic runs.
double vtilde_mass(const Field& v, double psi);

/// Full ledger row for one sample.
DiagnosticsRecord make_record(const State& s, const ReferenceProfileSample& profile,
                              const BoundaryData& bd, const ModelParams& params,
                              const AlphaBounds& bounds);

struct GronwallLedger {
    std::optional<double> cstar;   // minimal working constant, absent when none <= cap works
    std::vector<double> margin;    // rhs - lhs per sample at cstar (empty when absent)
    double tolerance = 1e-10;
    double cap = 1e8;

    bool found() const { return cstar.has_value(); }
};

/// Checks G(t) <= (G(0) + C * int_0^t F) * exp(C * int_0^t F) at every sample,
/// where G = ledger_lhs and F is the recorded forcing. Margins returned when
/// requested.
bool gronwall_holds(const std::vector<DiagnosticsRecord>& series, double C,
                    std::vector<double>* margin_out = nullptr, double tolerance = 1e-10);

/// Minimal constant for which the integrated inequality holds over the run.
GronwallLedger fit_gronwall(const std::vector<DiagnosticsRecord>& series);

/// Evaluates the ledger bound at C into ledger_rhs of every record.
void fill_ledger_rhs(std::vector<DiagnosticsRecord>& series, double C);

extern const std::vector<std::string> kDiagnosticsCsvHeader;

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& series);
std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& text);

}  // namespace chemolab
