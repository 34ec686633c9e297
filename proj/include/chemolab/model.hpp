#pragma once

#include <string>
#include <vector>

#include "chemolab/boundary.hpp"
#include "chemolab/grid.hpp"

namespace chemolab {

enum class Variant { ParabolicParabolic, ParabolicHyperbolic };

struct Interval {
    double a = 0.0;
    double b = 1.0;
    double length() const { return b - a; }
};

/// Dimensional parameters of the underlying chemotaxis-growth model.
struct PhysicalParams {
    double chi = -1.0;     // chemotactic sensitivity coefficient
    double D = 1.0;        // cell diffusivity
    double epsilon = 1.0;  // chemical diffusivity (0 selects the hyperbolic variant)
    double kappa1 = 1.0;   // growth rate
    double kappa2 = 1.0;   // carrying capacity
    double mu = -1.0;      // production coefficient
    double sigma = 0.0;    // decay coefficient (absorbed by the transformation)
    double gamma = 1.0;    // production exponent, >= 1

    void validate() const;
};

/// Non-dimensional model selection: which system, which exponent, which interval.
struct ModelParams {
    Variant variant = Variant::ParabolicParabolic;
    double gamma = 1.0;
    Interval domain;

    void validate() const;
    /// The hyperbolic variant with 1 < gamma < 2 runs but is outside the
    /// range the stability theory covers.
    bool outside_theory() const {
        return variant == Variant::ParabolicHyperbolic && gamma > 1.0 && gamma < 2.0;
    }
};

/// Scale factors produced by the rescaling; the x-scale sign depends on
/// sign(chi) and is reported separately from its magnitude.
struct ScalingReport {
    double r = 1.0;        // D*kappa1 / (mu*kappa2^gamma*chi)
    double v_scale = 1.0;  // sqrt(chi / (mu*kappa2^gamma))
    double x_scale_abs = 1.0;
    int x_scale_sign = 1;
    double t_scale = 1.0;  // mu*kappa2^gamma*chi / D
};

struct NondimResult {
    ModelParams params;
    ScalingReport report;
};

/// Rescales a physical parameter set to the non-dimensional systems.
/// Throws RejectedRegime when chi*mu <= 0 (finite-time blow-up territory)
/// and InvalidParams when a positivity invariant fails.
NondimResult nondimensionalize(const PhysicalParams& p, Interval physical_domain = {0.0, 1.0});

/// v = (ln c)_x sampled with the standard stencil. The exp(sigma*t) shift is
/// accepted for interface completeness but differentiates to zero, so it is
/// dropped algebraically rather than computed (it would overflow for large
/// sigma*t).
Field cole_hopf_forward(const Field& c, double sigma = 0.0, double t = 0.0);

/// Reconstructs c from v = (ln c)_x with c(a) = anchor_value > 0, via
/// cumulative trapezoid of v.
Field cole_hopf_inverse(const Field& v, double anchor_value);

struct CompatibilityReport {
    struct Mismatch {
        std::string where;
        double expected = 0.0;
        double actual = 0.0;
    };
    std::vector<Mismatch> mismatches;
    bool density_positive = true;
    double min_u = 0.0;
    double tol = 1e-10;

    bool ok() const { return mismatches.empty() && density_positive; }
    std::string summary() const;
};

/// Verifies that the initial state matches the boundary traces at t = 0 at the
/// four endpoints (v endpoints only when beta signals exist) and that the
/// initial density is strictly positive.
CompatibilityReport check_compatibility(const State& s, const BoundaryData& bd, double tol = 1e-10);

}  // namespace chemolab
