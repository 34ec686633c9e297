#pragma once

#include <optional>

#include "chemolab/boundary.hpp"
#include "chemolab/grid.hpp"

namespace chemolab {

/// Reference data at one instant: the affine interpolant of the boundary
/// traces (alpha always, beta for the parabolic-parabolic variant) or the
/// dynamic spatial average psi (hyperbolic variant).
struct ReferenceProfileSample {
    double t = 0.0;
    Field alpha;
    std::optional<Field> beta;
    std::optional<double> psi;
};

/// alpha(x,t) = alpha1(t) + (x-a)/(b-a) * [alpha2(t) - alpha1(t)].
/// Endpoint nodes are assigned the traces exactly.
Field alpha_profile(const BoundaryData& bd, const SpatialGrid& grid, double t);

/// Same interpolant built from the beta traces. Throws MissingBetaSignals
/// when the boundary data carries no beta.
Field beta_profile(const BoundaryData& bd, const SpatialGrid& grid, double t);

/// psi(t) = v0_mean + (1/(b-a)) * int_0^t (alpha2^gamma - alpha1^gamma) dtau,
/// the time integral by composite trapezoid with step <= quadrature_dt.
/// v0_mean is the spatial mean of the initial v over the domain.
double psi_average(const BoundaryData& bd, double v0_mean, double gamma, double t,
                   double quadrature_dt, double domain_length);

/// Forcing budget of the parabolic-parabolic estimates:
/// |1-a1| + |a2-a1| + |a1'| + |a2'| + |b2-b1| + |b1'| + |b2'|.
double forcing_full(const BoundaryData& bd, double t);

/// Forcing budget of the hyperbolic estimates (alpha terms only):
/// |1-a1| + |a2-a1| + |a1'| + |a2'|.
double forcing_alpha(const BoundaryData& bd, double t);

}  // namespace chemolab
