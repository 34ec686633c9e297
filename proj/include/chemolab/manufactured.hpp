#pragma once

#include "chemolab/grid.hpp"
#include "chemolab/model.hpp"

namespace chemolab {

/// Decaying analytic solution pair used for order-of-accuracy runs:
///   u(x,t) = 1 + (1/2) e^{-t} sin(pi xh),  v(x,t) = (1/2) e^{-t} xh (1 - xh),
/// with xh = (x-a)/(b-a). Substituted into the governing equations it yields
/// closed-form residual sources, which the stepper adds when enabled.
/// Traces: u = 1 and v = 0 at both endpoints for all t.
struct ManufacturedSolution {
    Interval domain;
    double gamma = 1.0;
    Variant variant = Variant::ParabolicParabolic;

    double u(double x, double t) const;
    double v(double x, double t) const;
    double u_x(double x, double t) const;
    double v_x(double x, double t) const;

    double source_u(double x, double t) const;
    double source_v(double x, double t) const;

    Field sample_u(const SpatialGrid& g, double t) const;
    Field sample_v(const SpatialGrid& g, double t) const;
};

}  // namespace chemolab
