#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chemolab/errors.hpp"

namespace chemolab {

/// One time-dependent boundary trace with derivative access.
/// Analytic signals carry exact derivatives; tabulated signals interpolate
/// linearly and use the interval slope as the derivative, so value and
/// derivative stay mutually consistent in the forcing ledgers.
struct BoundarySignal {
    enum class Kind { Analytic, Tabulated };

    Kind kind = Kind::Analytic;
    std::function<double(double)> value;
    std::function<double(double)> derivative;

    double operator()(double t) const { return value(t); }
};

BoundarySignal constant_signal(double value);
/// 1 + c * exp(-lambda t)
BoundarySignal one_plus_exponential_decay(double c, double lambda);
/// c * exp(-lambda t)
BoundarySignal exponential_decay(double c, double lambda);
/// offset + c * exp(-lambda t) * cos(omega t)
BoundarySignal damped_oscillation(double c, double lambda, double omega, double offset = 0.0);
/// 1 + c / (1 + lambda t); decays but with a non-integrable tail.
BoundarySignal one_plus_algebraic_decay(double c, double lambda);
/// Piecewise-linear interpolant of (t, value) samples; held constant outside
/// the table. Samples must be strictly increasing in t.
BoundarySignal tabulated_signal(std::vector<std::pair<double, double>> samples);

/// The four boundary traces. beta is absent for the parabolic-hyperbolic
/// variant, where no boundary condition is imposed on v.
struct BoundaryData {
    BoundarySignal alpha1;
    BoundarySignal alpha2;
    std::optional<BoundarySignal> beta1;
    std::optional<BoundarySignal> beta2;

    bool has_beta() const { return beta1.has_value() && beta2.has_value(); }
};

/// Pointwise bounds of min/max(alpha1, alpha2) sampled over a horizon.
struct AlphaBounds {
    double lower = 0.0;
    double upper = 0.0;
    double sample_dt = 0.0;
    double horizon = 0.0;
};

/// Dense sampling of the alpha traces over [0, horizon] with step dt.
AlphaBounds sample_alpha_bounds(const BoundaryData& bd, double horizon, double dt);

/// One integrand of the integrability report.
struct BaSignalReport {
    std::string name;
    double total = 0.0;  // int_0^horizon |signal|
    double tail = 0.0;   // same integral over the last tail_fraction of the horizon
};

struct BaReport {
    std::vector<BaSignalReport> signals;
    double alpha1_min = 0.0;
    double alpha2_min = 0.0;
    double horizon = 0.0;
    double tail_window_fraction = 0.1;
    double tail_fraction_threshold = 0.01;
    bool satisfied = true;

    std::string verdict() const { return satisfied ? "Satisfied" : "Suspect"; }
};

/// Numerically probes whether the boundary data decays in an integrable way:
/// integrates |alpha_i - 1|, |beta_i| and the absolute derivatives over
/// [0, horizon] and flags Suspect when the last 10% of the horizon still
/// carries >= 1% of any total. Heuristic, reported as such.
BaReport ba_integrability_check(const BoundaryData& bd, double horizon, double dt);

}  // namespace chemolab
