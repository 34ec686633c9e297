#pragma once

#include <vector>

#include "chemolab/grid.hpp"

namespace chemolab {

/// Central-difference derivative, second-order one-sided at the two endpoints.
/// This is the project's standard derivative for transforms and diagnostics.
Field derivative(const Field& f);

/// Composite trapezoid quadrature over the field's grid.
double trapezoid(const Field& f);

/// trapezoid(f) / (b - a).
double trapezoid_mean(const Field& f);

/// Running integral W(x_i) = int_a^{x_i} f dy by cumulative trapezoid, W(a) = 0.
Field cumulative_trapezoid(const Field& f);

/// Composite trapezoid of a time signal g over [0, t] with step <= dt_max.
template <typename G>
double trapezoid_time(G&& g, double t, double dt_max) {
    if (t <= 0.0) return 0.0;
    int steps = static_cast<int>(t / dt_max);
    if (static_cast<double>(steps) * dt_max < t) ++steps;
    if (steps < 1) steps = 1;
    const double dt = t / static_cast<double>(steps);
    double acc = 0.5 * (g(0.0) + g(t));
    for (int k = 1; k < steps; ++k) acc += g(dt * static_cast<double>(k));
    return acc * dt;
}

/// Tridiagonal system solved by the Thomas algorithm.
/// lower[0] and upper[n-1] are ignored.
struct Tridiagonal {
    std::vector<double> lower, diag, upper;

    explicit Tridiagonal(int n)
        : lower(static_cast<std::size_t>(n), 0.0),
          diag(static_cast<std::size_t>(n), 1.0),
          upper(static_cast<std::size_t>(n), 0.0) {}

    int size() const { return static_cast<int>(diag.size()); }
    std::vector<double> solve(const std::vector<double>& rhs) const;
    /// max_i |(A x - rhs)_i|, for post-solve verification.
    double residual_inf(const std::vector<double>& x, const std::vector<double>& rhs) const;
};

}  // namespace chemolab
