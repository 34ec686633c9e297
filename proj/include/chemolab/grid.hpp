#pragma once

#include <cstddef>
#include <vector>

#include "chemolab/errors.hpp"

namespace chemolab {

/// Uniform 1D grid on [a,b] with n nodes including both endpoints.
struct SpatialGrid {
    double a = 0.0;
    double b = 1.0;
    int n = 3;

    SpatialGrid() = default;
    SpatialGrid(double a_, double b_, int n_);

    double h() const { return (b - a) / static_cast<double>(n - 1); }
    double node(int i) const { return a + static_cast<double>(i) * h(); }
    double length() const { return b - a; }

    bool operator==(const SpatialGrid&) const = default;
};

/// Grid-sampled scalar field.
struct Field {
    SpatialGrid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const SpatialGrid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.n), fill) {}
    Field(const SpatialGrid& g, std::vector<double> v);

    int size() const { return grid.n; }
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }

    double min() const;
    double max() const;
    bool all_finite() const;
    bool all_positive() const;
};

/// Sample a callable f(x) on every node of the grid.
template <typename F>
Field sample_field(const SpatialGrid& g, F&& f) {
    Field out(g);
    for (int i = 0; i < g.n; ++i) out[i] = f(g.node(i));
    return out;
}

/// Solution pair (u, v) at time t; u and v share one grid.
struct State {
    double t = 0.0;
    Field u;
    Field v;

    State() = default;
    State(double t_, Field u_, Field v_);
};

void require_same_grid(const Field& x, const Field& y, const char* what);

}  // namespace chemolab
