#include "chemolab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace chemolab {

SpatialGrid::SpatialGrid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
    if (!(b > a)) throw InvalidParams("SpatialGrid: requires b > a");
    if (n < 3) throw InvalidParams("SpatialGrid: requires n >= 3 nodes");
}

Field::Field(const SpatialGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
        throw InvalidParams("Field: values length does not match grid node count");
}

double Field::min() const { return *std::min_element(values.begin(), values.end()); }

double Field::max() const { return *std::max_element(values.begin(), values.end()); }

bool Field::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

bool Field::all_positive() const {
    for (double v : values)
        if (!(v > 0.0)) return false;
    return true;
}

State::State(double t_, Field u_, Field v_) : t(t_), u(std::move(u_)), v(std::move(v_)) {
    if (t < 0.0) throw InvalidParams("State: time must be non-negative");
    require_same_grid(u, v, "State");
}

void require_same_grid(const Field& x, const Field& y, const char* what) {
    if (!(x.grid == y.grid))
        throw GridMismatch(std::string(what) + ": fields live on different grids");
}

}  // namespace chemolab
