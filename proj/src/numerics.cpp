#include "chemolab/numerics.hpp"

#include <cmath>
#include <cstdlib>

namespace chemolab {

Field derivative(const Field& f) {
    const int n = f.size();
    const double h = f.grid.h();
    Field d(f.grid);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (int i = 1; i < n - 1; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

double trapezoid(const Field& f) {
    const int n = f.size();
    double acc = 0.5 * (f[0] + f[n - 1]);
    for (int i = 1; i < n - 1; ++i) acc += f[i];
    return acc * f.grid.h();
}

double trapezoid_mean(const Field& f) { return trapezoid(f) / f.grid.length(); }

Field cumulative_trapezoid(const Field& f) {
    const int n = f.size();
    const double h = f.grid.h();
    Field w(f.grid);
    w[0] = 0.0;
    for (int i = 1; i < n; ++i) w[i] = w[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return w;
}

std::vector<double> Tridiagonal::solve(const std::vector<double>& rhs) const {
    const int n = size();
    std::vector<double> c(static_cast<std::size_t>(n));
    std::vector<double> d(static_cast<std::size_t>(n));
    std::vector<double> x(static_cast<std::size_t>(n));

    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (int i = 1; i < n; ++i) {
        const double m = diag[static_cast<std::size_t>(i)] -
                         lower[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i - 1)];
        c[static_cast<std::size_t>(i)] = upper[static_cast<std::size_t>(i)] / m;
        d[static_cast<std::size_t>(i)] =
            (rhs[static_cast<std::size_t>(i)] -
             lower[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i - 1)]) /
            m;
    }
    x[static_cast<std::size_t>(n - 1)] = d[static_cast<std::size_t>(n - 1)];
    for (int i = n - 2; i >= 0; --i)
        x[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] -
                                         c[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)];
    return x;
}

double Tridiagonal::residual_inf(const std::vector<double>& x,
                                 const std::vector<double>& rhs) const {
    const int n = size();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double ax = diag[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        if (i > 0) ax += lower[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i - 1)];
        if (i < n - 1) ax += upper[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)];
        worst = std::max(worst, std::abs(ax - rhs[static_cast<std::size_t>(i)]));
    }
    return worst;
}

}  // namespace chemolab
