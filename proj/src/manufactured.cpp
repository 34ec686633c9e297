#include "chemolab/manufactured.hpp"

#include <cmath>

namespace chemolab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ManufacturedSolution::u(double x, double t) const {
    const double xh = (x - domain.a) / domain.length();
    return 1.0 + 0.5 * std::exp(-t) * std::sin(kPi * xh);
}

double ManufacturedSolution::v(double x, double t) const {
    const double xh = (x - domain.a) / domain.length();
    return 0.5 * std::exp(-t) * xh * (1.0 - xh);
}

double ManufacturedSolution::u_x(double x, double t) const {
    const double L = domain.length();
    const double xh = (x - domain.a) / L;
    return 0.5 * std::exp(-t) * kPi * std::cos(kPi * xh) / L;
}

double ManufacturedSolution::v_x(double x, double t) const {
    const double L = domain.length();
    const double xh = (x - domain.a) / L;
    return 0.5 * std::exp(-t) * (1.0 - 2.0 * xh) / L;
}

double ManufacturedSolution::source_u(double x, double t) const {
    const double L = domain.length();
    const double xh = (x - domain.a) / L;
    const double A = 0.5 * std::exp(-t);
    const double uu = 1.0 + A * std::sin(kPi * xh);
    const double ut = -A * std::sin(kPi * xh);
    const double uxx = -A * kPi * kPi * std::sin(kPi * xh) / (L * L);
    const double uv_x = u_x(x, t) * v(x, t) + uu * v_x(x, t);
    return ut - uxx - uv_x - uu * (1.0 - uu);
}

double ManufacturedSolution::source_v(double x, double t) const {
    const double L = domain.length();
    const double xh = (x - domain.a) / L;
    const double A = 0.5 * std::exp(-t);
    const double vt = -A * xh * (1.0 - xh);
    const double ugx = gamma * std::pow(u(x, t), gamma - 1.0) * u_x(x, t);  // (u^gamma)_x
    if (variant == Variant::ParabolicHyperbolic) return vt - ugx;
    const double vxx = -2.0 * A / (L * L);
    const double v2x = 2.0 * v(x, t) * v_x(x, t);
    return vt - vxx - v2x - ugx;
}

Field ManufacturedSolution::sample_u(const SpatialGrid& g, double t) const {
    return sample_field(g, [&](double x) { return u(x, t); });
}

Field ManufacturedSolution::sample_v(const SpatialGrid& g, double t) const {
    return sample_field(g, [&](double x) { return v(x, t); });
}

}  // namespace chemolab
