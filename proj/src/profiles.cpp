#include "chemolab/profiles.hpp"

#include <cmath>

#include "chemolab/numerics.hpp"

namespace chemolab {

namespace {

Field affine_interpolant(const SpatialGrid& grid, double left, double right) {
    Field f(grid);
    const double span = right - left;
    for (int i = 1; i < grid.n - 1; ++i) {
        const double theta = static_cast<double>(i) / static_cast<double>(grid.n - 1);
        f[i] = left + theta * span;
    }
    f[0] = left;  // exact at the endpoints, not interpolated
    f[grid.n - 1] = right;
    return f;
}

}  // namespace

Field alpha_profile(const BoundaryData& bd, const SpatialGrid& grid, double t) {
    if (t < 0.0) throw InvalidParams("alpha_profile: t must be non-negative");
    return affine_interpolant(grid, bd.alpha1(t), bd.alpha2(t));
}

Field beta_profile(const BoundaryData& bd, const SpatialGrid& grid, double t) {
    if (t < 0.0) throw InvalidParams("beta_profile: t must be non-negative");
    if (!bd.has_beta())
        throw MissingBetaSignals("beta_profile: boundary data carries no beta signals");
    return affine_interpolant(grid, bd.beta1->value(t), bd.beta2->value(t));
}

double psi_average(const BoundaryData& bd, double v0_mean, double gamma, double t,
                   double quadrature_dt, double domain_length) {
    if (t < 0.0) throw InvalidParams("psi_average: t must be non-negative");
    if (!(quadrature_dt > 0.0)) throw InvalidParams("psi_average: quadrature_dt must be positive");
    if (!(domain_length > 0.0)) throw InvalidParams("psi_average: domain length must be positive");
    auto flux = [&](double tau) {
        return std::pow(bd.alpha2(tau), gamma) - std::pow(bd.alpha1(tau), gamma);
    };
    return v0_mean + trapezoid_time(flux, t, quadrature_dt) / domain_length;
}

double forcing_full(const BoundaryData& bd, double t) {
    if (!bd.has_beta())
        throw MissingBetaSignals("forcing_full: beta signals required; use forcing_alpha");
    const double a1 = bd.alpha1(t), a2 = bd.alpha2(t);
    const double b1 = bd.beta1->value(t), b2 = bd.beta2->value(t);
    return std::abs(1.0 - a1) + std::abs(a2 - a1) + std::abs(bd.alpha1.derivative(t)) +
           std::abs(bd.alpha2.derivative(t)) + std::abs(b2 - b1) +
           std::abs(bd.beta1->derivative(t)) + std::abs(bd.beta2->derivative(t));
}

double forcing_alpha(const BoundaryData& bd, double t) {
    const double a1 = bd.alpha1(t), a2 = bd.alpha2(t);
    return std::abs(1.0 - a1) + std::abs(a2 - a1) + std::abs(bd.alpha1.derivative(t)) +
           std::abs(bd.alpha2.derivative(t));
}

}  // namespace chemolab
