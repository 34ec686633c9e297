#include "chemolab/model.hpp"

#include <cmath>
#include <sstream>

#include "chemolab/numerics.hpp"

namespace chemolab {

void PhysicalParams::validate() const {
    if (!(D > 0.0)) throw InvalidParams("PhysicalParams: D must be positive");
    if (!(kappa1 > 0.0)) throw InvalidParams("PhysicalParams: kappa1 must be positive");
    if (!(kappa2 > 0.0)) throw InvalidParams("PhysicalParams: kappa2 must be positive");
    if (!(epsilon >= 0.0)) throw InvalidParams("PhysicalParams: epsilon must be non-negative");
    if (!(gamma >= 1.0)) throw InvalidParams("PhysicalParams: gamma must be >= 1");
    if (!(chi * mu > 0.0))
        throw RejectedRegime("PhysicalParams: chi*mu <= 0 admits finite-time blow-up; refused");
}

void ModelParams::validate() const {
    if (!(gamma >= 1.0)) throw InvalidGamma("ModelParams: gamma must be >= 1");
    if (!(domain.b > domain.a)) throw InvalidParams("ModelParams: domain must satisfy b > a");
}

NondimResult nondimensionalize(const PhysicalParams& p, Interval physical_domain) {
    p.validate();

    const double kpow = std::pow(p.kappa2, p.gamma);
    ScalingReport rep;
    rep.r = p.D * p.kappa1 / (p.mu * kpow * p.chi);
    rep.v_scale = std::sqrt(p.chi / (p.mu * kpow));
    rep.x_scale_abs = std::sqrt(p.chi * p.mu * kpow) / p.D;
    rep.x_scale_sign = (p.chi >= 0.0) ? 1 : -1;
    rep.t_scale = p.mu * kpow * p.chi / p.D;

    ModelParams mp;
    mp.variant = (p.epsilon == 0.0) ? Variant::ParabolicHyperbolic : Variant::ParabolicParabolic;
    mp.gamma = p.gamma;
    // Image of the physical interval under x -> sign(chi)*|x_scale|*x, endpoints sorted.
    const double s = static_cast<double>(rep.x_scale_sign) * rep.x_scale_abs;
    const double e1 = s * physical_domain.a;
    const double e2 = s * physical_domain.b;
    mp.domain = {std::min(e1, e2), std::max(e1, e2)};
    mp.validate();
    return {mp, rep};
}

Field cole_hopf_forward(const Field& c, double sigma, double t) {
    (void)sigma;  // the spatially constant shift sigma*t differentiates away
    (void)t;
    if (!c.all_positive())
        throw NonPositiveInput("cole_hopf_forward: concentration must be strictly positive");
    Field logc(c.grid);
    for (int i = 0; i < c.size(); ++i) logc[i] = std::log(c[i]);
    return derivative(logc);
}

Field cole_hopf_inverse(const Field& v, double anchor_value) {
    if (!(anchor_value > 0.0))
        throw NonPositiveInput("cole_hopf_inverse: anchor value must be strictly positive");
    Field w = cumulative_trapezoid(v);
    Field c(v.grid);
    const double log_anchor = std::log(anchor_value);
    for (int i = 0; i < v.size(); ++i) c[i] = std::exp(log_anchor + w[i]);
    return c;
}

std::string CompatibilityReport::summary() const {
    std::ostringstream os;
    if (ok()) {
        os << "compatible (tol " << tol << ")";
        return os.str();
    }
    if (!density_positive) os << "non-positive initial density (min u = " << min_u << "); ";
    for (const auto& m : mismatches)
        os << m.where << ": state " << m.actual << " vs boundary " << m.expected << "; ";
    return os.str();
}

CompatibilityReport check_compatibility(const State& s, const BoundaryData& bd, double tol) {
    CompatibilityReport rep;
    rep.tol = tol;
    rep.min_u = s.u.min();
    rep.density_positive = s.u.all_positive();

    const int last = s.u.size() - 1;
    auto check = [&](const char* where, double actual, double expected) {
        if (std::abs(actual - expected) > tol)
            rep.mismatches.push_back({where, expected, actual});
    };
    check("u(a,0) vs alpha1(0)", s.u[0], bd.alpha1(0.0));
    check("u(b,0) vs alpha2(0)", s.u[last], bd.alpha2(0.0));
    if (bd.has_beta()) {
        check("v(a,0) vs beta1(0)", s.v[0], bd.beta1->value(0.0));
        check("v(b,0) vs beta2(0)", s.v[last], bd.beta2->value(0.0));
    }
    return rep;
}

}  // namespace chemolab
