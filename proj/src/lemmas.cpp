#include "chemolab/lemmas.hpp"

#include <cmath>
#include <random>

namespace chemolab {

namespace {

// Residuals are evaluated in extended precision so the -1e-12 floor holds
// even on the exact-equality lines (s = 2 for T1/T3, s = 1 for T4/T5), where
// double rounding of rho^s alone would exceed it for rho near 1e3.
long double lpow(long double base, long double exp) {
    if (exp == 1.0L) return base;
    if (exp == 2.0L) return base * base;
    return std::pow(base, exp);
}

InequalityResidual make(double rho, double s, long double lhs, long double rhs) {
    InequalityResidual r;
    r.rho = rho;
    r.s = s;
    r.lhs = static_cast<double>(lhs);
    r.rhs = static_cast<double>(rhs);
    r.residual = static_cast<double>(rhs - lhs);
    return r;
}

}  // namespace

const char* lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::T1: return "T1";
        case LemmaId::T2: return "T2";
        case LemmaId::T3: return "T3";
        case LemmaId::T4: return "T4";
        case LemmaId::T5: return "T5";
    }
    return "?";
}

InequalityResidual ineq_t1(double rho, double s) {
    if (!(rho >= 0.0) || !(s >= 2.0)) throw DomainError("T1: requires rho >= 0 and s >= 2");
    const long double r = rho, e = s;
    const long double lhs = (r - 1.0L) * (r - 1.0L);
    const long double rhs = lpow(r, e) - 1.0L - e * (r - 1.0L);
    return make(rho, s, lhs, rhs);
}

InequalityResidual ineq_t2(double rho, double s) {
    if (!(rho >= 0.0) || !(s > 1.0) || !(s <= 2.0))
        throw DomainError("T2: requires rho >= 0 and 1 < s <= 2");
    const long double r = rho, e = s;
    const long double lhs = r - 1.0L;
    const long double rhs = lpow(r, e) - 1.0L - e * (r - 1.0L) +
                            (e - 1.0L) * lpow(1.0L + 1.0L / e, e / (e - 1.0L)) - e;
    return make(rho, s, lhs, rhs);
}

InequalityResidual ineq_t3(double rho, double s) {
    if (!(rho >= 0.0) || !(s >= 2.0)) throw DomainError("T3: requires rho >= 0 and s >= 2");
    const long double r = rho, e = s;
    const long double lhs = lpow(std::abs(r - 1.0L), e);
    const long double rhs = lpow(r, e) - 1.0L - e * (r - 1.0L);
    return make(rho, s, lhs, rhs);
}

InequalityResidual ineq_t4(double rho, double s) {
    if (!(rho >= 0.0) || !(s >= 1.0)) throw DomainError("T4: requires rho >= 0 and s >= 1");
    const long double r = rho, e = s;
    const long double lhs = e * (r - 1.0L);
    const long double rhs = lpow(r, e) - 1.0L;
    return make(rho, s, lhs, rhs);
}

InequalityResidual ineq_t5(double rho, double s) {
    if (!(rho >= 0.0) || !(s >= 0.0) || !(s <= 1.0))
        throw DomainError("T5: requires rho >= 0 and 0 <= s <= 1");
    const long double r = rho, e = s;
    const long double lhs = std::abs(lpow(r, e) - 1.0L);
    const long double rhs = std::abs(r - 1.0L);
    return make(rho, s, lhs, rhs);
}

InequalityResidual lemma_residual(LemmaId id, double rho, double s) {
    switch (id) {
        case LemmaId::T1: return ineq_t1(rho, s);
        case LemmaId::T2: return ineq_t2(rho, s);
        case LemmaId::T3: return ineq_t3(rho, s);
        case LemmaId::T4: return ineq_t4(rho, s);
        case LemmaId::T5: return ineq_t5(rho, s);
    }
    throw DomainError("unknown lemma id");
}

double t2_equality_rho(double s) { return std::pow(1.0 + 1.0 / s, 1.0 / (s - 1.0)); }

double residual_tolerance(double rho, double s) {
    if (rho <= 1e3) return 1e-12;
    return std::pow(rho, s) * 1e-15;
}

namespace {

struct SDomain {
    double lo, hi;
    bool lo_open = false;
};

SDomain s_domain(LemmaId id) {
    switch (id) {
        case LemmaId::T1:
        case LemmaId::T3: return {2.0, 64.0};
        case LemmaId::T2: return {1.0, 2.0, true};
        case LemmaId::T4: return {1.0, 64.0};
        case LemmaId::T5: return {0.0, 1.0};
    }
    return {0.0, 1.0};
}

}  // namespace

FuzzReport fuzz_lemma(LemmaId id, std::int64_t samples, std::uint64_t seed, double rho_max) {
    if (samples < 1) throw DomainError("fuzz_lemma: samples must be >= 1");
    rho_max = std::min(rho_max, 1e6);  // past this, powers overflow before anything interesting

    FuzzReport rep;
    rep.lemma = id;
    rep.samples = samples;
    rep.seed = seed;
    rep.min_residual = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const SDomain sd = s_domain(id);
    const double log_lo = std::log(1e-6), log_hi = std::log(rho_max);

    auto account = [&](const InequalityResidual& r) {
        if (std::isnan(r.residual)) {
            ++rep.violations;
            return;
        }
        if (r.residual < rep.min_residual) {
            rep.min_residual = r.residual;
            rep.worst = r;
        }
        if (r.residual < -residual_tolerance(r.rho, r.s)) ++rep.violations;
    };

    for (std::int64_t k = 0; k < samples; ++k) {
        double s = sd.lo + unit(rng) * (sd.hi - sd.lo);
        if (sd.lo_open && s <= sd.lo) s = std::nextafter(sd.lo, sd.hi);
        // Every 64th draw probes the rho = 0 endpoint; the rest are log-uniform.
        double rho;
        if (k % 64 == 63) {
            rho = 0.0;
        } else {
            rho = std::exp(log_lo + unit(rng) * (log_hi - log_lo));
            // Keep rho^s representable: cap s so s*ln(rho) stays below overflow.
            if (rho > 1.0) s = std::min(s, std::max(sd.lo, 690.0 / std::log(rho)));
        }
        account(lemma_residual(id, rho, s));
    }
    if (!std::isfinite(rep.min_residual)) rep.min_residual = 0.0;
    return rep;
}

}  // namespace chemolab
