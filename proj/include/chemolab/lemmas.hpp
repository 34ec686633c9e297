#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chemolab/errors.hpp"

namespace chemolab {

enum class LemmaId { T1, T2, T3, T4, T5 };

const char* lemma_name(LemmaId id);

/// Two sides of one elementary power inequality at a point (rho, s).
/// residual = rhs - lhs; >= 0 means the inequality holds there.
struct InequalityResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double rho = 0.0;
    double s = 0.0;
};

/// (rho-1)^2 <= rho^s - 1 - s(rho-1), for rho >= 0, s >= 2.
InequalityResidual ineq_t1(double rho, double s);
/// rho-1 <= rho^s - 1 - s(rho-1) + (s-1)(1+1/s)^{s/(s-1)} - s, for rho >= 0, 1 < s <= 2.
InequalityResidual ineq_t2(double rho, double s);
/// |rho-1|^s <= rho^s - 1 - s(rho-1), for rho >= 0, s >= 2.
InequalityResidual ineq_t3(double rho, double s);
/// s(rho-1) <= rho^s - 1, for rho >= 0, s >= 1.
InequalityResidual ineq_t4(double rho, double s);
/// |rho^s - 1| <= |rho-1|, for rho >= 0, 0 <= s <= 1.
InequalityResidual ineq_t5(double rho, double s);

InequalityResidual lemma_residual(LemmaId id, double rho, double s);

/// rho at which the T2 bound touches zero for a given s.
double t2_equality_rho(double s);

/// Acceptable floating-point floor for a residual at (rho, s): -1e-12
/// absolute up to rho = 1e3, relative rounding model above.
double residual_tolerance(double rho, double s);

struct FuzzReport {
    LemmaId lemma = LemmaId::T1;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    double min_residual = 0.0;
    InequalityResidual worst;    // where the minimum was attained
    std::int64_t violations = 0; // residuals below the local tolerance

    bool passed() const { return violations == 0; }
};

/// Seeded random sweep over the lemma's domain: rho log-uniform in
/// [1e-6, rho_max] plus the rho = 0 endpoint, s uniform in its interval.
/// Deterministic for a fixed seed.
FuzzReport fuzz_lemma(LemmaId id, std::int64_t samples, std::uint64_t seed, double rho_max = 1e3);

}  // namespace chemolab
