#pragma once

#include <functional>

#include "pnlab/numerics.hpp"
#include "pnlab/test_function.hpp"

namespace pnlab {

struct EMConfig {
    int m = 3;                        // Bernoulli truncation order
    double remainder_quad_tol = 1e-12;
    cplx sigma{0.0, 0.0};             // 0 = classical; else the Hurwitz-generalized variant
};

// B_n from the exact rational recurrence, rounded once to binary64. B_1 = -1/2.
double bernoulli(int n);

// zeta(s, q) = sum_{n>=0} (n+q)^{-s} with Euler-Maclaurin tail; complex s, q.
cplx hurwitz_zeta(cplx s, cplx q);

// sum_{k in Z, k != 0} (sigma + 2 pi i k)^{-ell}; ell = 1 uses the coth closed
// form (symmetric pairing), ell >= 2 goes through hurwitz_zeta.
cplx lattice_sum(int ell, cplx sigma);

struct SumResult {
    double value = 0.0;
    double remainder_bound = 0.0;
    int terms_used = 0;
};

// sum_{n=0}^{N} phi(n) reconstructed from integral + Bernoulli boundary terms
// + oscillatory remainder.
SumResult em_finite(const SmoothFunction& phi, int N, const EMConfig& cfg,
                    const NumericsConfig& num = default_config());

// sum_{n>=0} phi(n); rapid-decay phi. cfg.sigma != 0 routes the delta-structure
// through the lattice sums built on hurwitz_zeta.
SumResult em_infinite(const SmoothFunction& phi, const EMConfig& cfg,
                      const NumericsConfig& num = default_config());

// Holomorphic phi on Re z > 0 with the classical decay hypotheses.
struct AnalyticFunction {
    std::function<cplx(cplx)> eval;
    std::function<double(double)> real_eval;  // optional fast real path; may be null
};

SumResult abel_plana(const AnalyticFunction& phi, const NumericsConfig& num = default_config());

// RC(phi) = -phi(0)/2 - sum_l B_{2l}/(2l)! phi^{(2l-1)}(0): value computed
// exactly through the EM remainder at order m; the divergent Bernoulli series
// truncated at its smallest term is reported as the series diagnostic.
struct RamanujanResult {
    double value = 0.0;            // exact (EM-remainder) value of RC
    double series_value = 0.0;     // superasymptotic truncation of the Bernoulli series
    double first_omitted = 0.0;    // magnitude of the first omitted Bernoulli term
    int terms_used = 0;
    double remainder_bound = 0.0;
};

RamanujanResult ramanujan_constant(const SmoothFunction& phi,
                                   const NumericsConfig& num = default_config());

}  // namespace pnlab
