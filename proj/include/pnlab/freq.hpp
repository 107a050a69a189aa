#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pnlab/numerics.hpp"
#include "pnlab/series.hpp"

namespace pnlab {

// Sparse multi-index: (slot, count) pairs, slots 0-based, counts >= 1,
// sorted by slot.
using MultiIndex = std::vector<std::pair<int, int>>;

int multi_index_norm(const MultiIndex& k);  // ||k|| = sum of counts

struct FrequencyTerm {
    MultiIndex k;
    double value = 0.0;  // <lambda, k>
    cplx b{};            // unset (0) after enumeration; filled by b_coefficient
};

// All k with <lambda,k> <= T, sorted by (value, lex k). Q-dependent frequency
// collisions stay distinct terms.
std::vector<FrequencyTerm> enumerate_frequencies(const std::vector<double>& lambdas, double T,
                                                 const NumericsConfig& cfg = default_config());

// b_k = ((-1)^{||k||} / ||k||) * (||k||! / prod k_j!) * prod a_j^{k_j}.
cplx b_coefficient(const std::vector<cplx>& coeffs, const MultiIndex& k);

// Enumerate + fill b, sorted by value.
std::vector<FrequencyTerm> expansion_terms(const FiniteDirichletSeries& f, double T,
                                           const NumericsConfig& cfg = default_config());

// Aggregate coefficients of -log f by exponent, merging exponents closer than
// cfg.divisor_match_tol. Independent oracle via truncated -log(1+u) composition.
std::map<double, cplx> log_expansion_oracle(const FiniteDirichletSeries& f, double T,
                                            const NumericsConfig& cfg = default_config());

// Same aggregation applied to the closed-form b_k terms.
std::map<double, cplx> aggregate_terms(const std::vector<FrequencyTerm>& terms, double tol);

// Power sums S_1..S_M of the roots of z^n + a_1 z^{n-1} + ... + a_n via the
// multinomial b_k identity (no root extraction).
std::vector<cplx> newton_sums(const std::vector<cplx>& poly_coeffs, int M);

}  // namespace pnlab
