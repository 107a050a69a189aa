#pragma once

#include <optional>
#include <vector>

#include "pnlab/numerics.hpp"
#include "pnlab/series.hpp"
#include "pnlab/zeros.hpp"

namespace pnlab {

struct DiscrepancyPoly {
    std::vector<cplx> coeffs;     // c_0 .. c_{g-1}; a single constant for g = 1
    cplx sigma{};
    double sample_residual = 0.0; // max deviation of sampled P_f from the fit
};

// G(s, sigma) = n_sigma/(s-sigma) + sum_{rho != sigma} n_rho (s-sigma)^{d-1} /
// ((rho-sigma)^{d-1} (s-rho)), truncated at the divisor's height.
struct GInterpValue {
    cplx value{};
    double tail_bound = 0.0;
};

GInterpValue g_interp(const Divisor& div, cplx sigma, cplx s, double ymax,
                      const NumericsConfig& cfg = default_config());

// P_f(., sigma) = G(., sigma) - f'/f sampled on Re s = sigma1 + 2. The slow
// 1/ymax truncation of G is removed by raising the regularization order and
// restoring the exact absolutely-convergent power sums S*_m(sigma), which for
// a finite Dirichlet series come in closed form from the log-derivative
// Taylor expansion at sigma.
DiscrepancyPoly discrepancy_poly(const FiniteDirichletSeries& f, const Divisor& div, cplx sigma,
                                 double ymax, const NumericsConfig& cfg = default_config());

// Coefficients of Q_{f,sigma'} - Q_{f,sigma}: m = 1 returns the single
// derivative constant, m = 2 the {B, A} of A s + B.
std::vector<cplx> shift_Q_poly(const Divisor& div, cplx sigma, cplx sigma_prime, double ymax,
                               int m = 1, const NumericsConfig& cfg = default_config());

struct FunctionalEquation {
    double mu = 0.0;  // exponent-symmetry center lambda_N / 2
    int c = 1;        // +1 or -1
};

// Present iff exponents {0, lambda_1..lambda_N} are symmetric about mu and
// a_{N-i} = c a_i; then h(s) = e^{mu s} f(s) satisfies h(-s) = c h(s).
std::optional<FunctionalEquation> detect_functional_equation(const FiniteDirichletSeries& f,
                                                             double tol = 1e-9);

// Exact absolutely convergent power sums over the divisor of f:
//   S*_m(sigma) = sum_{rho != sigma} n_rho (rho - sigma)^{-m},  m >= 2,
// from the Taylor expansion of f'/f - n_sigma/(s-sigma) at sigma.
std::vector<cplx> divisor_power_sums(const FiniteDirichletSeries& f, cplx sigma, int max_m);

}  // namespace pnlab
