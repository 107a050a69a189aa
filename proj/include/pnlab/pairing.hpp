#pragma once

#include <functional>

#include "pnlab/freq.hpp"
#include "pnlab/numerics.hpp"
#include "pnlab/series.hpp"
#include "pnlab/test_function.hpp"
#include "pnlab/zeros.hpp"

namespace pnlab {

struct PairingConfig {
    cplx sigma{2.0, 0.0};   // base point, off the divisor unless it matches an entry exactly
    int d_prime = 2;        // >= d (= 2 for finite Dirichlet series)
    double ymax = 100.0;    // zero truncation height used when the divisor was built
    double quad_tol = 1e-10;
    double tail_budget = 0.0;  // filled by the pairing from the zero-density estimate
};

struct PairedValue {
    cplx value{};
    double tail_bound = 0.0;
    double quad_error = 0.0;
};

// K_ell(t, sigma) = sum_rho n_rho (rho-sigma)^{-ell} e^{(rho-sigma) t} over the
// divisor entries, plus n_sigma t^ell/ell! when sigma coincides with an entry.
PairedValue k_ell_sum(const Divisor& div, int ell, cplx sigma, double t,
                      const NumericsConfig& cfg = default_config());

// <W(f, sigma, d'), phi> by the regularized integral
//   (-1)^{d'} int_0^inf (K_{d'}(t)-K_{d'}(0)) (d/dt)^{d'} [e^{sigma t} phi(t)] dt.
// A nonzero tilt beta pairs against e^{-beta t} phi instead (h = e^{(sigma-beta)t} phi).
PairedValue pair_zero_side(const Divisor& div, const SmoothFunction& phi,
                           const PairingConfig& cfg, double tilt_beta = 0.0,
                           double lambda_max_hint = 0.0,
                           const NumericsConfig& num = default_config());

// Analytic path for phi(t) = e^{-st}: each entry contributes in closed form.
cplx pair_zero_side_exp(const Divisor& div, cplx s, const PairingConfig& cfg,
                        const NumericsConfig& num = default_config());

// Atomic side: sum_{<lambda,k> <= T} <lambda,k> b_k phi(<lambda,k>)
//            + sum_j c_j (-1)^j phi^{(j)}(0).
PairedValue pair_atomic_side(const FiniteDirichletSeries& f, const SmoothFunction& phi,
                             const std::vector<cplx>& c_poly, double T,
                             const NumericsConfig& num = default_config());

struct SymmetricPair {
    cplx lhs{};
    cplx rhs{};
    double budget = 0.0;
};

// Symmetric formula for real-analytic f of genus 1 with tilt beta:
//   sum_rho n_rho <e^{(rho-beta)|t|}, phi>
//     = 2 c0(f, sigma) phi(0)
//     + sum_{k in Lambda u (-Lambda)} <l,|k|> e^{-<l,|k|> beta} b_|k| phi(<l,k>).
SymmetricPair pair_symmetric(const Divisor& div, const FiniteDirichletSeries& f,
                             const SmoothFunction& phi, double beta, const PairingConfig& cfg,
                             const NumericsConfig& num = default_config());

// W(1/Gamma)(t) = sum_{n>=0} e^{-nt} = 1/(1-e^{-t}) for t > 0.
double closed_theta(double t);

// Hadamard-regularized pairing of a theta-distribution W against phi:
//   int_0^inf W(t) e^{-sigma1 t} (psi(t) - jet_{d-2} psi(0)) dt, psi = e^{sigma1 t} phi.
// phi is supplied as derivative oracle (complex-valued to admit e^{-st}).
struct AnalyticPairFunction {
    std::function<cplx(int, double)> deriv;  // (order, t)
    int max_order = 0;
};

cplx hadamard_regularized_pair(const std::function<double(double)>& theta_w,
                               const AnalyticPairFunction& phi, double sigma1, int d,
                               double quad_tol = 1e-11);

}  // namespace pnlab
