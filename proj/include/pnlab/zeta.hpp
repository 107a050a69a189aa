#pragma once

#include <string>
#include <vector>

#include "pnlab/numerics.hpp"
#include "pnlab/test_function.hpp"

namespace pnlab {

// psi(z) by upward recurrence to Re z >= 12, then the asymptotic series.
cplx digamma(cplx z);

// Scaled complementary error function e^{z^2} erfc(z) for complex z.
cplx erfcx(cplx z);
// Faddeeva w(z) = e^{-z^2} erfc(-iz), Im z >= 0 (Weideman rational approximation).
cplx faddeeva_w(cplx z);

// int_0^inf e^{z t} exp(-(t-mu)^2 / (2 s^2)) dt, stable for large |Im z|.
cplx gauss_halfline_laplace(cplx z, double mu, double s);

// int_0^inf (e^{-t}/t - e^{-st}/(1-e^{-t})) dt = psi(s) for Re s > 0.
cplx gauss_digamma_integral(cplx s, double quad_tol = 1e-11);

struct ZeroTable {
    std::vector<double> ordinates;  // ascending positive heights gamma_n
    std::string source;
    std::size_t count() const { return ordinates.size(); }
    ZeroTable truncated(std::size_t n) const;
};

ZeroTable load_zero_table(const std::string& path);

struct PrimeSupportTerm {
    double position;  // k log p
    double weight;    // log p = Lambda(p^k)
    long long n;      // p^k
};

std::vector<PrimeSupportTerm> prime_support(double T,
                                            const NumericsConfig& cfg = default_config());

// (1/2pi) int Psi(t) hat(phi)(t) dt with Psi(t) = -log pi + Re psi(1/4 + it/2).
double weil_functional(const TestFunction& phi, double quad_tol = 1e-11);

struct ExplicitReport {
    double lhs = 0.0;           // sum over zeros of hat(phi)(gamma), both signs
    double archimedean = 0.0;   // weil functional
    double poles = 0.0;         // hat(phi)(i/2) + hat(phi)(-i/2)
    double primes = 0.0;        // von Mangoldt side
    double rhs = 0.0;
    double residual = 0.0;
    double zero_tail = 0.0;
    double prime_tail = 0.0;
    double quad = 0.0;
    bool pass = false;
};

ExplicitReport explicit_formula_check(const TestFunction& phi, const ZeroTable& zt, double T,
                                      double tol = 1e-3,
                                      const NumericsConfig& cfg = default_config());

struct C0Estimate {
    double value = 0.0;
    double spread = 0.0;  // max deviation across the phi list
    double budget = 0.0;
};

// Solves 2 c0 phi(0) = [regularized zero side: nontrivial zeros, trivial
// zeros, pole] + [prime side] at base point sigma = beta, averaged over phis.
C0Estimate extract_c0(const ZeroTable& zt, double beta, const std::vector<TestFunction>& phis,
                      double T, const NumericsConfig& cfg = default_config());

// c0(chi0, sigma) = (log pi)/2 - gamma/2 - psi(sigma).
cplx c0_chi0(cplx sigma);

// Trivial-divisor profile W0 for beta = 1/2: -e^{|t|/2} + e^{-3|t|/2}/(2 sinh |t|).
double w0_profile(double t);
// Truncated counterpart -e^{|t|/2} + sum_{n<=N} e^{-(2n+1/2)|t|}.
double w0_truncated(double t, int N);

// Archimedean density Psi(t) used by the Weil functional.
double psi_weil(double t);

}  // namespace pnlab
