#pragma once

#include <string>
#include <vector>

#include "pnlab/pairing.hpp"
#include "pnlab/series.hpp"
#include "pnlab/test_function.hpp"

namespace pnlab {

struct VerificationReport {
    std::string name;
    cplx lhs{};
    cplx rhs{};
    double residual = 0.0;  // |lhs - rhs|
    double budget = 0.0;    // truncation + quadrature bounds
    double tol = 0.0;
    bool pass = false;
    std::string inputs;  // provenance block (series, phi, sigma, d', ymax, T)

    void finish() {
        residual = std::abs(lhs - rhs);
        pass = residual <= budget + tol;
    }
    std::string to_json() const;
};

// Zero side vs atomic side of the distributional identity. Gaussians take the
// full formula (c0 phi(0) term); bumps inside R_+^* take the restricted one.
VerificationReport verify_pn(const FiniteDirichletSeries& f, const TestFunction& phi,
                             const PairingConfig& cfg, double T, double tol = 1e-6,
                             const NumericsConfig& num = default_config());

// Power sums from roots vs the multinomial route.
VerificationReport verify_newton_equivalence(const std::vector<cplx>& poly_coeffs, int M,
                                             double tol = 1e-9,
                                             const NumericsConfig& num = default_config());

// Level-zero sums m = 0..M with the harmonic first-order correction vs the
// partial-zeta weighted atomic side.
VerificationReport verify_lifting(const FiniteDirichletSeries& f, int M, const TestFunction& phi,
                                  double ymax, double tol = 1e-6,
                                  const NumericsConfig& num = default_config());

}  // namespace pnlab
