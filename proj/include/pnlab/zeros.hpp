#pragma once

#include <optional>
#include <vector>

#include "pnlab/numerics.hpp"
#include "pnlab/series.hpp"

namespace pnlab {

struct DivisorEntry {
    cplx rho;
    int n = 1;  // multiplicity, negative for poles
};

// Zeros/poles with multiplicities. For finite Dirichlet series d = 2, g = 1.
struct Divisor {
    std::vector<DivisorEntry> entries;
    double sigma1 = 0.0;  // sup Re rho
    int d = 2;
    int g = 1;

    int total_multiplicity() const;
    // multiplicity at sigma if it matches an entry within tol, else 0
    int multiplicity_at(cplx sigma, double tol) const;
};

struct SearchRegion {
    double re_min, re_max, im_min, im_max;
    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
};

int count_zeros_rect(const FiniteDirichletSeries& f, const SearchRegion& r,
                     const NumericsConfig& cfg = default_config());

Divisor find_zeros(const FiniteDirichletSeries& f, double ymax,
                   const NumericsConfig& cfg = default_config());

// Zeros of f - c via the rescaled series (f - c)/(1 - c); c = 1 is rejected.
Divisor find_level_zeros(const FiniteDirichletSeries& f, cplx c, double ymax,
                         const NumericsConfig& cfg = default_config());

struct RationalReduction {
    double lambda = 0.0;               // base frequency
    std::vector<cplx> poly;            // 1 + sum a_n X^{k_n}, ascending powers of X = e^{-lambda s}
    std::vector<long long> exponents;  // k_n per series term
};

std::optional<RationalReduction> reduce_rational(const FiniteDirichletSeries& f,
                                                 double rel_tol = 1e-9, long long max_den = 64);

// Roots of c[0] + c[1] z + ... + c[deg] z^deg (Durand-Kerner with damping).
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

// Zeros predicted by a rational reduction inside |Im| <= ymax.
std::vector<cplx> reduction_zeros(const RationalReduction& red, double ymax);

}  // namespace pnlab
