#include "pnlab/verify.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pnlab/discrepancy.hpp"
#include "pnlab/zeros.hpp"

namespace pnlab {

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["lhs"] = {lhs.real(), lhs.imag()};
    j["rhs"] = {rhs.real(), rhs.imag()};
    j["residual"] = residual;
    j["budget"] = budget;
    j["tol"] = tol;
    j["pass"] = pass;
    j["inputs"] = inputs;
    return j.dump(2);
}

VerificationReport verify_pn(const FiniteDirichletSeries& f, const TestFunction& phi,
                             const PairingConfig& cfg, double T, double tol,
                             const NumericsConfig& num) {
    VerificationReport rep;
    rep.name = "poisson-newton";
    rep.tol = tol;
    Divisor div = find_zeros(f, cfg.ymax, num);
    PairedValue zero_side = pair_zero_side(div, phi, cfg, 0.0, f.lambda_max(), num);
    std::vector<cplx> c_poly;
    double disc_residual = 0.0;
    if (!phi.compact_positive_support()) {
        DiscrepancyPoly disc = discrepancy_poly(f, div, cfg.sigma, cfg.ymax, num);
        c_poly = disc.coeffs;
        disc_residual = disc.sample_residual;
    }
    PairedValue atomic = pair_atomic_side(f, phi, c_poly, T, num);
    rep.lhs = zero_side.value;
    rep.rhs = atomic.value;
    rep.budget = zero_side.tail_bound + zero_side.quad_error + atomic.tail_bound + disc_residual;
    std::ostringstream in;
    in << "series=" << f.to_json_text() << " phi=" << phi.to_literal() << " sigma=("
       << cfg.sigma.real() << "," << cfg.sigma.imag() << ") d'=" << cfg.d_prime
       << " ymax=" << cfg.ymax << " T=" << T;
    rep.inputs = in.str();
    rep.finish();
    return rep;
}

VerificationReport verify_newton_equivalence(const std::vector<cplx>& poly_coeffs, int M,
                                             double tol, const NumericsConfig& num) {
    if (poly_coeffs.size() > 8 || M > 16)
        fail(Err::OutOfRange, "newton equivalence capped at degree 8, M 16");
    VerificationReport rep;
    rep.name = "newton-identities";
    rep.tol = tol;
    // z^n + a_1 z^{n-1} + ... + a_n, ascending for the root finder
    std::vector<cplx> ascending(poly_coeffs.rbegin(), poly_coeffs.rend());
    ascending.push_back(cplx(1.0, 0.0));
    std::vector<cplx> roots = poly_roots(ascending);
    std::vector<cplx> direct(M, cplx(0.0, 0.0));
    for (int m = 1; m <= M; ++m) {
        KahanSum<cplx> s;
        for (cplx r : roots) s.add(std::pow(r, m));
        direct[m - 1] = s.value();
    }
    std::vector<cplx> via_b = newton_sums(poly_coeffs, M);
    (void)num;
    double max_rel = 0.0;
    KahanSum<cplx> l, r;
    for (int m = 0; m < M; ++m) {
        l.add(direct[m]);
        r.add(via_b[m]);
        double scale = std::max(1.0, std::abs(direct[m]));
        max_rel = std::max(max_rel, std::abs(direct[m] - via_b[m]) / scale);
    }
    rep.lhs = l.value();
    rep.rhs = r.value();
    rep.budget = 1e-12;
    std::ostringstream in;
    in << "degree=" << poly_coeffs.size() << " M=" << M;
    rep.inputs = in.str();
    rep.residual = max_rel;
    rep.pass = max_rel <= rep.budget + tol;
    return rep;
}

VerificationReport verify_lifting(const FiniteDirichletSeries& f, int M, const TestFunction& phi,
                                  double ymax, double tol, const NumericsConfig& num) {
    if (!phi.compact_positive_support())
        fail(Err::DerivativeUnavailable, "lifting check pairs against a compact bump");
    VerificationReport rep;
    rep.name = "lifting";
    rep.tol = tol;
    const double T = phi.support_hi();
    KahanSum<cplx> lhs;
    double budget = 0.0;
    for (int m = 0; m <= M; ++m) {
        // zeros of (f + m)/(1 + m), i.e. the level f = -m
        std::vector<cplx> coeffs = f.coeffs();
        for (cplx& a : coeffs) a /= (double)(1 + m);
        FiniteDirichletSeries gm(f.lambdas(), std::move(coeffs));
        Divisor div = find_zeros(gm, ymax, num);
        PairingConfig cfg;
        cfg.sigma = cplx(zero_strip(gm).sigma_plus + 1.0, 0.0);
        cfg.d_prime = 2;
        cfg.ymax = ymax;
        cfg.quad_tol = num.quad_tol;
        PairedValue pv = pair_zero_side(div, phi, cfg, 0.0, gm.lambda_max(), num);
        lhs.add(pv.value);
        budget += pv.tail_bound + pv.quad_error;
    }
    double harmonic = 0.0;
    for (int a = 1; a <= M + 1; ++a) harmonic += 1.0 / a;
    for (std::size_t j = 0; j < f.terms(); ++j)
        lhs.add(harmonic * f.lambdas()[j] * f.coeffs()[j] * phi.value(f.lambdas()[j]));
    KahanSum<cplx> rhs;
    for (const auto& term : expansion_terms(f, T, num)) {
        int norm = multi_index_norm(term.k);
        if (norm < 2) continue;
        double zeta_partial = 0.0;
        for (int a = 1; a <= M + 1; ++a) zeta_partial += std::pow((double)a, -(double)norm);
        rhs.add(term.value * term.b * zeta_partial * phi.value(term.value));
    }
    rep.lhs = lhs.value();
    rep.rhs = rhs.value();
    rep.budget = budget;
    std::ostringstream in;
    in << "series=" << f.to_json_text() << " M=" << M << " phi=" << phi.to_literal()
       << " ymax=" << ymax;
    rep.inputs = in.str();
    rep.finish();
    return rep;
}

}  // namespace pnlab
