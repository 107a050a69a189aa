#include "pnlab/pairing.hpp"

#include <algorithm>
#include <cmath>

#include "pnlab/discrepancy.hpp"

namespace pnlab {

namespace {

// entries sorted by |Im(rho - sigma)| so conjugate mates are adjacent and the
// truncated sums stay real for real-analytic series
std::vector<std::size_t> symmetric_order(const Divisor& div, cplx sigma) {
    std::vector<std::size_t> order(div.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ya = std::fabs(div.entries[a].rho.imag() - sigma.imag());
        double yb = std::fabs(div.entries[b].rho.imag() - sigma.imag());
        if (ya != yb) return ya < yb;
        return div.entries[a].rho.imag() < div.entries[b].rho.imag();
    });
    return order;
}

struct SigmaSplit {
    int n_sigma = 0;  // multiplicity carried by the base point
    std::vector<std::size_t> rest;
};

SigmaSplit split_at_sigma(const Divisor& div, cplx sigma, const NumericsConfig& cfg) {
    SigmaSplit out;
    auto order = symmetric_order(div, sigma);
    for (std::size_t idx : order) {
        const auto& e = div.entries[idx];
        double dist = std::abs(e.rho - sigma);
        if (dist <= 1e-12 * (1.0 + std::abs(sigma))) {
            out.n_sigma += e.n;
        } else if (dist <= cfg.divisor_match_tol) {
            fail(Err::SigmaOnDivisor, "sigma is within tolerance of a divisor entry");
        } else {
            out.rest.push_back(idx);
        }
    }
    return out;
}

double divisor_height(const Divisor& div) {
    double y = 1.0;
    for (const auto& e : div.entries) y = std::max(y, std::fabs(e.rho.imag()));
    return y;
}

double divisor_density(const Divisor& div) {
    int count = 0;
    for (const auto& e : div.entries) count += std::abs(e.n);
    return 0.5 * (double)count / divisor_height(div);
}

}  // namespace

PairedValue k_ell_sum(const Divisor& div, int ell, cplx sigma, double t,
                      const NumericsConfig& cfg) {
    if (ell < div.d) fail(Err::OutOfRange, "k_ell_sum needs ell >= d");
    if (t < 0.0) fail(Err::OutOfRange, "k_ell_sum is defined for t >= 0");
    auto split = split_at_sigma(div, sigma, cfg);
    KahanSum<cplx> acc;
    for (std::size_t idx : split.rest) {
        const auto& e = div.entries[idx];
        cplx u = e.rho - sigma;
        acc.add((double)e.n * std::pow(u, -(double)ell) * std::exp(u * t));
    }
    if (split.n_sigma != 0) {
        double fact = 1.0;
        for (int i = 2; i <= ell; ++i) fact *= i;
        acc.add((double)split.n_sigma * std::pow(t, (double)ell) / fact);
    }
    PairedValue out;
    out.value = acc.value();
    double Y = divisor_height(div);
    out.tail_bound = 2.0 * divisor_density(div) * std::pow(Y, 1.0 - ell) / (ell - 1.0) *
                     std::exp(std::max(0.0, (div.sigma1 - sigma.real())) * t);
    return out;
}

namespace {

// h(t) = e^{(sigma - beta) t} phi(t) and its derivatives
struct TiltedTest {
    const SmoothFunction& phi;
    cplx rate;  // sigma - beta

    cplx deriv(int j, double t) const {
        cplx acc(0.0, 0.0);
        double binom = 1.0;
        for (int i = 0; i <= j; ++i) {
            acc += binom * std::pow(rate, (double)(j - i)) * phi.derivative(i, t);
            binom = binom * (double)(j - i) / (double)(i + 1);
        }
        return acc * std::exp(rate * t);
    }
};

}  // namespace

PairedValue pair_zero_side(const Divisor& div, const SmoothFunction& phi, const PairingConfig& cfg,
                           double tilt_beta, double lambda_max_hint, const NumericsConfig& num) {
    const int dp = cfg.d_prime;
    if (dp < div.d) fail(Err::OutOfRange, "d' must be at least the convergence exponent");
    if (phi.max_order() < dp)
        fail(Err::DerivativeUnavailable, "phi lacks derivatives up to d'");
    auto split = split_at_sigma(div, cfg.sigma, num);
    TiltedTest h{phi, cfg.sigma - tilt_beta};

    // K_{d'}(t) over the truncated divisor, with the t^{d'}/d'! base-point term
    std::vector<cplx> us;
    std::vector<double> ns;
    for (std::size_t idx : split.rest) {
        us.push_back(div.entries[idx].rho - cfg.sigma);
        ns.push_back((double)div.entries[idx].n);
    }
    double fact = 1.0;
    for (int i = 2; i <= dp; ++i) fact *= i;
    auto K = [&](double t) -> cplx {
        KahanSum<cplx> acc;
        for (std::size_t i = 0; i < us.size(); ++i)
            acc.add(ns[i] * std::pow(us[i], -(double)dp) * std::exp(us[i] * t));
        if (split.n_sigma != 0)
            acc.add((double)split.n_sigma * std::pow(t, (double)dp) / fact);
        return acc.value();
    };
    const cplx K0 = K(0.0);
    const double sign = (dp % 2 == 0) ? 1.0 : -1.0;
    auto integrand = [&](double t) -> cplx { return sign * (K(t) - K0) * h.deriv(dp, t); };

    PairedValue out;
    double quad_err = 0.0;
    const TestFunction* tf = dynamic_cast<const TestFunction*>(&phi);
    if (tf && tf->compact_positive_support()) {
        out.value = integrate<cplx>(integrand, tf->support_lo(), tf->support_hi(), cfg.quad_tol,
                                    &quad_err);
    } else {
        out.value = integrate_0inf<cplx>(integrand, cfg.quad_tol, &quad_err);
    }
    out.quad_error = quad_err;

    // Tail of the zero sum beyond the divisor height: per zero at height y,
    // |n| y^{-d'} ( int (e^{(sigma1 - Re sigma) t} + 1) |h^(d')| dt ).
    double lam = lambda_max_hint;
    double density = lam > 0.0 ? lam / kTwoPi : divisor_density(div);
    double Y = divisor_height(div);
    double growth = std::max(0.0, div.sigma1 - cfg.sigma.real());
    auto weight = [&](double t) { return (std::exp(growth * t) + 1.0) * std::abs(h.deriv(dp, t)); };
    double C_h;
    if (tf && tf->compact_positive_support())
        C_h = integrate<double>(weight, tf->support_lo(), tf->support_hi(), 1e-6);
    else
        C_h = integrate_0inf<double>(weight, 1e-6);
    out.tail_bound = 2.0 * density * std::pow(Y, 1.0 - dp) / (dp - 1.0) * C_h;
    return out;
}

cplx pair_zero_side_exp(const Divisor& div, cplx s, const PairingConfig& cfg,
                        const NumericsConfig& num) {
    const int dp = cfg.d_prime;
    auto split = split_at_sigma(div, cfg.sigma, num);
    KahanSum<cplx> acc;
    for (std::size_t idx : split.rest) {
        const auto& e = div.entries[idx];
        cplx u = e.rho - cfg.sigma;
        acc.add((double)e.n * std::pow((s - cfg.sigma) / u, dp - 1) / (s - e.rho));
    }
    if (split.n_sigma != 0) acc.add((double)split.n_sigma / (s - cfg.sigma));
    return acc.value();
}

PairedValue pair_atomic_side(const FiniteDirichletSeries& f, const SmoothFunction& phi,
                             const std::vector<cplx>& c_poly, double T, const NumericsConfig& num) {
    PairedValue out;
    KahanSum<cplx> acc;
    auto terms = expansion_terms(f, T, num);
    for (const auto& term : terms)
        acc.add(term.value * term.b * phi.value(term.value));
    double sgn = 1.0;
    for (std::size_t j = 0; j < c_poly.size(); ++j) {
        acc.add(c_poly[j] * sgn * phi.derivative((int)j, 0.0));
        sgn = -sgn;
    }
    out.value = acc.value();
    // tail: sum_{<l,k> > T} <l,k> |b_k| |phi| <= sup_{x>T} x |phi(x)| e^{sg x},
    // where sg makes sum |a_n| e^{-lambda_n sg} <= 1/2
    double sg = zero_strip(f).sigma_plus + kLog2 / f.lambdas().front();
    const TestFunction* tf = dynamic_cast<const TestFunction*>(&phi);
    if (tf && tf->compact_positive_support() && tf->support_hi() <= T) {
        out.tail_bound = 0.0;
    } else {
        double sup = 0.0;
        for (int j = 0; j <= 120; ++j) {
            double x = T + 0.25 * j;
            sup = std::max(sup, x * std::fabs(phi.value(x)) * std::exp(sg * x));
        }
        out.tail_bound = 1.25 * sup;
    }
    return out;
}

namespace {

class ReflectedFunction : public SmoothFunction {
  public:
    explicit ReflectedFunction(const SmoothFunction& base) : base_(base) {}
    double value(double t) const override { return base_.value(-t); }
    double derivative(int k, double t) const override {
        double v = base_.derivative(k, -t);
        return (k % 2 == 0) ? v : -v;
    }
    int max_order() const override { return base_.max_order(); }

  private:
    const SmoothFunction& base_;
};

}  // namespace

SymmetricPair pair_symmetric(const Divisor& div, const FiniteDirichletSeries& f,
                             const SmoothFunction& phi, double beta, const PairingConfig& cfg,
                             const NumericsConfig& num) {
    if (!f.real_coefficients(1e-13))
        fail(Err::NotRealAnalytic, "symmetric formula needs real coefficients");
    SymmetricPair out;
    ReflectedFunction phi_neg(phi);
    PairedValue right = pair_zero_side(div, phi, cfg, beta, f.lambda_max(), num);
    PairedValue left = pair_zero_side(div, phi_neg, cfg, beta, f.lambda_max(), num);
    out.lhs = right.value + left.value;

    DiscrepancyPoly disc = discrepancy_poly(f, div, cfg.sigma, cfg.ymax, num);
    cplx c0 = disc.coeffs[0];
    // atoms at +-<lambda,k>, tilted by e^{-beta <lambda,k>}
    double T = 1.0;
    {
        // T where x e^{(sg-beta) x} (phi(x)+phi(-x)) is negligible
        double sg = zero_strip(f).sigma_plus + kLog2 / f.lambdas().front();
        double x = 1.0;
        while (x < 400.0) {
            double m = x * std::exp((sg - beta) * x) *
                       (std::fabs(phi.value(x)) + std::fabs(phi.value(-x)));
            if (m < cfg.quad_tol * 1e-2 && x > 2.0) break;
            x += 0.5;
        }
        T = x;
    }
    KahanSum<cplx> atoms;
    for (const auto& term : expansion_terms(f, T, num))
        atoms.add(term.value * std::exp(-beta * term.value) * term.b *
                  (phi.value(term.value) + phi.value(-term.value)));
    out.rhs = 2.0 * c0 * phi.value(0.0) + atoms.value();
    out.budget = right.tail_bound + left.tail_bound + right.quad_error + left.quad_error +
                 disc.sample_residual + cfg.quad_tol;
    return out;
}

double closed_theta(double t) {
    if (!(t > 0.0)) fail(Err::NonpositiveT, "theta closed form needs t > 0");
    return 1.0 / (-std::expm1(-t));
}

cplx hadamard_regularized_pair(const std::function<double(double)>& theta_w,
                               const AnalyticPairFunction& phi, double sigma1, int d,
                               double quad_tol) {
    if (d < 2) fail(Err::OutOfRange, "hadamard regularization needs d >= 2");
    if (phi.max_order < d - 2)
        fail(Err::DerivativeUnavailable, "phi lacks the jet derivatives at 0");
    // psi = e^{sigma1 t} phi; jet coefficients psi^{(l)}(0), l <= d-2
    std::vector<cplx> jet(d - 1);
    for (int l = 0; l <= d - 2; ++l) {
        cplx acc(0.0, 0.0);
        double binom = 1.0;
        for (int i = 0; i <= l; ++i) {
            acc += binom * std::pow(sigma1, (double)(l - i)) * phi.deriv(i, 0.0);
            binom = binom * (double)(l - i) / (double)(i + 1);
        }
        jet[l] = acc;
    }
    auto integrand = [&](double t) -> cplx {
        cplx psi = std::exp(cplx(sigma1 * t, 0.0)) * phi.deriv(0, t);
        cplx sub(0.0, 0.0);
        double tp = 1.0, fact = 1.0;
        for (int l = 0; l <= d - 2; ++l) {
            sub += jet[l] * tp / fact;
            tp *= t;
            fact *= (l + 1.0);
        }
        return theta_w(t) * std::exp(-sigma1 * t) * (psi - sub);
    };
    // the subtracted integrand must stay O(t^{-1+eps}) near 0
    double v1 = std::abs(integrand(1e-4));
    double v2 = std::abs(integrand(1e-6));
    if (v2 > 1e3 * std::max(v1, 1.0))
        fail(Err::DivergentRegularization, "subtracted integrand blows up near 0");
    return integrate_0inf<cplx>(integrand, quad_tol);
}

}  // namespace pnlab
