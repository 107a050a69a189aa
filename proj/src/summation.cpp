#include "pnlab/summation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace pnlab {

namespace {

using boost::multiprecision::cpp_rational;

std::vector<double> compute_bernoulli_table(int max_n) {
    // B_n = -1/(n+1) * sum_{k<n} C(n+1,k) B_k, exact rationals
    std::vector<cpp_rational> b(max_n + 1);
    b[0] = 1;
    std::vector<cpp_rational> binom(max_n + 2);
    for (int n = 1; n <= max_n; ++n) {
        // binomials C(n+1, k)
        binom[0] = 1;
        for (int k = 1; k <= n; ++k)
            binom[k] = binom[k - 1] * (n + 2 - k) / k;
        cpp_rational acc = 0;
        for (int k = 0; k < n; ++k) acc += binom[k] * b[k];
        b[n] = -acc / (n + 1);
    }
    std::vector<double> out(max_n + 1);
    for (int n = 0; n <= max_n; ++n) out[n] = (double)b[n];
    return out;
}

const std::vector<double>& bernoulli_table() {
    static const std::vector<double> table = compute_bernoulli_table(120);
    return table;
}

}  // namespace

double bernoulli(int n) {
    if (n < 0 || n > 120) fail(Err::OutOfRange, "bernoulli supports 0 <= n <= 120");
    return bernoulli_table()[n];
}

cplx hurwitz_zeta(cplx s, cplx q) {
    if (std::fabs(q.imag()) < 1e-13 && q.real() <= 0.0 &&
        std::fabs(q.real() - std::round(q.real())) < 1e-13)
        fail(Err::PoleAtQ, "hurwitz_zeta pole: q is a non-positive integer");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-13)
        fail(Err::PoleAtQ, "hurwitz_zeta pole at s = 1");
    // shift q right until the asymptotic tail converges fast
    const double target = 18.0 + 0.5 * std::abs(s.imag());
    KahanSum<cplx> head;
    int shifted = 0;
    while (q.real() < target && shifted < 100000) {
        head.add(std::pow(q, -s));
        q += 1.0;
        ++shifted;
    }
    // Euler-Maclaurin tail at q: sum_{n>=0}(n+q)^{-s}
    //   = q^{1-s}/(s-1) + q^{-s}/2 + sum_k B_{2k}/(2k)! * (s)_{2k-1} q^{-s-2k+1}
    cplx tail = std::pow(q, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(q, -s);
    cplx poch = s;  // (s)_{2k-1} rising factorial
    cplx qpow = std::pow(q, -s - 1.0);
    for (int k = 1; k <= 12; ++k) {
        double b2k = bernoulli(2 * k);
        double fact = 1.0;
        for (int i = 2; i <= 2 * k; ++i) fact *= i;
        cplx term = b2k / fact * poch * qpow;
        tail += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(tail))) break;
        poch *= (s + (double)(2 * k - 1)) * (s + (double)(2 * k));
        qpow /= q * q;
    }
    return head.value() + tail;
}

cplx lattice_sum(int ell, cplx sigma) {
    if (ell < 1) fail(Err::OutOfRange, "lattice_sum needs ell >= 1");
    if (std::abs(sigma) < 1e-14) {
        if (ell % 2 == 1) return cplx(0.0, 0.0);
        // sum_{k != 0} (2 pi i k)^{-2l} = -B_{2l} / (2l)!
        int l = ell / 2;
        double fact = 1.0;
        for (int i = 2; i <= 2 * l; ++i) fact *= i;
        return cplx(-bernoulli(2 * l) / fact, 0.0);
    }
    if (ell == 1) {
        // sum_{k!=0} 1/(sigma + 2 pi i k), symmetric pairing = coth(sigma/2)/2 - 1/sigma
        return 0.5 / std::tanh(0.5 * sigma) - 1.0 / sigma;
    }
    const cplx q = sigma / cplx(0.0, kTwoPi);
    cplx ipow = std::pow(cplx(0.0, kTwoPi), -(double)ell);
    cplx z = hurwitz_zeta((double)ell, 1.0 + q) +
             (ell % 2 == 0 ? 1.0 : -1.0) * hurwitz_zeta((double)ell, 1.0 - q);
    return ipow * z;
}

namespace {

// (-1)^m sum_{k>=1} int_a^b 2 cos(2 pi k t)/(2 pi k)^{2m} phi^{(2m)}(t) dt
double em_remainder(const SmoothFunction& phi, double a, double b, bool to_infinity, int m,
                    double tol, int* k_used) {
    KahanSum<double> acc;
    int k = 1;
    for (; k <= 4096; ++k) {
        double scale = 2.0 / std::pow(kTwoPi * k, 2 * m);
        auto integrand = [&](double t) { return std::cos(kTwoPi * k * t) * phi.derivative(2 * m, t); };
        double val;
        if (to_infinity)
            val = integrate_0inf<double>([&](double t) { return integrand(a + t); }, tol / scale * 0.5);
        else
            val = integrate<double>(integrand, a, b, tol / scale * 0.5);
        acc.add(scale * val);
        if (scale * std::fabs(val) < tol * 0.25 && k >= 4) break;
    }
    if (k_used) *k_used = k;
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * acc.value();
}

}  // namespace

SumResult em_finite(const SmoothFunction& phi, int N, const EMConfig& cfg,
                    const NumericsConfig& num) {
    if (N < 0) fail(Err::OutOfRange, "em_finite needs N >= 0");
    if (cfg.m < 1 || cfg.m > 60) fail(Err::OutOfRange, "EM order m must be in [1, 60]");
    if (phi.max_order() < 2 * cfg.m)
        fail(Err::DerivativeUnavailable, "phi lacks derivatives up to 2m");
    SumResult r;
    KahanSum<double> acc;
    acc.add(integrate<double>([&](double t) { return phi.value(t); }, 0.0, (double)N,
                              cfg.remainder_quad_tol));
    acc.add(0.5 * (phi.value(0.0) + phi.value((double)N)));
    for (int l = 1; l <= cfg.m; ++l) {
        double fact = 1.0;
        for (int i = 2; i <= 2 * l; ++i) fact *= i;
        acc.add(bernoulli(2 * l) / fact *
                (phi.derivative(2 * l - 1, (double)N) - phi.derivative(2 * l - 1, 0.0)));
    }
    int k_used = 0;
    if (N > 0)
        acc.add(em_remainder(phi, 0.0, (double)N, false, cfg.m, cfg.remainder_quad_tol, &k_used));
    r.value = acc.value();
    r.remainder_bound = cfg.remainder_quad_tol;
    r.terms_used = k_used;
    (void)num;
    return r;
}

SumResult em_infinite(const SmoothFunction& phi, const EMConfig& cfg, const NumericsConfig& num) {
    if (cfg.m < 1 || cfg.m > 60) fail(Err::OutOfRange, "EM order m must be in [1, 60]");
    if (phi.max_order() < 2 * cfg.m)
        fail(Err::DerivativeUnavailable, "phi lacks derivatives up to 2m");
    const cplx sigma = cfg.sigma;
    SumResult r;
    KahanSum<double> acc;
    acc.add(0.5 * phi.value(0.0));
    acc.add(integrate_0inf<double>([&](double t) { return phi.value(t); }, cfg.remainder_quad_tol));
    if (std::abs(sigma) < 1e-14) {
        for (int l = 1; l <= cfg.m; ++l) {
            double fact = 1.0;
            for (int i = 2; i <= 2 * l; ++i) fact *= i;
            acc.add(-bernoulli(2 * l) / fact * phi.derivative(2 * l - 1, 0.0));
        }
        int k_used = 0;
        acc.add(em_remainder(phi, 0.0, 0.0, true, cfg.m, cfg.remainder_quad_tol, &k_used));
        r.terms_used = k_used;
        r.value = acc.value();
        r.remainder_bound = cfg.remainder_quad_tol;
        return r;
    }
    // Generalized delta structure at sigma != 0: with h(t) = e^{sigma t} phi(t),
    //   sum phi(n) = phi(0)/2 + int phi
    //              - sum_{l=1}^{2m-1} (-1)^{l-1} h^{(l-1)}(0) A_l(sigma)
    //              + int_0^inf (K_{2m}(t;sigma) - K_{2m}(0;sigma)) h^{(2m)}(t) dt,
    // where A_l(sigma) = sum_{k!=0} (2 pi i k - sigma)^{-l} = (-1)^l lattice_sum(l, sigma)
    // and K_{2m}(t;sigma) = sum_{k!=0} (2 pi i k - sigma)^{-2m} e^{(2 pi i k - sigma) t}.
    const int M2 = 2 * cfg.m;
    auto h_deriv = [&](int j, double t) -> cplx {
        // d^j/dt^j [e^{sigma t} phi(t)]
        cplx acc2(0.0, 0.0);
        double binom = 1.0;
        for (int i = 0; i <= j; ++i) {
            acc2 += binom * std::pow(sigma, (double)(j - i)) * phi.derivative(i, t);
            binom = binom * (j - i) / (i + 1.0);
        }
        return acc2 * std::exp(sigma * t);
    };
    cplx delta_part(0.0, 0.0);
    for (int l = 1; l <= M2 - 1; ++l) {
        cplx A = ((l % 2 == 0) ? 1.0 : -1.0) * lattice_sum(l, sigma);
        double sign = (l % 2 == 1) ? 1.0 : -1.0;  // (-1)^{l-1}
        delta_part += sign * h_deriv(l - 1, 0.0) * A;
    }
    // Remainder int_0^inf (K_{2m}(t;sigma) - K0) h^{(2m)}(t) dt. The kernel's
    // e^{-sigma t} cancels the tilt of h^{(2m)} = e^{sigma t} w(t), so the
    // oscillatory part is sum_k u_k^{-2m} int e^{2 pi i k t} w(t) dt with
    //   w(t) = sum_i C(2m,i) sigma^{2m-i} phi^{(i)}(t),
    // and the constant part integrates exactly: -K0 int h^{(2m)} = K0 h^{(2m-1)}(0).
    int kmax = 2;
    while (std::pow(kTwoPi * kmax, -M2) > 1e-17 && kmax < 100000) ++kmax;
    auto w_comb = [&](double t) -> cplx {
        cplx acc2(0.0, 0.0);
        double binom = 1.0;
        for (int i = 0; i <= M2; ++i) {
            acc2 += binom * std::pow(sigma, (double)(M2 - i)) * phi.derivative(i, t);
            binom = binom * (M2 - i) / (i + 1.0);
        }
        return acc2;
    };
    std::vector<cplx> upow(2 * kmax);
    cplx K0(0.0, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        upow[2 * k - 2] = std::pow(cplx(0.0, kTwoPi * k) - sigma, -(double)M2);
        upow[2 * k - 1] = std::pow(cplx(0.0, -kTwoPi * k) - sigma, -(double)M2);
        K0 += upow[2 * k - 2] + upow[2 * k - 1];
    }
    double t_cut = 4.0;
    while (t_cut < 400.0 && std::abs(w_comb(t_cut)) > 1e-4 * cfg.remainder_quad_tol)
        t_cut += 1.0;
    // boundary term at infinity must vanish: |e^{sigma t} w_1(t)| -> 0
    {
        cplx w1(0.0, 0.0);
        double binom = 1.0;
        for (int i = 0; i <= M2 - 1; ++i) {
            w1 += binom * std::pow(sigma, (double)(M2 - 1 - i)) * phi.derivative(i, t_cut);
            binom = binom * (M2 - 1 - i) / (i + 1.0);
        }
        if (sigma.real() * t_cut + std::log(std::abs(w1) + 1e-300) > std::log(1e-10))
            fail(Err::QuadratureFailure,
                 "sigma-generalized EM boundary term does not vanish for this phi");
    }
    auto rem_integrand = [&](double t) -> cplx {
        cplx w = w_comb(t);
        KahanSum<cplx> s;
        for (int k = 1; k <= kmax; ++k) {
            cplx osc(std::cos(kTwoPi * k * t), std::sin(kTwoPi * k * t));
            s.add(upow[2 * k - 2] * osc);
            s.add(upow[2 * k - 1] * std::conj(osc));
        }
        return s.value() * w;
    };
    cplx rem = integrate<cplx>(rem_integrand, 0.0, t_cut, cfg.remainder_quad_tol) +
               K0 * h_deriv(M2 - 1, 0.0);
    cplx total = acc.value() - delta_part + rem;
    if (std::fabs(total.imag()) > 1e-6 * (1.0 + std::fabs(total.real())))
        fail(Err::QuadratureFailure, "sigma-generalized EM produced a non-real sum for real phi");
    r.value = total.real();
    r.remainder_bound = cfg.remainder_quad_tol + std::pow(kTwoPi * kmax, 1 - M2);
    r.terms_used = kmax;
    (void)num;
    return r;
}

SumResult abel_plana(const AnalyticFunction& phi, const NumericsConfig& num) {
    auto re = [&](double x) -> double {
        return phi.real_eval ? phi.real_eval(x) : phi.eval(cplx(x, 0.0)).real();
    };
    // decay hypothesis spot check
    double v10 = std::fabs(re(10.0)), v20 = std::fabs(re(20.0));
    if (!(std::isfinite(v10) && std::isfinite(v20)) || (v20 > v10 + 1e-12 && v20 > 1e-9))
        fail(Err::DecayHypothesisViolated, "phi does not appear to decay on the real axis");
    SumResult r;
    KahanSum<double> acc;
    acc.add(0.5 * re(0.0));
    acc.add(integrate_0inf<double>(re, num.quad_tol));
    // i * int (phi(it) - phi(-it)) / (e^{2 pi t} - 1) dt ; integrand real when
    // phi is real on the real axis
    auto vert_raw = [&](double t) -> cplx {
        cplx up = phi.eval(cplx(0.0, t));
        cplx dn = phi.eval(cplx(0.0, -t));
        return cplx(0.0, 1.0) * (up - dn) / std::expm1(kTwoPi * t);
    };
    // the integrand has a removable 0/0 at t = 0 and is flat below ~1e-4;
    // clamping there avoids the cancellation noise of phi(it) - phi(-it)
    auto vert_full = [&](double t) -> cplx { return vert_raw(std::max(t, 1e-4)); };
    // entire phi (gaussians) can outgrow e^{2 pi t} along the imaginary axis:
    // cut at the envelope minimum, where the neglected part is exponentially small
    double t_cut = 0.5;
    double prev = std::abs(vert_full(0.5));
    double floor_seen = prev;
    for (double t = 1.0; t <= 400.0; t += 0.5) {
        double m = std::abs(vert_full(t));
        if (!std::isfinite(m)) break;
        if (m < 1e-18) {
            t_cut = t;
            break;
        }
        if (m > prev && t > 2.0) break;
        t_cut = t;
        prev = m;
        floor_seen = std::min(floor_seen, m);
    }
    double cut_mag = std::abs(vert_full(t_cut));
    if (!std::isfinite(cut_mag) || cut_mag > 1e-8 * (1.0 + std::fabs(re(0.0))))
        fail(Err::DecayHypothesisViolated,
             "vertical integrand does not fall under the tolerance before growing");
    cplx vert = integrate<cplx>(vert_full, 0.0, t_cut, num.quad_tol);
    acc.add(vert.real());
    r.value = acc.value();
    r.remainder_bound = 4.0 * num.quad_tol + std::fabs(vert.imag()) + cut_mag;
    return r;
}

RamanujanResult ramanujan_constant(const SmoothFunction& phi, const NumericsConfig& num) {
    RamanujanResult out;
    // Bernoulli series, truncated at the smallest-magnitude term
    std::vector<double> terms;
    for (int l = 1; 2 * l + 1 <= phi.max_order() && l <= 40; ++l) {
        double fact = 1.0;
        for (int i = 2; i <= 2 * l; ++i) fact *= i;
        terms.push_back(-bernoulli(2 * l) / fact * phi.derivative(2 * l - 1, 0.0));
    }
    double series = -0.5 * phi.value(0.0);
    int used = 0;
    for (std::size_t l = 0; l < terms.size(); ++l) {
        if (l + 1 < terms.size() && std::fabs(terms[l + 1]) < std::fabs(terms[l])) {
            series += terms[l];
            ++used;
        } else {
            // smallest-term truncation: stop before the first growing term
            out.first_omitted = std::fabs(terms[l]);
            break;
        }
    }
    out.series_value = series;
    out.terms_used = used;
    // Exact value through the EM remainder: RC = sum_{n>=1} phi(n) - int_0^inf phi
    //   = -phi(0)/2 - sum_{l<=m} B_{2l}/(2l)! phi^{(2l-1)}(0) + rem_m  for any m.
    // Class membership: the rem_m must stay small across m in {2,4,6}.
    double best_rem = std::numeric_limits<double>::infinity();
    double value = 0.0;
    bool have = false;
    for (int m : {2, 4, 6}) {
        if (phi.max_order() < 2 * m) break;
        KahanSum<double> acc;
        acc.add(-0.5 * phi.value(0.0));
        for (int l = 1; l <= m; ++l) {
            double fact = 1.0;
            for (int i = 2; i <= 2 * l; ++i) fact *= i;
            acc.add(-bernoulli(2 * l) / fact * phi.derivative(2 * l - 1, 0.0));
        }
        int k_used = 0;
        double rem = em_remainder(phi, 0.0, 0.0, true, m, 1e-12, &k_used);
        if (!std::isfinite(rem)) continue;
        if (std::fabs(rem) < best_rem) {
            best_rem = std::fabs(rem);
            value = acc.value() + rem;
            have = true;
        }
    }
    double scale = 1.0 + std::fabs(out.series_value);
    if (!have || best_rem > 0.05 * scale)
        fail(Err::NotRamanujanClass, "EM remainder does not stay small for m in {2,4,6}");
    out.value = value;
    out.remainder_bound = 1e-12;
    (void)num;
    return out;
}

}  // namespace pnlab
