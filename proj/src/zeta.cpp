#include "pnlab/zeta.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pnlab/summation.hpp"

namespace pnlab {

cplx digamma(cplx z) {
    if (std::fabs(z.imag()) < 1e-12 && z.real() <= 0.0 &&
        std::fabs(z.real() - std::round(z.real())) < 1e-12)
        fail(Err::PoleAtNonPositiveInteger, "digamma pole at a non-positive integer");
    cplx acc(0.0, 0.0);
    while (z.real() < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // log z - 1/(2z) - sum_{k<=8} B_{2k} / (2k z^{2k})
    static const double b2k[8] = {
        1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
        5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0,
    };
    cplx res = std::log(z) - 0.5 / z;
    cplx z2 = z * z;
    cplx zp = z2;
    for (int k = 1; k <= 8; ++k) {
        res -= b2k[k - 1] / (2.0 * k * zp);
        zp *= z2;
    }
    return res + acc;
}

namespace {

// Weideman (1994) rational approximation of the Faddeeva function, N = 36.
constexpr double kWeidemanL = 5.0453784915222872;
constexpr double kWeidemanA[36] = {
    5.3535493939173127e-14,  -8.061168438014101e-14,  -3.2402676341656341e-13,
    4.4298493789069534e-13,  2.0979473041617125e-12,  -2.1170345335776029e-12,
    -1.4312585141524958e-11, 6.3462766093705519e-12,  9.9393273484491964e-11,
    3.1972103988169708e-11,  -6.6348465672066102e-10, -9.0922380930415572e-10,
    3.7734430754190459e-09,  1.1883887210243599e-08,  -1.0962277926127363e-08,
    -1.1303157198683394e-07, -1.2894842925868314e-07, 6.7416556630132399e-07,
    2.7654086656395635e-06,  1.4187058479301548e-06,  -2.1741186565494455e-05,
    -8.8177971418492947e-05, -0.00011396630644459431, 0.00046290316939988515,
    0.0035484447086996693,   0.013898253763251402,    0.041051043016576888,
    0.10084293371847949,     0.21501636320107395,     0.40734241895033407,
    0.6956621918971001,      1.0813580371765887,      1.5401625788153652,
    2.0193976436113505,      2.4453784928519209,      2.7407450274098601,
};
constexpr double kInvSqrtPi = 0.56418958354775628694807945156077259;

}  // namespace

cplx faddeeva_w(cplx z) {
    if (z.imag() < 0.0)
        fail(Err::OutOfRange, "faddeeva_w implemented for Im z >= 0");
    const double L = kWeidemanL;
    cplx iz(-z.imag(), z.real());
    cplx denom = L - iz;
    cplx Z = (L + iz) / denom;
    cplx p(0.0, 0.0);
    for (double a : kWeidemanA) p = p * Z + a;
    return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

cplx erfcx(cplx z) {
    if (z.real() >= 0.0) {
        // erfcx(z) = w(iz)
        return faddeeva_w(cplx(-z.imag(), z.real()));
    }
    // erfcx(z) = 2 e^{z^2} - erfcx(-z)
    return 2.0 * std::exp(z * z) - erfcx(-z);
}

cplx gauss_halfline_laplace(cplx z, double mu, double s) {
    // complete the square: zt - (t-mu)^2/2s^2 = -(t-c)^2/2s^2 + z mu + z^2 s^2/2
    const cplx w = -(mu + z * s * s) / (s * std::sqrt(2.0));
    const double pref = s * std::sqrt(kPi / 2.0);
    if (w.real() > 0.0) {
        // exp(z mu + z^2 s^2/2 - w^2) = exp(-mu^2 / 2 s^2) exactly
        return pref * std::exp(-mu * mu / (2.0 * s * s)) * erfcx(w);
    }
    return pref * (2.0 * std::exp(z * mu + 0.5 * z * z * s * s) -
                   std::exp(-mu * mu / (2.0 * s * s)) * erfcx(-w));
}

cplx gauss_digamma_integral(cplx s, double quad_tol) {
    if (!(s.real() > 0.0)) fail(Err::OutOfRange, "gauss integral needs Re s > 0");
    auto integrand = [&](double t) -> cplx {
        if (t < 0.05) {
            // series of e^{-t}/t - e^{-st}/(1-e^{-t}) around 0:
            //   (s - 3/2) + t(13/12 - s/2 - s^2/2 + ...) handled by direct
            // expansion of both terms to O(t^3)
            cplx a = 1.0 / t - 1.0 + t / 2.0 - t * t / 6.0 + t * t * t / 24.0;
            // 1/(1-e^{-t}) = 1/t + 1/2 + t/12 - t^3/720
            cplx inv = 1.0 / t + 0.5 + t / 12.0 - t * t * t / 720.0;
            cplx es = std::exp(-s * t);
            return a - es * inv;
        }
        return std::exp(-t) / t - std::exp(-s * t) / (-std::expm1(-t));
    };
    return integrate_0inf<cplx>(integrand, quad_tol);
}

ZeroTable ZeroTable::truncated(std::size_t n) const {
    ZeroTable t;
    t.source = source + " (truncated)";
    t.ordinates.assign(ordinates.begin(), ordinates.begin() + std::min(n, ordinates.size()));
    return t;
}

ZeroTable load_zero_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::ParseError, "cannot open zero table: " + path);
    ZeroTable zt;
    zt.source = path;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t i = 0;
        while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
        if (i == line.size()) continue;
        char* end = nullptr;
        double v = std::strtod(line.c_str() + i, &end);
        if (end == line.c_str() + i) fail(Err::ParseError, "bad ordinate line: " + line);
        if (!(v > 0.0)) fail(Err::MonotonicityError, "ordinates must be positive");
        if (!zt.ordinates.empty() && v <= zt.ordinates.back())
            fail(Err::MonotonicityError, "ordinates must be strictly ascending");
        zt.ordinates.push_back(v);
    }
    if (zt.ordinates.empty()) fail(Err::ParseError, "zero table is empty");
    if (zt.ordinates.front() < 14.0 || zt.ordinates.front() > 14.2)
        fail(Err::SanityGateError, "first ordinate outside [14.0, 14.2]");
    return zt;
}

std::vector<PrimeSupportTerm> prime_support(double T, const NumericsConfig& cfg) {
    if (!(T > 0.0)) fail(Err::OutOfRange, "prime support needs T > 0");
    if (T > 30.0) fail(Err::BudgetExceeded, "prime support capped at T = 30");
    double xd = std::exp(T);
    if (xd > (double)cfg.sieve_cap) fail(Err::BudgetExceeded, "prime sieve above configured cap");
    long long x = (long long)std::floor(xd + 1e-9);
    std::vector<bool> composite(x + 1, false);
    std::vector<PrimeSupportTerm> out;
    for (long long p = 2; p <= x; ++p) {
        if (composite[p]) continue;
        for (long long q = p * p; q <= x; q += p) composite[q] = true;
        double logp = std::log((double)p);
        long long pk = p;
        for (int k = 1; k * logp <= T + 1e-12; ++k) {
            out.push_back({k * logp, logp, pk});
            if (pk > x / p) break;
            pk *= p;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimeSupportTerm& a, const PrimeSupportTerm& b) {
                  return a.position < b.position;
              });
    return out;
}

double psi_weil(double t) {
    return -std::log(kPi) + digamma(cplx(0.25, 0.5 * t)).real();
}

double weil_functional(const TestFunction& phi, double quad_tol) {
    if (phi.kind() != TestFunctionKind::Gaussian)
        fail(Err::DerivativeUnavailable, "weil functional needs a gaussian (closed transform)");
    // |hat(phi)(t)| = s sqrt(2 pi) e^{-s^2 t^2 / 2} < 1e-16 beyond tcut
    const double s = phi.width();
    double tcut = std::sqrt(2.0 * std::log(s * std::sqrt(kTwoPi) * 1e16)) / s;
    auto integrand = [&](double t) {
        return (psi_weil(t) * phi.transform(cplx(t, 0.0))).real();
    };
    double v1 = integrate<double>(integrand, -tcut, tcut, quad_tol);
    double v2 = integrate<double>(integrand, -2.0 * tcut, 2.0 * tcut, quad_tol);
    if (std::fabs(v2 - v1) > 1e3 * quad_tol + 1e-12 * std::fabs(v1))
        fail(Err::QuadratureFailure, "weil functional did not stabilize under range doubling");
    return v2 / kTwoPi;
}

ExplicitReport explicit_formula_check(const TestFunction& phi, const ZeroTable& zt, double T,
                                      double tol, const NumericsConfig& cfg) {
    if (phi.kind() != TestFunctionKind::Gaussian)
        fail(Err::DerivativeUnavailable, "explicit formula check needs a gaussian");
    ExplicitReport rep;
    const double s = phi.width(), mu = phi.mu();
    // zero side: hat(phi)(gamma) + hat(phi)(-gamma) = 2 s sqrt(2pi) cos(mu g) e^{-s^2 g^2/2}
    KahanSum<double> lhs;
    for (double g : zt.ordinates)
        lhs.add((phi.transform(cplx(g, 0.0)) + phi.transform(cplx(-g, 0.0))).real());
    rep.lhs = lhs.value();
    rep.poles = (phi.transform(cplx(0.0, 0.5)) + phi.transform(cplx(0.0, -0.5))).real();
    rep.archimedean = weil_functional(phi, cfg.quad_tol);
    KahanSum<double> primes;
    for (const auto& term : prime_support(T, cfg))
        primes.add(term.weight / std::sqrt((double)term.n) *
                   (phi.value(term.position) + phi.value(-term.position)));
    rep.primes = primes.value();
    rep.rhs = rep.poles + rep.archimedean - rep.primes;
    rep.residual = rep.lhs - rep.rhs;
    // budgets
    const double gmax = zt.ordinates.back();
    auto zero_density = [](double u) { return std::log(std::max(u, 7.0) / kTwoPi) / kTwoPi; };
    rep.zero_tail = integrate<double>(
        [&](double u) {
            return 2.0 * std::abs(phi.transform(cplx(u, 0.0))) * zero_density(u);
        },
        gmax, gmax + 80.0 / std::max(s, 1e-3), 1e-12);
    rep.prime_tail = integrate<double>(
        [&](double u) { return std::exp(0.5 * u) * std::fabs(phi.value(u)); }, T, T + 60.0,
        1e-12) +
        integrate<double>(
            [&](double u) { return std::exp(-0.5 * u) * std::fabs(phi.value(-u)); }, T, T + 60.0,
            1e-12);
    rep.quad = cfg.quad_tol * 10.0;
    rep.pass = std::fabs(rep.residual) <= rep.zero_tail + rep.prime_tail + rep.quad + tol;
    (void)mu;
    return rep;
}

namespace {

// Regularized symmetric contribution of one divisor point at base sigma=beta:
//   n * [ int_0^inf e^{(rho-beta) t} g(t) dt + g(0)/(rho-beta) ],
// g(t) = phi(t) + phi(-t) for a gaussian phi.
cplx point_pairing(cplx rho_minus_beta, double n, const TestFunction& phi, double g0) {
    cplx integral = gauss_halfline_laplace(rho_minus_beta, phi.mu(), phi.width()) +
                    gauss_halfline_laplace(rho_minus_beta, -phi.mu(), phi.width());
    return n * (integral + g0 / rho_minus_beta);
}

}  // namespace

C0Estimate extract_c0(const ZeroTable& zt, double beta, const std::vector<TestFunction>& phis,
                      double T, const NumericsConfig& cfg) {
    if (phis.empty()) fail(Err::UsageError, "extract_c0 needs at least one test function");
    C0Estimate out;
    std::vector<double> values;
    double budget = 0.0;
    auto primes = prime_support(T, cfg);
    const int n_trivial = 4000;
    for (const TestFunction& phi : phis) {
        if (phi.kind() != TestFunctionKind::Gaussian)
            fail(Err::DerivativeUnavailable, "extract_c0 needs gaussians");
        const double phi0 = phi.value(0.0);
        if (std::fabs(phi0) < 1e-12) fail(Err::UsageError, "extract_c0 needs phi(0) != 0");
        const double g0 = 2.0 * phi0;
        KahanSum<cplx> acc;
        // nontrivial zeros 1/2 +- i gamma
        const double c = 0.5 - beta;
        double last_pair = 0.0;
        for (double g : zt.ordinates) {
            cplx up = point_pairing(cplx(c, g), 1.0, phi, g0);
            cplx dn = point_pairing(cplx(c, -g), 1.0, phi, g0);
            acc.add(up + dn);
            last_pair = std::abs(up + dn);
        }
        // pole at 1 (multiplicity -1)
        acc.add(point_pairing(cplx(1.0 - beta, 0.0), -1.0, phi, g0));
        // trivial zeros at -2n
        double last_triv = 0.0;
        for (int n = 1; n <= n_trivial; ++n) {
            cplx v = point_pairing(cplx(-2.0 * n - beta, 0.0), 1.0, phi, g0);
            acc.add(v);
            last_triv = std::abs(v);
        }
        // prime side, tilted by p^{-k beta}
        KahanSum<double> prime_sum;
        for (const auto& term : primes)
            prime_sum.add(term.weight * std::pow((double)term.n, -beta) *
                          (phi.value(term.position) + phi.value(-term.position)));
        acc.add(cplx(prime_sum.value(), 0.0));
        cplx total = acc.value();
        values.push_back(total.real() / (2.0 * phi0));
        const double gmax = zt.ordinates.back();
        double zero_tail = last_pair * gmax * (std::log(gmax / kTwoPi) / kTwoPi) * 0.75;
        double triv_tail = last_triv * n_trivial * 1.2;
        double prime_tail = integrate<double>(
            [&](double u) { return std::exp((1.0 - beta) * u) * std::fabs(phi.value(u)); }, T,
            T + 60.0, 1e-12);
        budget = std::max(budget,
                          (zero_tail + triv_tail + prime_tail + std::fabs(total.imag())) /
                              (2.0 * std::fabs(phi0)));
    }
    KahanSum<double> mean;
    for (double v : values) mean.add(v);
    out.value = mean.value() / (double)values.size();
    for (double v : values) out.spread = std::max(out.spread, std::fabs(v - out.value));
    out.budget = budget;
    return out;
}

cplx c0_chi0(cplx sigma) {
    if (std::fabs(sigma.imag()) < 1e-12 && sigma.real() <= 1e-12 &&
        std::fabs(sigma.real() - std::round(sigma.real())) < 1e-12)
        fail(Err::PoleAtSigma, "c0(chi0, sigma) has poles at non-positive integers");
    return 0.5 * std::log(kPi) - 0.5 * kEulerGamma - digamma(sigma);
}

double w0_profile(double t) {
    double a = std::fabs(t);
    return -std::exp(0.5 * a) + std::exp(-1.5 * a) / (2.0 * std::sinh(a));
}

double w0_truncated(double t, int N) {
    double a = std::fabs(t);
    KahanSum<double> acc;
    acc.add(-std::exp(0.5 * a));
    for (int n = 1; n <= N; ++n) acc.add(std::exp(-(2.0 * n + 0.5) * a));
    return acc.value();
}

}  // namespace pnlab
