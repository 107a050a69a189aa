#include "pnlab/discrepancy.hpp"

#include <algorithm>
#include <cmath>

namespace pnlab {

namespace {

double density_per_unit(const Divisor& div) {
    double ymax = 1.0;
    int count = 0;
    for (const auto& e : div.entries) {
        ymax = std::max(ymax, std::fabs(e.rho.imag()));
        count += std::abs(e.n);
    }
    return 0.5 * (double)count / ymax;
}

}  // namespace

GInterpValue g_interp(const Divisor& div, cplx sigma, cplx s, double ymax,
                      const NumericsConfig& cfg) {
    const int d = div.d;
    GInterpValue out;
    KahanSum<cplx> acc;
    int n_sigma = 0;
    // conjugate-paired order: sort indices by |Im(rho - sigma)|
    std::vector<std::size_t> order(div.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(div.entries[a].rho.imag() - sigma.imag()) <
               std::fabs(div.entries[b].rho.imag() - sigma.imag());
    });
    for (std::size_t idx : order) {
        const auto& e = div.entries[idx];
        if (std::fabs(e.rho.imag()) > ymax) continue;
        cplx dr = e.rho - sigma;
        if (std::abs(dr) <= cfg.divisor_match_tol) {
            n_sigma += e.n;
            continue;
        }
        cplx ds = s - e.rho;
        if (std::abs(ds) < cfg.divisor_match_tol)
            fail(Err::NearPole, "evaluation point too close to a divisor entry");
        acc.add((double)e.n * std::pow((s - sigma) / dr, d - 1) / ds);
    }
    if (n_sigma != 0) {
        cplx ds = s - sigma;
        if (std::abs(ds) < cfg.divisor_match_tol)
            fail(Err::NearPole, "evaluation point too close to the base point");
        acc.add((double)n_sigma / ds);
    }
    out.value = acc.value();
    double dens = density_per_unit(div);
    out.tail_bound = 2.0 * dens * std::pow(std::abs(s - sigma), d - 1) *
                     std::pow(ymax, 1.0 - d) / (d - 1.0) * 4.0;
    return out;
}

std::vector<cplx> divisor_power_sums(const FiniteDirichletSeries& f, cplx sigma, int max_m) {
    // Taylor coefficients of f at sigma: f(sigma + z) = sum_j f^{(j)}(sigma)/j! z^j
    const int n_terms = max_m + 12;
    std::vector<cplx> taylor(n_terms);
    for (int j = 0; j < n_terms; ++j) {
        KahanSum<cplx> acc;
        if (j == 0) acc.add(cplx(1.0, 0.0));
        double logfact = 0.0;
        for (int i = 2; i <= j; ++i) logfact += std::log((double)i);
        for (std::size_t n = 0; n < f.terms(); ++n) {
            double lam = f.lambdas()[n];
            // (-lam)^j / j! e^{-lam sigma}, in log magnitude to dodge overflow
            double mag = j * std::log(lam) - logfact;
            double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc.add(sign * std::exp(mag) * f.coeffs()[n] * std::exp(-lam * sigma));
        }
        taylor[j] = acc.value();
    }
    // strip the zero of order n_sigma: u(z) = f(sigma+z)/z^{n_sigma}
    int n_sigma = 0;
    double scale = 0.0;
    for (const auto& c : taylor) scale = std::max(scale, std::abs(c));
    while (n_sigma < n_terms - 1 && std::abs(taylor[n_sigma]) < 1e-9 * std::max(scale, 1.0))
        ++n_sigma;
    std::vector<cplx> u(taylor.begin() + n_sigma, taylor.end());
    // log-derivative series: (u'/u)(sigma+z) = sum_j tau_j z^j with
    // u' = (u'/u) * u solved coefficient by coefficient
    const int L = (int)u.size() - 1;
    std::vector<cplx> tau(L);
    for (int j = 0; j < L; ++j) {
        cplx rhs = (double)(j + 1) * u[j + 1];
        for (int i = 0; i < j; ++i) rhs -= tau[i] * u[j - i];
        tau[j] = rhs / u[0];
    }
    // S*_m(sigma) = -tau_{m-1}
    std::vector<cplx> out(max_m + 1, cplx(0.0, 0.0));
    for (int m = 2; m <= max_m; ++m) out[m] = -tau[m - 1];
    return out;
}

DiscrepancyPoly discrepancy_poly(const FiniteDirichletSeries& f, const Divisor& div, cplx sigma,
                                 double ymax, const NumericsConfig& cfg) {
    const int p = 8;  // raised regularization order for the truncated sum
    auto power_sums = divisor_power_sums(f, sigma, p);
    Divisor raised = div;
    raised.d = p;
    const double sigma1 = div.sigma1;
    DiscrepancyPoly out;
    out.sigma = sigma;
    std::vector<cplx> samples;
    const double offsets[8] = {0.0, 0.45, -0.45, 0.95, -0.95, 1.45, -1.45, 1.9};
    for (double t : offsets) {
        cplx s(sigma1 + 2.0, t);
        cplx g = g_interp(raised, sigma, s, ymax, cfg).value;
        // restore the d = 2 regularization through the exact power sums:
        // G_d = G_p - sum_{l=d-1}^{p-2} (s-sigma)^l S*_{l+1}(sigma)
        cplx corr(0.0, 0.0);
        cplx pw = s - sigma;
        for (int l = 1; l <= p - 2; ++l) {
            corr += pw * power_sums[l + 1];
            pw *= (s - sigma);
        }
        samples.push_back(g - corr - log_derivative(f, s, cfg));
    }
    KahanSum<cplx> mean;
    for (const cplx& v : samples) mean.add(v);
    cplx c0 = mean.value() / (double)samples.size();
    double dev = 0.0;
    for (const cplx& v : samples) dev = std::max(dev, std::abs(v - c0));
    if (dev > 1e-4)
        fail(Err::NonConstantDiscrepancy,
             "discrepancy samples disagree; increase ymax or check the divisor");
    out.coeffs = {c0};
    out.sample_residual = dev;
    return out;
}

std::vector<cplx> shift_Q_poly(const Divisor& div, cplx sigma, cplx sigma_prime, double ymax,
                               int m, const NumericsConfig& cfg) {
    if (m != 1 && m != 2) fail(Err::UnsupportedM, "shift_Q_poly supports m in {1, 2}");
    if (std::abs(sigma_prime - sigma) < 1e-14)
        return std::vector<cplx>(m, cplx(0.0, 0.0));
    auto mult_at = [&](cplx point) { return div.multiplicity_at(point, cfg.divisor_match_tol); };
    if (m == 1) {
        // Q'_{f,s'} - Q'_{f,s} as the difference of the base shifts from 0:
        //   delta(sg) = n_0/sg + n_sg/sg + sum_{rho != 0, sg} n_rho (-sg)/(rho (rho - sg))
        auto delta = [&](cplx sg) -> cplx {
            KahanSum<cplx> acc;
            int n0 = mult_at(cplx(0.0, 0.0));
            int nsg = mult_at(sg);
            if (std::abs(sg) > cfg.divisor_match_tol) acc.add((double)(n0 + nsg) / sg);
            for (const auto& e : div.entries) {
                if (std::fabs(e.rho.imag()) > ymax) continue;
                if (std::abs(e.rho) <= cfg.divisor_match_tol) continue;
                if (std::abs(e.rho - sg) <= cfg.divisor_match_tol) continue;
                acc.add((double)e.n * (-sg) / (e.rho * (e.rho - sg)));
            }
            return acc.value();
        };
        cplx d1 = (std::abs(sigma) < 1e-14) ? cplx(0.0, 0.0) : delta(sigma);
        cplx d2 = (std::abs(sigma_prime) < 1e-14) ? cplx(0.0, 0.0) : delta(sigma_prime);
        return {d2 - d1};
    }
    // m = 2: A s + B per the two-base-point sums
    cplx dsg = sigma_prime - sigma;
    int ns = mult_at(sigma), nsp = mult_at(sigma_prime);
    KahanSum<cplx> A, B;
    A.add(((double)nsp - (double)ns) / (dsg * dsg));
    B.add((double)nsp * (sigma_prime - 2.0 * sigma) / (dsg * dsg) -
          (double)ns * (sigma - 2.0 * sigma_prime) / (dsg * dsg));
    for (const auto& e : div.entries) {
        if (std::fabs(e.rho.imag()) > ymax) continue;
        if (std::abs(e.rho - sigma) <= cfg.divisor_match_tol ||
            std::abs(e.rho - sigma_prime) <= cfg.divisor_match_tol)
            continue;
        cplx den = std::pow(e.rho - sigma, 2) * std::pow(e.rho - sigma_prime, 2);
        A.add((double)e.n * (sigma + sigma_prime - 2.0 * e.rho) * dsg / den);
        B.add((double)e.n * (e.rho * sigma + e.rho * sigma_prime - 2.0 * sigma * sigma_prime) *
              dsg / den);
    }
    return {B.value(), A.value()};
}

std::optional<FunctionalEquation> detect_functional_equation(const FiniteDirichletSeries& f,
                                                             double tol) {
    const auto& lam = f.lambdas();
    const std::size_t N = lam.size();
    // exponent sequence 0, lambda_1, ..., lambda_N symmetric about mu = lambda_N/2
    const double mu = lam[N - 1] / 2.0;
    std::vector<double> ext(N + 1);
    ext[0] = 0.0;
    for (std::size_t n = 0; n < N; ++n) ext[n + 1] = lam[n];
    std::vector<cplx> a(N + 1);
    a[0] = 1.0;
    for (std::size_t n = 0; n < N; ++n) a[n + 1] = f.coeffs()[n];
    for (std::size_t i = 0; i <= N; ++i)
        if (std::fabs(ext[i] + ext[N - i] - lam[N - 1]) > tol) return std::nullopt;
    // c = a_N / a_0 must be +-1
    cplx cval = a[N];
    int c;
    if (std::abs(cval - cplx(1.0, 0.0)) <= tol)
        c = 1;
    else if (std::abs(cval + cplx(1.0, 0.0)) <= tol)
        c = -1;
    else
        return std::nullopt;
    if (N % 2 == 0 && c != 1) return std::nullopt;  // even N forces c = 1
    for (std::size_t i = 0; i <= N; ++i)
        if (std::abs(a[N - i] - (double)c * a[i]) > tol) return std::nullopt;
    return FunctionalEquation{mu, c};
}

}  // namespace pnlab
