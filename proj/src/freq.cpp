#include "pnlab/freq.hpp"

#include <algorithm>
#include <cmath>

namespace pnlab {

int multi_index_norm(const MultiIndex& k) {
    int n = 0;
    for (const auto& [slot, count] : k) n += count;
    return n;
}

namespace {

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
    // compare as dense vectors, slot by slot
    std::size_t ia = 0, ib = 0;
    int slot = 0;
    while (ia < a.size() || ib < b.size()) {
        int ca = (ia < a.size() && a[ia].first == slot) ? a[ia].second : 0;
        int cb = (ib < b.size() && b[ib].first == slot) ? b[ib].second : 0;
        if (ca != cb) return ca < cb;
        if (ia < a.size() && a[ia].first == slot) ++ia;
        if (ib < b.size() && b[ib].first == slot) ++ib;
        ++slot;
    }
    return false;
}

}  // namespace

std::vector<FrequencyTerm> enumerate_frequencies(const std::vector<double>& lambdas, double T,
                                                 const NumericsConfig& cfg) {
    if (!(T > 0.0)) fail(Err::OutOfRange, "enumeration bound T must be positive");
    std::vector<FrequencyTerm> out;
    struct Rec {
        const std::vector<double>& lam;
        double T;
        std::size_t cap;
        std::vector<FrequencyTerm>& out;
        MultiIndex cur;
        void go(std::size_t slot, double acc) {
            if (slot == lam.size()) {
                if (!cur.empty()) {
                    if (out.size() >= cap)
                        fail(Err::BudgetExceeded, "frequency enumeration exceeds term cap");
                    out.push_back({cur, acc, cplx{}});
                }
                return;
            }
            go(slot + 1, acc);
            double v = acc;
            int count = 0;
            while (true) {
                v += lam[slot];
                ++count;
                if (v > T * (1.0 + 1e-15)) break;
                cur.emplace_back((int)slot, count);
                go(slot + 1, v);
                cur.pop_back();
            }
        }
    } rec{lambdas, T, cfg.enum_cap, out, {}};
    rec.go(0, 0.0);
    std::sort(out.begin(), out.end(), [](const FrequencyTerm& x, const FrequencyTerm& y) {
        if (x.value != y.value) return x.value < y.value;
        return lex_less(x.k, y.k);
    });
    return out;
}

cplx b_coefficient(const std::vector<cplx>& coeffs, const MultiIndex& k) {
    int norm = multi_index_norm(k);
    if (norm < 1) fail(Err::OutOfRange, "multi-index must have ||k|| >= 1");
    for (const auto& [slot, count] : k) {
        if (slot < 0 || slot >= (int)coeffs.size())
            fail(Err::OutOfRange, "multi-index slot outside coefficient range");
        if (count < 1) fail(Err::OutOfRange, "multi-index counts must be >= 1");
    }
    if (norm <= 30) {
        double multinom = 1.0;  // ||k||! / prod k_j!
        {
            double fact = 1.0;
            for (int i = 2; i <= norm; ++i) fact *= i;
            for (const auto& [slot, count] : k)
                for (int i = 2; i <= count; ++i) fact /= i;
            multinom = fact;
        }
        cplx prod(1.0, 0.0);
        for (const auto& [slot, count] : k)
            for (int i = 0; i < count; ++i) prod *= coeffs[slot];
        double sign = (norm % 2 == 0) ? 1.0 : -1.0;
        return sign / (double)norm * multinom * prod;
    }
    // log-space magnitude with phase tracking: ||k||! / prod k_j! * prod |a_j|^{k_j}
    double log_mag = std::lgamma((double)norm + 1.0) - std::log((double)norm);
    double phase = (norm % 2 == 0) ? 0.0 : kPi;
    for (const auto& [slot, count] : k) {
        log_mag -= std::lgamma((double)count + 1.0);
        double r = std::abs(coeffs[slot]);
        if (r == 0.0) return cplx(0.0, 0.0);
        log_mag += count * std::log(r);
        phase += count * std::arg(coeffs[slot]);
    }
    return std::exp(log_mag) * cplx(std::cos(phase), std::sin(phase));
}

std::vector<FrequencyTerm> expansion_terms(const FiniteDirichletSeries& f, double T,
                                           const NumericsConfig& cfg) {
    auto terms = enumerate_frequencies(f.lambdas(), T, cfg);
    for (auto& t : terms) t.b = b_coefficient(f.coeffs(), t.k);
    return terms;
}

std::map<double, cplx> aggregate_terms(const std::vector<FrequencyTerm>& terms, double tol) {
    std::map<double, cplx> out;
    for (const auto& t : terms) {
        auto it = out.lower_bound(t.value - tol);
        if (it != out.end() && std::fabs(it->first - t.value) <= tol)
            it->second += t.b;
        else
            out.emplace(t.value, t.b);
    }
    return out;
}

namespace {

// sparse exponential polynomial: ascending (exponent, coefficient), truncated at T
using ExpPoly = std::vector<std::pair<double, cplx>>;

ExpPoly merge_tol(ExpPoly p, double tol) {
    std::sort(p.begin(), p.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ExpPoly out;
    for (const auto& [e, c] : p) {
        if (!out.empty() && e - out.back().first <= tol)
            out.back().second += c;
        else
            out.emplace_back(e, c);
    }
    return out;
}

ExpPoly multiply(const ExpPoly& p, const ExpPoly& q, double T, double tol, std::size_t cap) {
    ExpPoly out;
    for (const auto& [e1, c1] : p)
        for (const auto& [e2, c2] : q) {
            double e = e1 + e2;
            if (e > T * (1.0 + 1e-15)) continue;
            out.emplace_back(e, c1 * c2);
            if (out.size() > cap) fail(Err::BudgetExceeded, "log expansion exceeds term cap");
        }
    return merge_tol(std::move(out), tol);
}

}  // namespace

std::map<double, cplx> log_expansion_oracle(const FiniteDirichletSeries& f, double T,
                                            const NumericsConfig& cfg) {
    if (!(T > 0.0)) fail(Err::OutOfRange, "expansion bound T must be positive");
    const double tol = cfg.divisor_match_tol;
    ExpPoly u;
    for (std::size_t n = 0; n < f.terms(); ++n)
        if (f.lambdas()[n] <= T * (1.0 + 1e-15)) u.emplace_back(f.lambdas()[n], f.coeffs()[n]);
    // -log(1+u) = sum_{m>=1} (-1)^m u^m / m; u^m has minimum exponent m*lambda_1
    std::map<double, cplx> acc;
    ExpPoly power = u;
    for (int m = 1; !power.empty(); ++m) {
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        for (const auto& [e, c] : power) {
            cplx term = sign / (double)m * c;
            auto it = acc.lower_bound(e - tol);
            if (it != acc.end() && std::fabs(it->first - e) <= tol)
                it->second += term;
            else
                acc.emplace(e, term);
        }
        power = multiply(power, u, T, tol, cfg.enum_cap);
    }
    return acc;
}

std::vector<cplx> newton_sums(const std::vector<cplx>& poly_coeffs, int M) {
    if (M < 1) fail(Err::OutOfRange, "newton_sums needs M >= 1");
    const int n = (int)poly_coeffs.size();
    std::vector<double> lambdas(n);
    for (int j = 0; j < n; ++j) lambdas[j] = (double)(j + 1);
    std::vector<cplx> sums(M, cplx(0.0, 0.0));
    // S_m = m * sum over k with sum j*k_j = m of b_k(a); skip slots with a_j = 0
    auto terms = enumerate_frequencies(lambdas, (double)M + 0.25);
    for (const auto& t : terms) {
        long long weighted = llround(t.value);
        if (weighted < 1 || weighted > M) continue;
        bool zero = false;
        for (const auto& [slot, count] : t.k)
            if (std::abs(poly_coeffs[slot]) == 0.0) zero = true;
        if (zero) continue;
        sums[weighted - 1] += (double)weighted * b_coefficient(poly_coeffs, t.k);
    }
    return sums;
}

}  // namespace pnlab
