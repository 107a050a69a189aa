#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "pnlab/errors.hpp"

namespace pnlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLog2 = 0.69314718055994530941723212145817657;

// All tolerances and caps in one place; every module takes a const reference.
struct NumericsConfig {
    double eval_floor = 1e-14;        // |f(s)| below this counts as "numerically a zero"
    double quad_tol = 1e-10;          // default quadrature absolute tolerance
    double boundary_clearance = 1e-6; // min distance of zeros to search-rectangle edges
    double divisor_match_tol = 1e-9;  // sigma-vs-divisor / tie aggregation tolerance
    std::size_t enum_cap = 10'000'000;    // frequency enumeration term cap
    std::size_t sieve_cap = 100'000'000;  // largest prime sieve size
    int newton_max_iter = 200;
    int multiplicity_cap = 8;
    int bump_order = 8;               // smoothness order of compact bump test functions
    std::uint64_t seed = 0x5eed5eedULL;
    int threads = 0;                  // 0 = hardware/PNLAB_THREADS
};

inline const NumericsConfig& default_config() {
    static const NumericsConfig cfg{};
    return cfg;
}

// Compensated (Kahan) accumulation.
template <typename T>
struct KahanSum {
    T sum{};
    T comp{};
    void add(const T& x) {
        T y = x - comp;
        T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    T value() const { return sum; }
};

namespace detail {
inline double abs_of(double x) { return std::fabs(x); }
inline double abs_of(const cplx& x) { return std::abs(x); }
}  // namespace detail

// Gauss-Kronrod 7-15 on [a,b]; returns estimate, sets err.
template <typename F, typename V = double>
V gk15(const F& f, double a, double b, double& err) {
    static const double nodes[8] = {
        0.0,
        0.405845151377397166906606412076961,
        0.741531185599394439863864773280788,
        0.949107912342758524526189684047851,
        0.207784955007898467600689403773245,
        0.586087235467691130294144838258730,
        0.864864423359769072789712788640926,
        0.991455371120812639206854697526329,
    };
    static const double wg[4] = {
        0.417959183673469387755102040816327,
        0.381830050505118944950369775488975,
        0.279705391489276667901467771423780,
        0.129484966168869693270611432679082,
    };
    static const double wk[8] = {
        0.209482141084727828012999174891714,
        0.190350578064785409913256402421014,
        0.140653259715525918745189590510238,
        0.063092092629978553290700663189204,
        0.204432940075298892414161999234649,
        0.169004726639267902826583426598550,
        0.104790010322250183839876322541518,
        0.022935322010529224963732008058970,
    };
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    V f0 = f(c);
    V gauss = wg[0] * f0;
    V kron = wk[0] * f0;
    for (int i = 1; i < 4; ++i) {
        V v = f(c + h * nodes[i]) + f(c - h * nodes[i]);
        gauss += wg[i] * v;
        kron += wk[i] * v;
    }
    for (int i = 4; i < 8; ++i) {
        V v = f(c + h * nodes[i]) + f(c - h * nodes[i]);
        kron += wk[i] * v;
    }
    gauss *= h;
    kron *= h;
    double diff = detail::abs_of(V(kron - gauss));
    err = std::pow(200.0 * diff, 1.5);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return kron;
}

// Adaptive bisection to absolute tolerance. V = double or cplx.
template <typename V, typename F>
V integrate(const F& f, double a, double b, double tol, double* err_out = nullptr) {
    struct Seg { double a, b, err; V val; };
    double e0;
    V v0 = gk15<F, V>(f, a, b, e0);
    std::vector<Seg> segs{{a, b, e0, v0}};
    double total_err = e0;
    int iter = 0;
    const int max_segs = 4000;
    while (total_err > tol && (int)segs.size() < max_segs && iter < 20000) {
        ++iter;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        Seg s = segs[worst];
        if (s.err <= tol / (2.0 * segs.size()) || s.b - s.a < 1e-15 * (std::fabs(s.b) + 1.0)) break;
        double mid = 0.5 * (s.a + s.b);
        double e1, e2;
        V v1 = gk15<F, V>(f, s.a, mid, e1);
        V v2 = gk15<F, V>(f, mid, s.b, e2);
        segs[worst] = {s.a, mid, e1, v1};
        segs.push_back({mid, s.b, e2, v2});
        total_err += e1 + e2 - s.err;
    }
    KahanSum<V> acc;
    total_err = 0;
    for (const Seg& s : segs) {
        acc.add(s.val);
        total_err += s.err;
    }
    if (err_out) *err_out = total_err;
    if (total_err > 1e3 * tol + 1e-6)
        fail(Err::QuadratureFailure, "adaptive quadrature did not converge");
    return acc.value();
}

// Semi-infinite integral via t = e^u - 1; the upper end doubles until the new
// panel contributes less than tol/8.
template <typename V, typename F>
V integrate_0inf(const F& f, double tol, double* err_out = nullptr) {
    auto g = [&f](double u) {
        double eu = std::exp(u);
        return V(f(eu - 1.0) * eu);
    };
    double lo = 0.0, hi = 2.0;
    double err_acc = 0.0;
    KahanSum<V> acc;
    for (int k = 0; k < 16; ++k) {
        double e;
        V v = integrate<V>(g, lo, hi, tol * 0.25, &e);
        acc.add(v);
        err_acc += e;
        if (k > 0 && detail::abs_of(v) < tol * 0.125 && e < tol * 0.125) break;
        lo = hi;
        hi *= 2.0;
        if (hi > 64.0) break;  // t ~ e^64: any admissible integrand is long dead
    }
    if (err_out) *err_out = err_acc;
    return acc.value();
}

inline bool nearly_equal(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

std::uint64_t thread_count_from_env(int configured);

}  // namespace pnlab
