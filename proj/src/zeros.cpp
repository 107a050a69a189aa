#include "pnlab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace pnlab {

int Divisor::total_multiplicity() const {
    int n = 0;
    for (const auto& e : entries) n += e.n;
    return n;
}

int Divisor::multiplicity_at(cplx sigma, double tol) const {
    for (const auto& e : entries)
        if (std::abs(e.rho - sigma) <= tol) return e.n;
    return 0;
}

namespace {

struct WindingTracker {
    const FiniteDirichletSeries& f;
    double floor_scale;
    int max_depth = 48;

    double segment(cplx z0, cplx z1, cplx f0, cplx f1, int depth) const {
        double d = std::arg(f1 / f0);
        if (std::fabs(d) <= 1.3) return d;
        if (depth >= max_depth)
            fail(Err::PhaseJump, "argument tracking failed to settle on the boundary");
        cplx zm = 0.5 * (z0 + z1);
        cplx fm = f.eval(zm);
        if (std::abs(fm) < floor_scale)
            fail(Err::BoundaryZero, "zero too close to the search boundary");
        return segment(z0, zm, f0, fm, depth + 1) + segment(zm, z1, fm, f1, depth + 1);
    }

    double edge(cplx z0, cplx z1, int base_samples) const {
        double total = 0.0;
        cplx prev_z = z0;
        cplx prev_f = f.eval(z0);
        if (std::abs(prev_f) < floor_scale)
            fail(Err::BoundaryZero, "zero too close to the search boundary");
        for (int i = 1; i <= base_samples; ++i) {
            cplx z = z0 + (z1 - z0) * ((double)i / base_samples);
            cplx fv = f.eval(z);
            if (std::abs(fv) < floor_scale)
                fail(Err::BoundaryZero, "zero too close to the search boundary");
            total += segment(prev_z, z, prev_f, fv, 0);
            prev_z = z;
            prev_f = fv;
        }
        return total;
    }
};

int winding_number(const FiniteDirichletSeries& f, const SearchRegion& r,
                   const NumericsConfig& cfg) {
    double scale = f.coeff_norm1() * std::exp(std::fabs(r.re_min) * f.lambda_max());
    WindingTracker tracker{f, cfg.eval_floor * std::max(1.0, scale) * 1e-2};
    cplx c00(r.re_min, r.im_min), c10(r.re_max, r.im_min);
    cplx c11(r.re_max, r.im_max), c01(r.re_min, r.im_max);
    auto samples = [&](double len) {
        return std::max(6, (int)std::ceil(len * f.lambda_max() * 0.9) + 2);
    };
    double total = 0.0;
    total += tracker.edge(c00, c10, samples(r.width()));
    total += tracker.edge(c10, c11, samples(r.height()));
    total += tracker.edge(c11, c01, samples(r.width()));
    total += tracker.edge(c01, c00, samples(r.height()));
    double w = total / kTwoPi;
    long long n = llround(w);
    if (std::fabs(w - (double)n) > 0.2)
        fail(Err::PhaseJump, "boundary winding is not close to an integer");
    return (int)n;
}

}  // namespace

int count_zeros_rect(const FiniteDirichletSeries& f, const SearchRegion& r,
                     const NumericsConfig& cfg) {
    if (!(r.re_min < r.re_max && r.im_min < r.im_max))
        fail(Err::OutOfRange, "degenerate search rectangle");
    SearchRegion cur = r;
    double step = std::max(cfg.boundary_clearance, 1e-9 * (1.0 + r.width()));
    for (int attempt = 0; attempt < 10; ++attempt) {
        try {
            return winding_number(f, cur, cfg);
        } catch (const Error& e) {
            if (e.code() != Err::BoundaryZero) throw;
            cur.re_min -= step;
            cur.re_max += step;
            cur.im_min -= step;
            cur.im_max += step;
            step *= 3.0;
        }
    }
    fail(Err::BoundaryZero, "could not nudge rectangle edges away from zeros");
}

namespace {

std::optional<cplx> newton_refine(const FiniteDirichletSeries& f, cplx start,
                                  double target_residual, const NumericsConfig& cfg) {
    cplx s = start;
    double best = std::abs(f.eval(s));
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        cplx fv = f.eval(s);
        if (std::abs(fv) <= target_residual) return s;
        cplx df = f.derivative(1, s);
        if (std::abs(df) == 0.0) break;
        cplx step = fv / df;
        double damp = 1.0;
        bool moved = false;
        for (int h = 0; h < 60; ++h) {
            cplx cand = s - damp * step;
            double v = std::abs(f.eval(cand));
            if (v < best) {
                s = cand;
                best = v;
                moved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!moved) break;
    }
    if (best > target_residual) return std::nullopt;
    return s;
}

bool inside_region(cplx z, const SearchRegion& r, double slack) {
    return z.real() >= r.re_min - slack && z.real() <= r.re_max + slack &&
           z.imag() >= r.im_min - slack && z.imag() <= r.im_max + slack;
}

int local_multiplicity(const FiniteDirichletSeries& f, cplx rho, double radius,
                       const NumericsConfig& cfg) {
    // shrink until the probe box no longer catches a neighbouring zero
    for (;;) {
        SearchRegion r{rho.real() - radius, rho.real() + radius, rho.imag() - radius,
                       rho.imag() + radius};
        int m = count_zeros_rect(f, r, cfg);
        if (m == 1) return 1;
        if (radius < 4e-6) {
            if (m < 1 || m > cfg.multiplicity_cap)
                fail(Err::OutOfRange, "zero multiplicity outside the supported range");
            return m;
        }
        radius *= 0.25;
    }
}

struct RegionTask {
    SearchRegion region;
    int count;
};

// Split r along the longer side; the cut line is moved until the winding of
// both halves can be tracked (a zero sitting on the cut trips BoundaryZero).
std::pair<RegionTask, RegionTask> split_region(const FiniteDirichletSeries& f,
                                               const SearchRegion& r, int count,
                                               const NumericsConfig& cfg) {
    const bool vertical_cut = r.width() > r.height();
    static const double offsets[] = {0.5, 0.5625, 0.4375, 0.625, 0.375, 0.6875, 0.3125, 0.75, 0.25, 0.53};
    for (double frac : offsets) {
        SearchRegion a = r, b = r;
        if (vertical_cut) {
            double cut = r.re_min + frac * r.width();
            a.re_max = cut;
            b.re_min = cut;
        } else {
            double cut = r.im_min + frac * r.height();
            a.im_max = cut;
            b.im_min = cut;
        }
        try {
            int ca = winding_number(f, a, cfg);
            int cb = winding_number(f, b, cfg);
            if (ca + cb != count) continue;  // a zero slipped through the cut; try another
            return {{a, ca}, {b, cb}};
        } catch (const Error& e) {
            if (e.code() == Err::BoundaryZero || e.code() == Err::PhaseJump) continue;
            throw;
        }
    }
    fail(Err::BoundaryZero, "no admissible cut line found while subdividing");
}

}  // namespace

Divisor find_zeros(const FiniteDirichletSeries& f, double ymax, const NumericsConfig& cfg) {
    if (!(ymax > 0.0)) fail(Err::OutOfRange, "ymax must be positive");
    StripBound strip = zero_strip(f);
    const double margin = 0.5;
    const double target_residual = 1e-12 * std::max(1.0, f.coeff_norm1());

    SearchRegion outer{strip.sigma_minus - margin, strip.sigma_plus + margin, -ymax, ymax};
    int total = count_zeros_rect(f, outer, cfg);

    std::vector<RegionTask> queue{{outer, total}};
    std::vector<DivisorEntry> found;
    std::mutex mu;
    std::exception_ptr failure;

    auto worker = [&]() {
        for (;;) {
            RegionTask task;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (failure || queue.empty()) return;
                task = queue.back();
                queue.pop_back();
            }
            try {
                if (task.count == 0) continue;
                const double diag = std::hypot(task.region.width(), task.region.height());
                cplx center(0.5 * (task.region.re_min + task.region.re_max),
                            0.5 * (task.region.im_min + task.region.im_max));
                if (task.count == 1) {
                    // refinement must stay inside its rectangle; a Newton that
                    // escapes into a neighbouring basin forces a further split
                    const cplx starts[5] = {
                        center,
                        center + cplx(0.25 * task.region.width(), 0.0),
                        center - cplx(0.25 * task.region.width(), 0.0),
                        center + cplx(0.0, 0.25 * task.region.height()),
                        center - cplx(0.0, 0.25 * task.region.height()),
                    };
                    std::optional<cplx> rho;
                    for (const cplx& s0 : starts) {
                        auto r = newton_refine(f, s0, target_residual, cfg);
                        if (r && inside_region(*r, task.region, 1e-9)) {
                            rho = r;
                            break;
                        }
                    }
                    if (!rho) {
                        if (diag < 1e-9)
                            fail(Err::QuadratureFailure,
                                 "newton refinement failed inside a tiny rectangle");
                        auto [a, b] = split_region(f, task.region, task.count, cfg);
                        std::lock_guard<std::mutex> lock(mu);
                        queue.push_back(a);
                        queue.push_back(b);
                        continue;
                    }
                    double radius =
                        std::min(0.05, 0.5 * std::max(task.region.width(), task.region.height()));
                    int mult = local_multiplicity(f, *rho, std::max(radius, 1e-6), cfg);
                    std::lock_guard<std::mutex> lock(mu);
                    found.push_back({*rho, mult});
                    continue;
                }
                if (diag < 1e-7) {
                    if (task.count > cfg.multiplicity_cap)
                        fail(Err::OutOfRange, "zero multiplicity above the configured cap");
                    std::lock_guard<std::mutex> lock(mu);
                    found.push_back({center, task.count});
                    continue;
                }
                auto [a, b] = split_region(f, task.region, task.count, cfg);
                std::lock_guard<std::mutex> lock(mu);
                queue.push_back(a);
                queue.push_back(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const std::size_t nthreads =
        std::min<std::uint64_t>(thread_count_from_env(cfg.threads), 8);
    // workers drain a shared queue; respawn while work remains
    while (true) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (failure) std::rethrow_exception(failure);
            if (queue.empty()) break;
        }
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Divisor div;
    div.entries = std::move(found);
    std::sort(div.entries.begin(), div.entries.end(), [](const DivisorEntry& x, const DivisorEntry& y) {
        if (x.rho.imag() != y.rho.imag()) return x.rho.imag() < y.rho.imag();
        return x.rho.real() < y.rho.real();
    });
    int sum = 0;
    double s1 = strip.sigma_minus;
    for (const auto& e : div.entries) {
        sum += e.n;
        s1 = std::max(s1, e.rho.real());
    }
    if (sum != total)
        fail(Err::PhaseJump, "zero multiplicities do not add up to the strip winding count");
    div.sigma1 = div.entries.empty() ? strip.sigma_plus : s1;
    div.d = 2;
    div.g = 1;
    return div;
}

Divisor find_level_zeros(const FiniteDirichletSeries& f, cplx c, double ymax,
                         const NumericsConfig& cfg) {
    if (std::abs(c - cplx(1.0, 0.0)) < 1e-12)
        fail(Err::InvalidLevel, "level c = 1 has no normalized series");
    cplx scale = 1.0 / (cplx(1.0, 0.0) - c);
    std::vector<cplx> coeffs = f.coeffs();
    for (cplx& a : coeffs) a *= scale;
    FiniteDirichletSeries g(f.lambdas(), std::move(coeffs));
    return find_zeros(g, ymax, cfg);
}

std::optional<RationalReduction> reduce_rational(const FiniteDirichletSeries& f, double rel_tol,
                                                 long long max_den) {
    const auto& lam = f.lambdas();
    std::vector<long long> nums(lam.size()), dens(lam.size());
    for (std::size_t n = 0; n < lam.size(); ++n) {
        double x = lam[n] / lam[0];
        // best rational with denominator <= max_den by continued fractions
        long long p0 = 1, q0 = 0, p1 = (long long)std::floor(x), q1 = 1;
        double frac = x - std::floor(x);
        while (q1 <= max_den && frac > 1e-15) {
            double recip = 1.0 / frac;
            long long a = (long long)std::floor(recip);
            frac = recip - std::floor(recip);
            long long p2 = a * p1 + p0, q2 = a * q1 + q0;
            if (q2 > max_den) break;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
        }
        if (std::fabs(x - (double)p1 / (double)q1) > rel_tol * std::fabs(x)) return std::nullopt;
        nums[n] = p1;
        dens[n] = q1;
    }
    long long L = 1;
    for (long long q : dens) {
        L = std::lcm(L, q);
        if (L > 100000) return std::nullopt;
    }
    RationalReduction red;
    red.lambda = lam[0] / (double)L;
    long long kmax = 0;
    red.exponents.resize(lam.size());
    for (std::size_t n = 0; n < lam.size(); ++n) {
        long long k = nums[n] * (L / dens[n]);
        // the first frequency itself may be a multiple of the base
        if (std::fabs(lam[n] - (double)k * red.lambda) > rel_tol * lam[n]) return std::nullopt;
        red.exponents[n] = k;
        kmax = std::max(kmax, k);
    }
    red.poly.assign((std::size_t)kmax + 1, cplx(0.0, 0.0));
    red.poly[0] = 1.0;
    for (std::size_t n = 0; n < lam.size(); ++n) red.poly[(std::size_t)red.exponents[n]] += f.coeffs()[n];
    return red;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() < 2) return {};
    std::vector<cplx> roots;
    // deflate roots at the origin
    std::size_t z = 0;
    while (z < c.size() && std::abs(c[z]) == 0.0) ++z;
    for (std::size_t i = 0; i < z; ++i) roots.push_back(cplx(0.0, 0.0));
    c.erase(c.begin(), c.begin() + z);
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return roots;
    cplx lead = c.back();
    for (cplx& x : c) x /= lead;
    // Durand-Kerner from a non-real geometric start
    std::vector<cplx> r(deg);
    cplx seed(0.4, 0.9);
    r[0] = seed;
    for (std::size_t j = 1; j < deg; ++j) r[j] = r[j - 1] * seed;
    auto eval = [&](cplx x) {
        cplx acc = c.back();
        for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * x + c[j];
        return acc;
    };
    for (int it = 0; it < 600; ++it) {
        double max_step = 0.0;
        for (std::size_t j = 0; j < deg; ++j) {
            cplx denom(1.0, 0.0);
            for (std::size_t i = 0; i < deg; ++i)
                if (i != j) denom *= (r[j] - r[i]);
            if (std::abs(denom) == 0.0) {
                r[j] += cplx(1e-8, 1e-8);
                continue;
            }
            cplx step = eval(r[j]) / denom;
            r[j] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(r[j])));
        }
        if (max_step < 1e-15) break;
    }
    roots.insert(roots.end(), r.begin(), r.end());
    return roots;
}

std::vector<cplx> reduction_zeros(const RationalReduction& red, double ymax) {
    std::vector<cplx> out;
    for (cplx alpha : poly_roots(red.poly)) {
        if (std::abs(alpha) == 0.0) continue;  // X = 0 is s = +infinity
        cplx base = -std::log(alpha) / red.lambda;  // principal branch
        double step = kTwoPi / red.lambda;
        long long k_lo = (long long)std::floor((-ymax - base.imag()) / step) - 1;
        long long k_hi = (long long)std::ceil((ymax - base.imag()) / step) + 1;
        for (long long k = k_lo; k <= k_hi; ++k) {
            cplx s = base + cplx(0.0, step * (double)k);
            if (std::fabs(s.imag()) <= ymax) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });
    return out;
}

}  // namespace pnlab
