#include "pnlab/series.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace pnlab {

const char* err_name(Err code) {
    switch (code) {
        case Err::NearZeroDivision: return "NearZeroDivision";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::BoundaryZero: return "BoundaryZero";
        case Err::PhaseJump: return "PhaseJump";
        case Err::SigmaOnDivisor: return "SigmaOnDivisor";
        case Err::InvalidLevel: return "InvalidLevel";
        case Err::DerivativeUnavailable: return "DerivativeUnavailable";
        case Err::NotRealAnalytic: return "NotRealAnalytic";
        case Err::NonpositiveT: return "NonpositiveT";
        case Err::DivergentRegularization: return "DivergentRegularization";
        case Err::OutOfRange: return "OutOfRange";
        case Err::PoleAtQ: return "PoleAtQ";
        case Err::DecayHypothesisViolated: return "DecayHypothesisViolated";
        case Err::NotRamanujanClass: return "NotRamanujanClass";
        case Err::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
        case Err::PoleAtSigma: return "PoleAtSigma";
        case Err::QuadratureFailure: return "QuadratureFailure";
        case Err::NearPole: return "NearPole";
        case Err::NonConstantDiscrepancy: return "NonConstantDiscrepancy";
        case Err::UnsupportedM: return "UnsupportedM";
        case Err::ParseError: return "ParseError";
        case Err::MonotonicityError: return "MonotonicityError";
        case Err::SanityGateError: return "SanityGateError";
        case Err::UsageError: return "UsageError";
        case Err::IoError: return "IoError";
    }
    return "Unknown";
}

std::uint64_t thread_count_from_env(int configured) {
    if (configured > 0) return (std::uint64_t)configured;
    if (const char* env = std::getenv("PNLAB_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n > 0) return (std::uint64_t)n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

FiniteDirichletSeries::FiniteDirichletSeries(std::vector<double> lambdas, std::vector<cplx> coeffs)
    : lambdas_(std::move(lambdas)), coeffs_(std::move(coeffs)) {
    if (lambdas_.empty() || lambdas_.size() != coeffs_.size())
        fail(Err::ParseError, "series needs matching non-empty lambdas/coeffs");
    double prev = 0.0;
    for (double l : lambdas_) {
        if (!(l > prev))
            fail(Err::ParseError, "frequencies must be strictly increasing and positive");
        prev = l;
    }
    if (std::abs(coeffs_.back()) == 0.0)
        fail(Err::ParseError, "leading coefficient a_N must be nonzero");
}

double FiniteDirichletSeries::coeff_norm1() const {
    KahanSum<double> s;
    s.add(1.0);
    for (const cplx& a : coeffs_) s.add(std::abs(a));
    return s.value();
}

bool FiniteDirichletSeries::real_coefficients(double tol) const {
    for (const cplx& a : coeffs_)
        if (std::fabs(a.imag()) > tol) return false;
    return true;
}

cplx FiniteDirichletSeries::eval(cplx s) const {
    KahanSum<cplx> acc;
    acc.add(cplx(1.0, 0.0));
    for (std::size_t n = 0; n < lambdas_.size(); ++n)
        acc.add(coeffs_[n] * std::exp(-lambdas_[n] * s));
    return acc.value();
}

cplx FiniteDirichletSeries::derivative(int j, cplx s) const {
    if (j == 0) return eval(s);
    KahanSum<cplx> acc;
    for (std::size_t n = 0; n < lambdas_.size(); ++n) {
        double p = std::pow(-lambdas_[n], j);
        acc.add(p * coeffs_[n] * std::exp(-lambdas_[n] * s));
    }
    return acc.value();
}

cplx log_derivative(const FiniteDirichletSeries& f, cplx s, const NumericsConfig& cfg) {
    cplx v = f.eval(s);
    if (std::abs(v) <= cfg.eval_floor)
        fail(Err::NearZeroDivision, "f(s) is numerically zero at the requested point");
    return f.derivative(1, s) / v;
}

namespace {

// Both strip equations are strictly monotone in sigma; bisect after an
// exponential bracket search.
double solve_monotone(const std::function<double(double)>& g) {
    double lo = 0.0, hi = 0.0;
    double g0 = g(0.0);
    if (g0 == 0.0) return 0.0;
    double step = 1.0;
    if (g0 > 0.0) {  // g decreasing in sigma: move right
        lo = 0.0;
        hi = step;
        while (g(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e8) fail(Err::QuadratureFailure, "strip bound bracket failed");
        }
    } else {
        hi = 0.0;
        lo = -step;
        while (g(lo) < 0.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -1e8) fail(Err::QuadratureFailure, "strip bound bracket failed");
        }
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * (1.0 + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

StripBound zero_strip(const FiniteDirichletSeries& f) {
    const auto& lam = f.lambdas();
    const auto& a = f.coeffs();
    const std::size_t N = lam.size();
    // sum |a_n| e^{-lambda_n s} = 1, decreasing in s
    auto g_plus = [&](double s) {
        double acc = -1.0;
        for (std::size_t n = 0; n < N; ++n) acc += std::abs(a[n]) * std::exp(-lam[n] * s);
        return acc;
    };
    // |a_N| e^{-lambda_N s} - sum_{n<N} |a_n| e^{-lambda_n s} - 1 = 0, decreasing
    auto g_minus = [&](double s) {
        double acc = std::abs(a[N - 1]) * std::exp(-lam[N - 1] * s) - 1.0;
        for (std::size_t n = 0; n + 1 < N; ++n) acc -= std::abs(a[n]) * std::exp(-lam[n] * s);
        return acc;
    };
    StripBound b;
    b.sigma_plus = solve_monotone(g_plus);
    b.sigma_minus = solve_monotone(g_minus);
    return b;
}

FiniteDirichletSeries FiniteDirichletSeries::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad series JSON: ") + e.what());
    }
    if (!j.contains("lambdas") || !j.contains("coeffs"))
        fail(Err::ParseError, "series JSON needs 'lambdas' and 'coeffs'");
    std::vector<double> lambdas = j["lambdas"].get<std::vector<double>>();
    std::vector<cplx> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_array() || c.size() != 2)
            fail(Err::ParseError, "each coefficient must be [re, im]");
        coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return FiniteDirichletSeries(std::move(lambdas), std::move(coeffs));
}

FiniteDirichletSeries FiniteDirichletSeries::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::IoError, "cannot open series file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string FiniteDirichletSeries::to_json_text() const {
    nlohmann::json j;
    j["lambdas"] = lambdas_;
    nlohmann::json cs = nlohmann::json::array();
    for (const cplx& c : coeffs_) cs.push_back({c.real(), c.imag()});
    j["coeffs"] = cs;
    return j.dump();
}

void FiniteDirichletSeries::write_json_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) fail(Err::IoError, "cannot write series file: " + path);
    out << to_json_text() << "\n";
}

}  // namespace pnlab
