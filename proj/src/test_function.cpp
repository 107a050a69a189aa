#include "pnlab/test_function.hpp"

#include <cmath>
#include <sstream>

namespace pnlab {

TestFunction TestFunction::gaussian(double mu, double s) {
    if (!(s > 0.0)) fail(Err::ParseError, "gaussian width must be positive");
    TestFunction f;
    f.kind_ = TestFunctionKind::Gaussian;
    f.mu_ = mu;
    f.s_ = s;
    f.max_order_ = 40;
    return f;
}

TestFunction TestFunction::bump(double a, double b, int order) {
    if (!(0.0 < a && a < b)) fail(Err::ParseError, "bump needs 0 < a < b");
    if (order < 2) fail(Err::ParseError, "bump smoothness order must be >= 2");
    TestFunction f;
    f.kind_ = TestFunctionKind::Bump;
    f.a_ = a;
    f.b_ = b;
    f.order_ = order;
    f.max_order_ = 2 * order;
    // centered form (1 - y^2)^q with y = (t - c)/r keeps coefficients small
    std::vector<double> p(2 * order + 1, 0.0);
    double binom = 1.0;
    for (int i = 0; i <= order; ++i) {
        p[2 * i] = (i % 2 == 0 ? 1.0 : -1.0) * binom;
        binom = binom * (order - i) / (i + 1.0);
    }
    f.poly_ = std::move(p);
    return f;
}

double TestFunction::value(double t) const {
    if (kind_ == TestFunctionKind::Gaussian) {
        double u = (t - mu_) / s_;
        return std::exp(-0.5 * u * u);
    }
    if (t <= a_ || t >= b_) return 0.0;
    double y = (2.0 * t - a_ - b_) / (b_ - a_);
    double acc = 0.0;
    for (std::size_t j = poly_.size(); j-- > 0;) acc = acc * y + poly_[j];
    return acc;
}

double TestFunction::derivative(int k, double t) const {
    if (k < 0 || k > max_order_)
        fail(Err::DerivativeUnavailable, "derivative order beyond what this test function supplies");
    if (k == 0) return value(t);
    if (kind_ == TestFunctionKind::Gaussian) {
        // d^k/dt^k e^{-u^2/2} = (-1/s)^k He_k(u) e^{-u^2/2}, probabilists' Hermite
        double u = (t - mu_) / s_;
        double he0 = 1.0, he1 = u;
        double he = (k == 1) ? he1 : 0.0;
        for (int j = 2; j <= k; ++j) {
            he = u * he1 - (j - 1) * he0;
            he0 = he1;
            he1 = he;
        }
        if (k == 1) he = he1;
        return std::pow(-1.0 / s_, k) * he * std::exp(-0.5 * u * u);
    }
    if (t <= a_ || t >= b_) return 0.0;
    if (k >= (int)poly_.size()) return 0.0;
    const double r = 0.5 * (b_ - a_);
    const double y = (2.0 * t - a_ - b_) / (b_ - a_);
    double acc = 0.0;
    double yp = 1.0;
    for (std::size_t j = (std::size_t)k; j < poly_.size(); ++j) {
        double fall = 1.0;
        for (int i = 0; i < k; ++i) fall *= (double)(j - i);
        acc += poly_[j] * fall * yp;
        yp *= y;
    }
    return acc * std::pow(r, -(double)k);
}

cplx TestFunction::value_complex(cplx z) const {
    if (kind_ == TestFunctionKind::Gaussian) {
        cplx u = (z - mu_) / s_;
        return std::exp(-0.5 * u * u);
    }
    cplx y = (2.0 * z - a_ - b_) / (b_ - a_);
    cplx acc = 0.0;
    for (std::size_t j = poly_.size(); j-- > 0;) acc = acc * y + poly_[j];
    return acc;
}

double TestFunction::support_lo() const {
    if (kind_ == TestFunctionKind::Bump) return a_;
    return mu_ - s_ * 9.1;  // value < 1e-18 beyond
}

double TestFunction::support_hi() const {
    if (kind_ == TestFunctionKind::Bump) return b_;
    return mu_ + s_ * 9.1;
}

cplx TestFunction::transform(cplx x) const {
    if (kind_ != TestFunctionKind::Gaussian)
        fail(Err::DerivativeUnavailable, "transform oracle only available for gaussians");
    // int exp(-(t-mu)^2/2s^2) e^{-ixt} dt = s sqrt(2 pi) exp(-i mu x - s^2 x^2 / 2)
    cplx ix(-x.imag(), x.real());
    return s_ * std::sqrt(kTwoPi) * std::exp(-ix * mu_ - 0.5 * s_ * s_ * x * x);
}

double TestFunction::analyticity_width() const {
    return kind_ == TestFunctionKind::Gaussian ? std::numeric_limits<double>::infinity() : 0.0;
}

TestFunction TestFunction::parse(const std::string& literal, const NumericsConfig& cfg) {
    auto colon = literal.find(':');
    if (colon == std::string::npos) fail(Err::ParseError, "test function literal needs kind:args");
    std::string kind = literal.substr(0, colon);
    std::string rest = literal.substr(colon + 1);
    double vals[2] = {0.0, 0.0};
    const char* names_g[2] = {"mu", "s"};
    const char* names_b[2] = {"a", "b"};
    const char** names = kind == "gaussian" ? names_g : names_b;
    if (kind != "gaussian" && kind != "bump")
        fail(Err::ParseError, "unknown test function kind: " + kind);
    std::stringstream ss(rest);
    std::string item;
    int got = 0;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(Err::ParseError, "bad test function arg: " + item);
        std::string key = item.substr(0, eq);
        double v = std::strtod(item.substr(eq + 1).c_str(), nullptr);
        for (int i = 0; i < 2; ++i)
            if (key == names[i]) {
                vals[i] = v;
                ++got;
            }
    }
    if (got != 2) fail(Err::ParseError, "test function literal needs two named args");
    if (kind == "gaussian") return gaussian(vals[0], vals[1]);
    return bump(vals[0], vals[1], cfg.bump_order);
}

std::string TestFunction::to_literal() const {
    std::ostringstream os;
    if (kind_ == TestFunctionKind::Gaussian)
        os << "gaussian:mu=" << mu_ << ",s=" << s_;
    else
        os << "bump:a=" << a_ << ",b=" << b_;
    return os.str();
}

double PolynomialFunction::value(double t) const {
    double acc = 0.0;
    for (std::size_t j = c_.size(); j-- > 0;) acc = acc * t + c_[j];
    return acc;
}

double PolynomialFunction::derivative(int k, double t) const {
    if (k == 0) return value(t);
    double acc = 0.0, tp = 1.0;
    for (std::size_t j = (std::size_t)k; j < c_.size(); ++j) {
        double fall = 1.0;
        for (int i = 0; i < k; ++i) fall *= (double)(j - i);
        acc += c_[j] * fall * tp;
        tp *= t;
    }
    return acc;
}

}  // namespace pnlab
