#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pnlab/numerics.hpp"

namespace pnlab {

// Minimal interface for the summation/pairing kernels: real-valued smooth
// function on [0, inf) (or R) with derivatives up to max_order.
class SmoothFunction {
  public:
    virtual ~SmoothFunction() = default;
    virtual double value(double t) const = 0;
    virtual double derivative(int k, double t) const = 0;
    virtual int max_order() const = 0;
};

enum class TestFunctionKind { Gaussian, Bump };

// Test functions paired against distributions: a gaussian exp(-(t-mu)^2/2s^2)
// (entire, closed-form Fourier transform) or a polynomial bump
// ((t-a)(b-t))^q / ((b-a)^2/4)^q supported on [a,b] in R_+^*.
class TestFunction : public SmoothFunction {
  public:
    static TestFunction gaussian(double mu, double s);
    static TestFunction bump(double a, double b, int order);
    // "gaussian:mu=<f>,s=<f>" or "bump:a=<f>,b=<f>"
    static TestFunction parse(const std::string& literal, const NumericsConfig& cfg = default_config());

    TestFunctionKind kind() const { return kind_; }
    double value(double t) const override;
    double derivative(int k, double t) const override;
    int max_order() const override { return max_order_; }

    cplx value_complex(cplx z) const;  // analytic continuation (gaussian only path used)
    bool compact_positive_support() const { return kind_ == TestFunctionKind::Bump; }
    double support_lo() const;
    double support_hi() const;  // +inf for gaussian: effective cutoff where value < 1e-18
    bool has_transform() const { return kind_ == TestFunctionKind::Gaussian; }
    // hat(phi)(x) = int phi(t) e^{-ixt} dt; gaussian closed form
    cplx transform(cplx x) const;
    double analyticity_width() const;  // +inf for gaussian

    double mu() const { return mu_; }
    double width() const { return s_; }
    double bump_a() const { return a_; }
    double bump_b() const { return b_; }
    int bump_order() const { return order_; }

    std::string to_literal() const;

  private:
    TestFunction() = default;
    TestFunctionKind kind_ = TestFunctionKind::Gaussian;
    double mu_ = 0.0, s_ = 1.0;            // gaussian
    double a_ = 0.0, b_ = 0.0;             // bump support
    int order_ = 0;
    int max_order_ = 0;
    std::vector<double> poly_;             // bump: coefficients of ((t-a)(b-t))^q / norm
};

// Adapters used by tests and by the e^{-st} analytic paths.
class PolynomialFunction : public SmoothFunction {
  public:
    explicit PolynomialFunction(std::vector<double> coeffs) : c_(std::move(coeffs)) {}
    double value(double t) const override;
    double derivative(int k, double t) const override;
    int max_order() const override { return 1000; }

  private:
    std::vector<double> c_;  // c_[j] t^j
};

class CallableFunction : public SmoothFunction {
  public:
    CallableFunction(std::function<double(int, double)> deriv, int max_order)
        : f_(std::move(deriv)), max_(max_order) {}
    double value(double t) const override { return f_(0, t); }
    double derivative(int k, double t) const override { return f_(k, t); }
    int max_order() const override { return max_; }

  private:
    std::function<double(int, double)> f_;
    int max_;
};

}  // namespace pnlab
