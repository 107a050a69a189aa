#include <doctest.h>

#include <cmath>
#include <random>

#include "pnlab/series.hpp"
#include "pnlab/test_function.hpp"

using namespace pnlab;

namespace {
FiniteDirichletSeries one_minus_exp() { return FiniteDirichletSeries({1.0}, {cplx(-1.0, 0.0)}); }
}  // namespace

TEST_CASE("eval matches direct substitution") {
    auto f = one_minus_exp();
    CHECK(std::abs(f.eval(cplx(0.0, 0.0))) < 1e-15);
    CHECK(std::abs(f.eval(cplx(std::log(2.0), 0.0)) - 0.5) < 1e-15);
    FiniteDirichletSeries g({1.0}, {cplx(2.0, 0.0)});
    CHECK(std::abs(g.eval(cplx(0.0, 0.0)) - 3.0) < 1e-15);
}

TEST_CASE("log derivative and its zero guard") {
    auto f = one_minus_exp();
    cplx expected = std::exp(-1.0) / (1.0 - std::exp(-1.0));
    CHECK(std::abs(log_derivative(f, cplx(1.0, 0.0)) - expected) < 1e-14);
    CHECK_THROWS_AS(log_derivative(f, cplx(0.0, 0.0)), Error);
    // f -> 1 for large Re s, so f'/f -> 0
    CHECK(std::abs(log_derivative(f, cplx(40.0, 0.0))) < 1e-15);
}

TEST_CASE("zero strip closed forms") {
    auto f = one_minus_exp();
    StripBound b = zero_strip(f);
    CHECK(std::fabs(b.sigma_plus) < 1e-12);
    CHECK(std::fabs(b.sigma_minus) < 1e-12);
    FiniteDirichletSeries g({1.0}, {cplx(4.0, 0.0)});
    CHECK(std::fabs(zero_strip(g).sigma_plus - std::log(4.0)) < 1e-12);
}

TEST_CASE("conjugation symmetry for real coefficients") {
    FiniteDirichletSeries f({0.7, 1.3, 2.9}, {cplx(0.4, 0.0), cplx(-1.1, 0.0), cplx(0.6, 0.0)});
    std::mt19937_64 rng(default_config().seed);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        cplx s(U(rng), U(rng));
        CHECK(std::abs(f.eval(std::conj(s)) - std::conj(f.eval(s))) < 1e-13);
    }
}

TEST_CASE("uniform limit 1 as Re s grows") {
    FiniteDirichletSeries f({0.5, 1.0}, {cplx(2.0, 1.0), cplx(0.0, -3.0)});
    for (double t : {-20.0, 0.0, 13.0}) {
        double sigma = 30.0;
        double bound = std::abs(cplx(2.0, 1.0)) * std::exp(-0.5 * sigma) +
                       std::abs(cplx(0.0, -3.0)) * std::exp(-sigma);
        CHECK(std::abs(f.eval(cplx(sigma, t)) - 1.0) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("series JSON round trip") {
    FiniteDirichletSeries f({0.5, 1.7}, {cplx(0.25, -1.0), cplx(2.0, 0.125)});
    auto g = FiniteDirichletSeries::from_json_text(f.to_json_text());
    REQUIRE(g.terms() == f.terms());
    for (std::size_t n = 0; n < f.terms(); ++n) {
        CHECK(g.lambdas()[n] == f.lambdas()[n]);
        CHECK(g.coeffs()[n] == f.coeffs()[n]);
    }
    CHECK_THROWS_AS(FiniteDirichletSeries::from_json_text("{"), Error);
    CHECK_THROWS_AS(FiniteDirichletSeries({2.0, 1.0}, {cplx(1.0, 0), cplx(1.0, 0)}), Error);
}

TEST_CASE("test function derivative oracle vs finite differences") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0.6, 3.4);
    TestFunction funcs[2] = {TestFunction::gaussian(1.5, 0.8), TestFunction::bump(0.5, 4.0, 8)};
    for (const TestFunction& f : funcs) {
        for (int k = 1; k <= 4; ++k) {
            for (int trial = 0; trial < 40; ++trial) {
                double t = U(rng);
                double h = 1e-4;
                auto g = [&](double x) { return f.derivative(k - 1, x); };
                double fd =
                    (g(t - 2 * h) - 8.0 * g(t - h) + 8.0 * g(t + h) - g(t + 2 * h)) / (12.0 * h);
                double ex = f.derivative(k, t);
                double scale = std::max({1.0, std::fabs(ex), std::fabs(g(t))});
                CHECK(std::fabs(fd - ex) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("gaussian transform at 0 equals the integral") {
    TestFunction phi = TestFunction::gaussian(2.0, 0.7);
    double quad = integrate<double>([&](double t) { return phi.value(t); }, -12.0, 16.0, 1e-12);
    CHECK(std::fabs(phi.transform(cplx(0.0, 0.0)).real() - quad) < 1e-10);
    CHECK(std::fabs(phi.transform(cplx(0.0, 0.0)).imag()) < 1e-14);
}

TEST_CASE("test function literals parse") {
    TestFunction g = TestFunction::parse("gaussian:mu=0.6931,s=0.05");
    CHECK(g.kind() == TestFunctionKind::Gaussian);
    CHECK(g.mu() == doctest::Approx(0.6931));
    TestFunction b = TestFunction::parse("bump:a=0.5,b=4");
    CHECK(b.compact_positive_support());
    CHECK(b.value(0.4999) == 0.0);
    CHECK(b.value(2.25) == doctest::Approx(1.0));
    CHECK_THROWS_AS(TestFunction::parse("box:a=1,b=2"), Error);
}
