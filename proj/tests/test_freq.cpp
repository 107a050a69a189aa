#include <doctest.h>

#include <cmath>
#include <random>

#include "pnlab/freq.hpp"
#include "pnlab/zeros.hpp"

using namespace pnlab;

TEST_CASE("single frequency enumeration") {
    auto terms = enumerate_frequencies({1.0}, 3.0);
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].value == doctest::Approx(1.0));
    CHECK(terms[1].value == doctest::Approx(2.0));
    CHECK(terms[2].value == doctest::Approx(3.0));
}

TEST_CASE("two-frequency enumeration log2,log3 up to log9") {
    auto terms = enumerate_frequencies({std::log(2.0), std::log(3.0)}, std::log(9.0));
    REQUIRE(terms.size() == 6);
    double expected[6] = {std::log(2.0), std::log(3.0), std::log(4.0),
                          std::log(6.0), std::log(8.0), std::log(9.0)};
    for (int i = 0; i < 6; ++i) CHECK(terms[i].value == doctest::Approx(expected[i]));
}

TEST_CASE("enumeration respects the bound") {
    auto terms = enumerate_frequencies({1.0, 1.5}, 1.4);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].value == doctest::Approx(1.0));
    CHECK(multi_index_norm(terms[0].k) == 1);
}

TEST_CASE("enumeration completeness vs double loop for (1, sqrt 2)") {
    const double l2 = std::sqrt(2.0);
    auto terms = enumerate_frequencies({1.0, l2}, 6.0);
    int count = 0;
    for (int k1 = 0; k1 <= 6; ++k1)
        for (int k2 = 0; k2 <= 5; ++k2) {
            if (k1 + k2 == 0) continue;
            if (k1 + l2 * k2 <= 6.0) ++count;
        }
    CHECK((int)terms.size() == count);
    for (const auto& t : terms) CHECK(t.value <= 6.0 + 1e-12);
}

TEST_CASE("b coefficients closed forms") {
    // f = 1 - e^{-lambda s}: b_(m) = 1/m
    std::vector<cplx> a{cplx(-1.0, 0.0)};
    for (int m = 1; m <= 7; ++m) {
        MultiIndex k{{0, m}};
        CHECK(std::abs(b_coefficient(a, k) - cplx(1.0 / m, 0.0)) < 1e-15);
    }
    // ||k|| = 1 at slot j gives -a_j
    std::vector<cplx> a2{cplx(0.3, 0.7), cplx(-1.2, 0.1)};
    CHECK(std::abs(b_coefficient(a2, {{1, 1}}) + a2[1]) < 1e-15);
    // two-frequency binomial form
    int k1 = 3, k2 = 2;
    cplx direct = std::pow(-1.0, k1 + k2) / double(k1 + k2) * 10.0 /* C(5,3) */ *
                  std::pow(a2[0], k1) * std::pow(a2[1], k2);
    CHECK(std::abs(b_coefficient(a2, {{0, k1}, {1, k2}}) - direct) < 1e-14);
}

TEST_CASE("log-space path agrees with the direct product") {
    std::vector<cplx> a{cplx(0.9, 0.2), cplx(-0.5, 0.4)};
    MultiIndex k{{0, 20}, {1, 15}};  // ||k|| = 35 > 30 switches to log space
    cplx big = b_coefficient(a, k);
    // reference through long double style accumulation at ||k|| = 35 via lgamma
    double logmag = std::lgamma(36.0) - std::log(35.0) - std::lgamma(21.0) - std::lgamma(16.0) +
                    20.0 * std::log(std::abs(a[0])) + 15.0 * std::log(std::abs(a[1]));
    double phase = kPi * 35.0 + 20.0 * std::arg(a[0]) + 15.0 * std::arg(a[1]);
    cplx ref = std::exp(logmag) * cplx(std::cos(phase), std::sin(phase));
    CHECK(std::abs(big - ref) <= 1e-12 * std::abs(ref));
}

TEST_CASE("oracle equivalence on random series") {
    std::mt19937_64 rng(default_config().seed);
    std::uniform_real_distribution<double> Ulam(0.3, 1.2), Ua(-2.0, 2.0);
    std::uniform_int_distribution<int> Un(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        int N = Un(rng);
        std::vector<double> lam;
        double cur = 0.0;
        for (int n = 0; n < N; ++n) {
            cur += Ulam(rng);
            lam.push_back(cur);
        }
        std::vector<cplx> a;
        for (int n = 0; n < N; ++n) a.emplace_back(Ua(rng), Ua(rng));
        if (std::abs(a.back()) < 0.1) a.back() += cplx(0.5, 0.0);
        FiniteDirichletSeries f(lam, a);
        auto oracle = log_expansion_oracle(f, 5.0);
        auto agg = aggregate_terms(expansion_terms(f, 5.0), 1e-9);
        REQUIRE(oracle.size() == agg.size());
        auto it1 = oracle.begin();
        auto it2 = agg.begin();
        for (; it1 != oracle.end(); ++it1, ++it2) {
            CHECK(std::fabs(it1->first - it2->first) < 1e-9);
            double scale = std::max(1.0, std::abs(it1->second));
            CHECK(std::abs(it1->second - it2->second) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("oracle matches closed forms for simple series") {
    FiniteDirichletSeries f({1.0}, {cplx(-1.0, 0.0)});
    auto m = log_expansion_oracle(f, 3.0);
    REQUIRE(m.size() == 3);
    auto it = m.begin();
    CHECK(std::abs(it->second - cplx(1.0, 0.0)) < 1e-14);
    ++it;
    CHECK(std::abs(it->second - cplx(0.5, 0.0)) < 1e-14);
    ++it;
    CHECK(std::abs(it->second - cplx(1.0 / 3.0, 0.0)) < 1e-14);

    cplx aa(0.7, -0.3);
    FiniteDirichletSeries g({1.0}, {aa});
    auto mg = log_expansion_oracle(g, 2.0);
    auto jt = mg.begin();
    CHECK(std::abs(jt->second + aa) < 1e-14);
    ++jt;
    CHECK(std::abs(jt->second - 0.5 * aa * aa) < 1e-14);
}

TEST_CASE("newton sums: closed cases") {
    // roots {1, 2}: z^2 - 3z + 2
    auto s = newton_sums({cplx(-3.0, 0.0), cplx(2.0, 0.0)}, 4);
    CHECK(std::abs(s[0] - cplx(3.0, 0.0)) < 1e-12);
    CHECK(std::abs(s[1] - cplx(5.0, 0.0)) < 1e-12);
    CHECK(std::abs(s[2] - cplx(9.0, 0.0)) < 1e-12);
    CHECK(std::abs(s[3] - cplx(17.0, 0.0)) < 1e-12);
    // P = z^3: all power sums vanish
    auto z = newton_sums({cplx(0, 0), cplx(0, 0), cplx(0, 0)}, 6);
    for (const auto& v : z) CHECK(std::abs(v) < 1e-15);
    // z^3 - 1: S_3 = S_6 = 3, others 0
    auto c = newton_sums({cplx(0, 0), cplx(0, 0), cplx(-1.0, 0.0)}, 6);
    CHECK(std::abs(c[2] - cplx(3.0, 0.0)) < 1e-12);
    CHECK(std::abs(c[5] - cplx(3.0, 0.0)) < 1e-12);
    CHECK(std::abs(c[0]) < 1e-12);
    CHECK(std::abs(c[3]) < 1e-12);
}

TEST_CASE("newton brute force on random polynomials") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    std::uniform_int_distribution<int> Udeg(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        int deg = Udeg(rng);
        std::vector<cplx> a;
        for (int i = 0; i < deg; ++i) a.emplace_back(U(rng), U(rng));
        std::vector<cplx> ascending(a.rbegin(), a.rend());
        ascending.push_back(cplx(1.0, 0.0));
        auto roots = poly_roots(ascending);
        auto sums = newton_sums(a, 12);
        for (int m = 1; m <= 12; ++m) {
            KahanSum<cplx> direct;
            for (cplx r : roots) direct.add(std::pow(r, m));
            double scale = std::max(1.0, std::abs(direct.value()));
            CHECK(std::abs(direct.value() - sums[m - 1]) / scale < 1e-9);
        }
    }
}

TEST_CASE("enumeration budget cap") {
    NumericsConfig cfg;
    cfg.enum_cap = 10;
    CHECK_THROWS_AS(enumerate_frequencies({0.01}, 10.0, cfg), Error);
}
