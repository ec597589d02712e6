#include "noma/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "data/bessel_k_golden.inc"

using noma::specfun::bessel_k;
using noma::specfun::binomial;
using noma::specfun::chebyshev_rule;
using noma::specfun::gamma_int;

TEST_CASE("bessel_k matches the high-precision golden table to 1e-10") {
    double worst = 0.0;
    for (const BesselGolden& g : kBesselGolden) {
        const double got = bessel_k(g.v, g.z);
        REQUIRE(std::isfinite(got));
        REQUIRE(got > 0.0);
        const double rel = std::abs(got - g.kv) / g.kv;
        worst = std::max(worst, rel);
        CAPTURE(g.v);
        CAPTURE(g.z);
        CHECK(rel <= 1e-10);
    }
    MESSAGE("worst relative error vs golden: ", worst);
    CHECK(worst <= 1e-10);
}

TEST_CASE("bessel_k satisfies the three-term recurrence to 1e-9") {
    // K_{v+1}(z) = K_{v-1}(z) + (2v/z) K_v(z)
    const double zs[] = {1e-6, 1e-3, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 5.0, 20.0, 100.0, 600.0};
    for (double z : zs) {
        for (int v = 1; v <= 5; ++v) {
            const double lhs = bessel_k(v + 1, z);
            const double rhs = bessel_k(v - 1, z) + (2.0 * v / z) * bessel_k(v, z);
            CAPTURE(z);
            CAPTURE(v);
            CHECK(std::abs(lhs - rhs) / lhs <= 1e-9);
        }
    }
}

TEST_CASE("bessel_k limit behaviour") {
    // strictly decreasing in z for fixed order
    CHECK(bessel_k(0, 1.0) > bessel_k(0, 2.0));
    CHECK(bessel_k(3, 0.5) > bessel_k(3, 0.6));
    // increasing in order for fixed z
    CHECK(bessel_k(1, 2.5) > bessel_k(0, 2.5));
    CHECK(bessel_k(6, 2.5) > bessel_k(5, 2.5));
    // small-z asymptotics: K_0 ~ -ln(z/2) - gamma_E, K_v ~ (Gamma(v)/2)(2/z)^v
    const double z = 1e-10;
    CHECK(bessel_k(0, z) == doctest::Approx(-std::log(z / 2) - 0.57721566490153286).epsilon(1e-12));
    CHECK(bessel_k(2, z) == doctest::Approx(0.5 * gamma_int(2) * std::pow(2 / z, 2)).epsilon(1e-9));
    // true value below the normal range underflows to exactly 0
    CHECK(bessel_k(0, 1500.0) == 0.0);
    CHECK(bessel_k(6, 2000.0) == 0.0);
    // still normal just before the horizon
    CHECK(bessel_k(0, 700.0) > 0.0);
}

TEST_CASE("bessel_k rejects bad arguments") {
    CHECK_THROWS_AS(bessel_k(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(0, -2.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(2, std::nan("")), std::domain_error);
}

TEST_CASE("gamma_int and binomial are exact") {
    CHECK(gamma_int(1) == 1.0);
    CHECK(gamma_int(2) == 1.0);
    CHECK(gamma_int(5) == 24.0);
    CHECK(gamma_int(13) == 479001600.0);
    CHECK_THROWS_AS(gamma_int(0), std::domain_error);

    CHECK(binomial(0, 0) == 1.0);
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(10, 5) == 252.0);
    CHECK(binomial(49, 24) == 63205303218876.0);
    CHECK(binomial(7, 0) == 1.0);
    CHECK(binomial(7, 7) == 1.0);
    for (int n = 0; n <= 12; ++n)
        for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == binomial(n, n - k));
    CHECK_THROWS_AS(binomial(5, 6), std::domain_error);
    CHECK_THROWS_AS(binomial(-1, 0), std::domain_error);
    CHECK_THROWS_AS(binomial(61, 2), std::domain_error);
}

TEST_CASE("chebyshev_rule reproduces its defining node/weight formulas") {
    const auto rule = chebyshev_rule(5);
    REQUIRE(rule.order == 5);
    REQUIRE(rule.nodes.size() == 5);
    REQUIRE(rule.weights.size() == 5);
    const double pi = std::numbers::pi;
    for (int j = 1; j <= 5; ++j) {
        const double theta = (2.0 * j - 1.0) * pi / 10.0;
        CHECK(rule.nodes[j - 1] == doctest::Approx(std::cos(theta)).epsilon(1e-15));
        CHECK(rule.weights[j - 1] == doctest::Approx(pi / 5 * std::abs(std::sin(theta))).epsilon(1e-15));
        CHECK(rule.weights[j - 1] > 0.0);
    }
    // nodes strictly decreasing in (-1, 1)
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] < rule.nodes[i - 1]);
    CHECK(rule.nodes.front() < 1.0);
    CHECK(rule.nodes.back() > -1.0);
    CHECK_THROWS_AS(chebyshev_rule(0), std::domain_error);
}

TEST_CASE("chebyshev_rule weight sum follows its closed form (not pi, not 2)") {
    // sum_j w_j = (pi/J) / sin(pi/(2J)): approaches 2 from above as J grows.
    const double pi = std::numbers::pi;
    for (int J : {1, 2, 5, 30, 100}) {
        const auto rule = chebyshev_rule(J);
        double sum = 0.0;
        for (double w : rule.weights) sum += w;
        const double expect = (pi / J) / std::sin(pi / (2.0 * J));
        CHECK(sum == doctest::Approx(expect).epsilon(1e-13));
        CHECK(sum > 2.0);
    }
    const auto r5 = chebyshev_rule(5);
    double s5 = 0.0;
    for (double w : r5.weights) s5 += w;
    CHECK(s5 == doctest::Approx(2.0332814769261041).epsilon(1e-14));
}

TEST_CASE("chebyshev_rule integrates smooth functions with O(J^-2) bias") {
    // integral_0^1 rho drho via the [0,b] mapping; exact value 1/2. The rule
    // carries the documented constant-integrand excess, so expect ~2e-4 at
    // J=30 rather than machine precision.
    const auto rule = chebyshev_rule(30);
    double acc = 0.0;
    for (int j = 0; j < 30; ++j) {
        const double rho = 0.5 * (1.0 + rule.nodes[j]);
        acc += rule.weights[j] * rho;
    }
    acc *= 0.5;
    CHECK(acc == doctest::Approx(0.50022853615949059).epsilon(1e-13));
    CHECK(std::abs(acc - 0.5) < 1e-3);
    // error shrinks roughly 4x per J doubling
    auto quad = [](int J) {
        const auto r = chebyshev_rule(J);
        double a = 0.0;
        for (int j = 0; j < J; ++j) a += r.weights[j] * 0.5 * (1.0 + r.nodes[j]);
        return 0.5 * a;
    };
    const double e30 = std::abs(quad(30) - 0.5);
    const double e60 = std::abs(quad(60) - 0.5);
    const double e120 = std::abs(quad(120) - 0.5);
    CHECK(e60 < e30);
    CHECK(e120 < e60);
    CHECK(e30 / e60 == doctest::Approx(4.0).epsilon(0.1));
}
