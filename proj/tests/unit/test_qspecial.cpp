#include <cmath>

#include "doctest.h"
#include "qdisc/qspecial.hpp"

using namespace qdisc;

TEST_CASE("finite and infinite q-Pochhammer") {
    const double q = 0.4;
    const cplx t(0.3, 0.2);
    CHECK(std::abs(qpoch(t, q, 0) - 1.0) < 1e-15);
    CHECK(std::abs(qpoch(t, q, 3) - (1.0 - t) * (1.0 - t * q) * (1.0 - t * q * q)) < 1e-15);
    CHECK(std::abs(qpoch(t, q, -1) - 1.0 / (1.0 - t / q)) < 1e-15);
    cplx p = 1.0;
    for (int i = 0; i < 200; ++i) p *= 1.0 - t * std::pow(q, i);
    CHECK(std::abs(qpoch_inf(t, q) - p) < 1e-14);
    // (a;q)_gamma at integer gamma is the finite product
    CHECK(std::abs(qpoch_gamma(t, q, 3.0) - qpoch(t, q, 3)) < 1e-14);
}

TEST_CASE("q-gamma") {
    const double q = 0.6;
    CHECK(std::abs(qgamma(1.0, q) - 1.0) < 1e-14);
    for (double x : {0.3, 1.7, 2.5}) {
        cplx lhs = qgamma(x + 1.0, q), rhs = (1.0 - std::pow(q, x)) / (1.0 - q) * qgamma(x, q);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
    }
    CHECK_THROWS_AS(qgamma(0.0, q), PoleError);
    CHECK(std::abs(c_function(0.0, q) - 1.0) < 1e-14);
}

TEST_CASE("Gaussian binomial") {
    const double q = 0.3;
    CHECK(gauss_binomial(4, 2, q) == doctest::Approx((1 + q * q) * (1 + q + q * q)).epsilon(1e-14));
    CHECK(gauss_binomial(5, 0, q) == doctest::Approx(1.0));
    CHECK(gauss_binomial(3, 5, q) == doctest::Approx(0.0));
}

TEST_CASE("basic hypergeometric series") {
    const double q = 0.5;
    // q-binomial theorem
    for (double a : {0.2, -0.7})
        for (double z : {0.3, -0.5}) {
            cplx v = basic_hyper({a}, {}, q, z);
            CHECK(std::abs(v - qpoch_inf(a * z, q) / qpoch_inf(z, q)) < 1e-13);
        }
    // q-Chu-Vandermonde
    for (int n = 0; n <= 6; ++n) {
        double b = 0.3, c = 0.8;
        cplx v = basic_hyper({std::pow(q, -n), b}, {c}, q, c * std::pow(q, n) / b);
        CHECK(std::abs(v - qpoch(c / b, q, n) / qpoch(c, q, n)) < 1e-11);
    }
    HyperResult r = basic_hyper_ex({std::pow(q, -3), 0.2}, {0.7}, q, 0.4);
    CHECK(r.terminated);
    CHECK(r.terms <= 4);
    // 2phi0 has zero radius of convergence
    CHECK_THROWS_AS(basic_hyper({0.3, 0.4}, {}, q, 5.0), DivergenceError);
}

TEST_CASE("Jackson integral") {
    const double q = 0.5;
    cplx v = jackson_integral([](double t) { return cplx(t); }, q);
    CHECK(std::abs(v - 1.0 / (1.0 + q)) < 1e-14);
    cplx w = jackson_integral([](double) { return cplx(1.0); }, q);
    CHECK(std::abs(w - 1.0) < 1e-14);
}
