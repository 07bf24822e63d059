#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdisc/fourier.hpp"
#include "qdisc/ncpoly.hpp"

using namespace qdisc;

TEST_CASE("Gauss-Legendre rule") {
    Quadrature g = gauss_legendre(20, -1.0, 2.0);
    double w = 0, x5 = 0;
    for (int i = 0; i < 20; ++i) {
        w += g.weights[i];
        x5 += g.weights[i] * std::pow(g.nodes[i], 5);
        if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    }
    CHECK(w == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(x5 == doctest::Approx((64.0 - 1.0) / 6.0).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_legendre(0, 0, 1), InvalidArgument);
}

TEST_CASE("Plancherel density") {
    const double q = 0.5;
    CHECK(rho_max(q) == doctest::Approx(std::numbers::pi / (-2 * std::log(q))));
    for (int i = 1; i < 50; ++i) CHECK(plancherel_density(rho_max(q) * i / 50.0, q) > 0);
    CHECK(plancherel_density(0.0, q) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(plancherel_density(-0.1, q), InvalidArgument);
    CHECK_THROWS_AS(plancherel_density(rho_max(q) + 0.1, q), InvalidArgument);
}

TEST_CASE("Fourier transform round trip and Parseval") {
    QContext c;
    c.q = 0.5;
    c.radial_levels = 48;
    c.angular_cutoff = 4;
    PolarFunction u = to_polar(parse_expr("z y^2 + 0.5 y - y z*", c.q), c);
    PolarFunction v = to_polar(parse_expr("y^3 + z y", c.q), c);
    FourierImage fu = fourier_forward(u, 64), fv = fourier_forward(v, 64);
    CHECK(fu.node_count() == 64);
    CHECK(fourier_inverse(fu).max_abs_diff(u) < 1e-8);
    CHECK(std::abs(spectral_inner(fu, fv) - nu_inner(u, v)) < 1e-8);
    CHECK(std::abs(spectral_inner(fu, fu) - nu_inner(u, u)) < 1e-8);
}
