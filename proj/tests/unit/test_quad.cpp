#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdisc/forms.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"
#include "qdisc/quad.hpp"

using namespace qdisc;

namespace {
QContext ctx() {
    QContext c;
    c.q = 0.5;
    c.radial_levels = 64;
    c.angular_cutoff = 8;
    return c;
}
const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
}  // namespace

TEST_CASE("invariant integral") {
    QContext c = ctx();
    const double q = c.q;
    NormalPoly y = NormalPoly::y(q);
    CHECK(std::abs(mu(NormalPoly::constant(q, 1.0)) - 1.0) < 1e-15);
    for (int i = 1; i <= 4; ++i) {
        double expect = (1 - q * q) / (1 - std::pow(q, 2 * i + 2));
        CHECK(std::abs(mu(y.pow(i)) - expect) < 1e-14);
        CHECK(std::abs(mu(to_polar(y.pow(i), c)) - expect) < 1e-14);
    }
    // only mode 0 contributes
    CHECK(std::abs(mu(NormalPoly::z(q))) == 0.0);
}

TEST_CASE("nu and its weighted relatives") {
    QContext c = ctx();
    const double q = c.q;
    NormalPoly y = NormalPoly::y(q);
    for (int i = 2; i <= 4; ++i) {
        PolarFunction f = to_polar(y.pow(i), c);
        double expect = (1 - q * q) / (1 - std::pow(q, 2 * i - 2));
        SumResult r = nu(f);
        CHECK(std::abs(r.value - expect) < 1e-13);
        CHECK_FALSE(r.divergence_warning);
        CHECK(std::abs(nu_via_mu(f) - expect) < 1e-13);
    }
    CHECK(nu(to_polar(NormalPoly::constant(q, 1.0), c)).divergence_warning);
    for (double a : {1.0, 2.0}) {
        PolarFunction one = to_polar(NormalPoly::constant(q, 1.0), c);
        CHECK(std::abs(nu_alpha(one, a) - 1.0) < 1e-13);
        PolarFunction f = to_polar(y * cplx(3.0), c);
        CHECK(std::abs(nu_alpha(f, a) - nu_alpha_trace(f, a)) < 1e-12);
    }
}

TEST_CASE("weighted inner products") {
    QContext c = ctx();
    PolarFunction f = to_polar(parse_expr("z y^2", c.q), c);
    SumResult r = weighted_inner(f, f, 2.0, FormGrade::Function);
    CHECK(r.value.real() > 0);
    CHECK(std::abs(r.value.imag()) < 1e-15);
    // lambda = 2, grade Function is the mu pairing of f* f
    std::vector<cplx> d = adjoint_product_mode0(f, f);
    PolarFunction g(c);
    g.set_mode(0, d);
    CHECK(std::abs(r.value - mu(g)) < 1e-14);
}

TEST_CASE("Stokes formula") {
    const double q = 0.5;
    StokesResult s = stokes_check(DiffForm::left_dz(NormalPoly::zstar(q)));
    CHECK(std::abs(s.interior - two_pi_i) < 1e-13);
    CHECK(std::abs(s.boundary - two_pi_i) < 1e-13);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            StokesResult r = stokes_check(DiffForm::left_dz(NormalPoly::monomial(q, a, b)));
            CHECK(r.residual < 1e-12);
            CHECK(std::abs(r.boundary - (a + 1 == b ? two_pi_i : cplx(0))) < 1e-13);
        }
    CHECK(std::abs(form_integral_11(DiffForm::top(NormalPoly::constant(q, 1.0))) + two_pi_i) < 1e-13);
    QContext c = ctx();
    StokesResult fin = stokes_check(PolarFunction::indicator(c, -1, 2, 1.5));
    CHECK(std::abs(fin.interior) < 1e-13);
    CHECK(std::abs(fin.boundary) == 0.0);
}
