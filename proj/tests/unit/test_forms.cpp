#include <random>

#include "doctest.h"
#include "qdisc/forms.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"

using namespace qdisc;

namespace {
const double q = 0.5;
NormalPoly rnd(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    NormalPoly f(q);
    for (int i = 0; i < 4; ++i) f.add_term(int(rng() % 4), int(rng() % 4), {u(rng), u(rng)});
    return f;
}
}  // namespace

TEST_CASE("commutation of differentials with functions") {
    NormalPoly z = NormalPoly::z(q), zs = NormalPoly::zstar(q);
    CHECK(max_abs_diff(sigma(z), z * cplx(q * q)) == 0.0);
    CHECK(max_abs_diff(sigma(zs), zs * cplx(1 / (q * q))) < 1e-15);
    CHECK(max_abs_diff(sigma(z * zs), z * zs) == 0.0);
    DiffForm lhs = DiffForm::dz(q) * DiffForm::function(z);
    DiffForm rhs = DiffForm::function(sigma(z)) * DiffForm::dz(q);
    CHECK(max_abs_diff(lhs, rhs) < 1e-15);
    // dz^2 = dz*^2 = 0
    CHECK((DiffForm::dz(q) * DiffForm::dz(q)).is_zero());
    CHECK((DiffForm::dzstar(q) * DiffForm::dzstar(q)).is_zero());
}

TEST_CASE("exterior derivative") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        NormalPoly f = rnd(rng), g = rnd(rng);
        DiffForm df = exterior_d(DiffForm::function(f));
        CHECK(exterior_d(df).max_abs() < 1e-10);
        CHECK(max_abs_diff(df, exterior_d_leibniz(f)) < 1e-11);
        DiffForm lhs = exterior_d(DiffForm::function(f * g));
        DiffForm rhs = df * DiffForm::function(g) + DiffForm::function(f) * exterior_d(DiffForm::function(g));
        CHECK(max_abs_diff(lhs, rhs) < 1e-10);
        DSplit s = split_d(DiffForm::function(f));
        CHECK(max_abs_diff(s.del + s.delbar, df) < 1e-12);
    }
}

TEST_CASE("partial derivatives") {
    PartialDerivatives p = partial_derivatives(NormalPoly::zstar(q));
    CHECK(max_abs_diff(p.dzstar_right, NormalPoly::constant(q, 1.0)) < 1e-15);
    CHECK(p.dz_left.is_zero());
    PartialDerivatives pz = partial_derivatives(NormalPoly::z(q));
    CHECK(max_abs_diff(pz.dz_left, NormalPoly::constant(q, 1.0)) < 1e-15);
    CHECK(pz.dzstar_right.is_zero());
}

TEST_CASE("radial dbar and its lattice version") {
    // p(y) = y: r = (y - q^2 y)/(y - q^2 y) = 1
    RadialPoly r = radial_dbar(RadialPoly{0.0, 1.0}, q);
    CHECK(std::abs(eval_radial(r, 0.3) - 1.0) < 1e-14);
    QContext c;
    c.radial_levels = 32;
    c.angular_cutoff = 8;
    NormalPoly f = parse_expr("z^2 y^2 + z* y - 3 y^3", q);
    PolarFunction lat = dbar_coefficient(to_polar(f, c));
    PolarFunction sym = to_polar(partial_derivatives(f).dzstar_right, c);
    CHECK(lat.max_abs_diff(sym) < 1e-10);
}

TEST_CASE("twisted sections") {
    TwistedSection s = twisted_from_left(NormalPoly::z(q), 2.0);
    CHECK(s.grade == 0);
    TwistedSection d = dbar_twisted(s);
    CHECK(d.grade == 1);
    CHECK_THROWS(dbar_twisted(d));
}
