#include <cmath>

#include "doctest.h"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"
#include "qdisc/qspecial.hpp"
#include "qdisc/rep.hpp"

using namespace qdisc;

namespace {
QContext ctx(int n = 32, int m = 8) {
    QContext c;
    c.q = 0.5;
    c.radial_levels = n;
    c.angular_cutoff = m;
    return c;
}
}  // namespace

TEST_CASE("context validation") {
    QContext c = ctx();
    c.q = 1.2;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = ctx();
    c.radial_levels = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("polar decomposition") {
    QContext c = ctx();
    NormalPoly f = parse_expr("z y + 2 z*^2 - y^2", c.q);
    PolarFunction p = to_polar(f, c);
    CHECK(p.exact());
    CHECK(max_abs_diff(from_polar(p), f) < 1e-13);
    for (int n = 0; n < c.radial_levels; ++n) {
        double y = c.y(n);
        CHECK(std::abs(p.sample(1, n) - y) < 1e-15);
        CHECK(std::abs(p.sample(0, n) + y * y) < 1e-15);
        CHECK(std::abs(p.sample(-2, n) - 2.0) < 1e-15);
    }
    CHECK_THROWS_AS(from_polar(PolarFunction::indicator(c, 0, 3)), NotPolynomial);
    CHECK_THROWS_AS(PolarFunction::indicator(c, c.angular_cutoff + 1, 0), AngularOverflow);
}

TEST_CASE("radial helpers") {
    const double q = 0.5;
    RadialPoly p = radial_pochhammer(3, q);
    for (double y : {0.1, 0.7}) {
        cplx direct = 1.0;
        for (int i = 0; i < 3; ++i) direct *= 1.0 - y * std::pow(q, -2.0 * i);
        CHECK(std::abs(eval_radial(p, y) - direct) < 1e-13);
    }
}

TEST_CASE("representation matrices") {
    QContext c = ctx(24, 8);
    auto S = shift_matrix(24), D = down_shift_matrix(24, c.q);
    CHECK((t_matrix(NormalPoly::z(c.q), c).entries - S).norm() == 0.0);
    CHECK((t_matrix(NormalPoly::zstar(c.q), c).entries - D).norm() < 1e-15);
    NormalPoly f = parse_expr("z^2 z* + 0.5 z*", c.q), g = parse_expr("z* z - 3 z", c.q);
    Eigen::MatrixXcd tf = t_matrix(f, c).entries, tg = t_matrix(g, c).entries, tfg = t_matrix(f * g, c).entries;
    CHECK((tfg - tf * tg).topLeftCorner(18, 18).cwiseAbs().maxCoeff() < 1e-13);
    PolarFunction p = to_polar(f, c);
    // entries of mode m sit in rows/columns up to level + |m|, so the top |m| levels fall outside the truncation
    PolarFunction back = from_t_matrix(t_matrix(p), c);
    for (int m : p.modes())
        for (int n = 0; n + std::abs(m) < c.radial_levels; ++n) CHECK(std::abs(back.sample(m, n) - p.sample(m, n)) < 1e-14);
    PolarFunction a = PolarFunction::indicator(c, 1, 2, 2.0), b = PolarFunction::indicator(c, -1, 2, 3.0);
    CHECK(std::abs(trace_pairing(a, b) - (t_matrix(a).entries * t_matrix(b).entries).trace()) < 1e-13);
}

TEST_CASE("Fock and weighted Bergman norms") {
    QContext c = ctx();
    const double q = c.q;
    Eigen::VectorXd n2 = fock_norms_squared(8, q);
    for (int j = 0; j < 8; ++j) {
        CHECK(n2(j) == doctest::Approx(qpoch(q * q, q * q, j).real()).epsilon(1e-14));
        CHECK(std::abs(fock_inner(j, j, c) - n2(j)) < 1e-14);
        if (j) CHECK(std::abs(fock_inner(j, j - 1, c)) == 0.0);
    }
    for (double alpha : {1.0, 2.5}) {
        for (int m = 0; m < 6; ++m) {
            double expect = qpoch(q * q, q * q, m).real() / qpoch(std::pow(q, 4 * alpha + 2), q * q, m).real();
            CHECK(bargmann_norm(alpha, m, q) * bargmann_norm(alpha, m, q) == doctest::Approx(expect).epsilon(1e-13));
        }
        BargmannOps ops = bargmann_ops(alpha, c);
        CHECK(ops.relation_residual(c.radial_levels - 4) < 1e-12);
        // the orthonormal form of z* is the adjoint of the orthonormal form of z
        Eigen::MatrixXcd zo = to_orthonormal(ops.zhat, ops), zso = to_orthonormal(ops.zhat_star, ops);
        CHECK((zo.adjoint() - zso).topLeftCorner(20, 20).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((quantize(NormalPoly::z(q), ops) - ops.zhat).norm() == 0.0);
    }
}

TEST_CASE("coordinate maps compose") {
    CoordinateMaps m = coordinate_maps(5, 0.5);
    CHECK(m.l_from_a.rows() == 25);
    CHECK((m.psi_from_l * m.l_from_a - m.psi_from_a).cwiseAbs().maxCoeff() < 1e-13);
    // l_from_a is unitriangular in a suitable order, hence invertible
    CHECK(std::abs(m.l_from_a.determinant()) > 1e-12);
}
