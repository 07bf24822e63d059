#include <random>

#include "doctest.h"
#include "qdisc/ncpoly.hpp"

using namespace qdisc;

namespace {
const double q = 0.5;
NormalPoly Z() { return NormalPoly::z(q); }
NormalPoly ZS() { return NormalPoly::zstar(q); }
}  // namespace

TEST_CASE("commutation relation") {
    NormalPoly lhs = ZS() * Z();
    NormalPoly rhs = NormalPoly::monomial(q, 1, 1, q * q) + NormalPoly::constant(q, 1 - q * q);
    CHECK(max_abs_diff(lhs, rhs) < 1e-15);
    std::vector<double> e = reorder_coefficients(1, 1, q);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == doctest::Approx(q * q));
    CHECK(e[1] == doctest::Approx(1 - q * q));
}

TEST_CASE("product is associative and the involution reverses order") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    auto rnd = [&] {
        NormalPoly f(q);
        for (int i = 0; i < 4; ++i) f.add_term(int(rng() % 3), int(rng() % 3), {u(rng), u(rng)});
        return f;
    };
    for (int i = 0; i < 20; ++i) {
        NormalPoly a = rnd(), b = rnd(), c = rnd();
        CHECK(max_abs_diff((a * b) * c, a * (b * c)) < 1e-12);
        CHECK(max_abs_diff(involution(a * b), involution(b) * involution(a)) < 1e-12);
        CHECK(max_abs_diff(involution(involution(a)), a) == 0.0);
    }
    CHECK(max_abs_diff(involution(Z() * cplx(0, 1)), ZS() * cplx(0, -1)) == 0.0);
}

TEST_CASE("y and powers") {
    NormalPoly y = NormalPoly::y(q);
    CHECK(max_abs_diff(y, NormalPoly::constant(q, 1.0) - Z() * ZS()) == 0.0);
    CHECK(max_abs_diff(y.pow(3), y * y * y) < 1e-14);
    // z y = q^{-2} y z
    CHECK(max_abs_diff(Z() * y, (y * Z()) * cplx(1 / (q * q))) < 1e-14);
    CHECK(y.degree() == 2);
}

TEST_CASE("parser") {
    CHECK(max_abs_diff(parse_expr("z* z", q), ZS() * Z()) == 0.0);
    CHECK(max_abs_diff(parse_expr("y", q), NormalPoly::y(q)) == 0.0);
    CHECK(max_abs_diff(parse_expr("(z + 2i)^2", q), (Z() + NormalPoly::constant(q, {0, 2})).pow(2)) < 1e-15);
    CHECK(max_abs_diff(parse_expr("2*z z* - 0.5", q), Z() * ZS() * cplx(2) - NormalPoly::constant(q, 0.5)) < 1e-15);
    CHECK(max_abs_diff(parse_expr("-(z)", q), -Z()) == 0.0);
    try {
        parse_expr("z + * z", q);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_expr("(z", q), SyntaxError);
    CHECK_THROWS_AS(parse_expr("z^40", q), DegreeOverflow);
    NormalPoly f = parse_expr("3 z^2 z* - 0.25 z* + 1", q);
    CHECK(max_abs_diff(parse_expr(f.to_string(), q), f) < 1e-12);
}

TEST_CASE("boundary restriction") {
    BoundaryPoly b = boundary_restrict(parse_expr("z^2 z* + 3 z*^2", q));
    CHECK(b.size() == 2);
    CHECK(std::abs(b[1] - 1.0) < 1e-15);
    CHECK(std::abs(b[-2] - 3.0) < 1e-15);
    // y vanishes on the circle
    CHECK(boundary_restrict(NormalPoly::y(q)).empty());
}

TEST_CASE("tensor braces product") {
    TensorPoly a = TensorPoly::pure(Z(), ZS()), b = TensorPoly::pure(ZS(), Z());
    TensorPoly ab = braces_multiply(a, b);
    // (A (x) B){.}(C (x) D) = (C A) (x) (B D)
    TensorPoly expect = TensorPoly::pure(ZS() * Z(), ZS() * Z());
    CHECK((ab + expect * cplx(-1)).max_abs() < 1e-15);
    CHECK(max_abs_diff(tensor_collapse(a), Z() * ZS()) == 0.0);
}
