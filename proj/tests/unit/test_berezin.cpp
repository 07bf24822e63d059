#include <cmath>

#include "doctest.h"
#include "qdisc/berezin.hpp"
#include "qdisc/ncpoly.hpp"

using namespace qdisc;

namespace {
const double q = 0.5;
}

TEST_CASE("q-numbers and the tensor Laplacian") {
    CHECK(qnum_inv(1, q) == doctest::Approx(1.0));
    CHECK(qnum_inv(2, q) == doctest::Approx(1 + 1 / (q * q)));
    TensorPoly t = TensorPoly::pure(NormalPoly::zstar(q), NormalPoly::z(q));
    TensorPoly d = derive_tensor(t);
    REQUIRE(d.terms().size() == 1);
    CHECK(std::abs(d.terms().begin()->second - 1.0) < 1e-15);
    // box~ of z* (x) z: q^-2 (1 - (1+q^-2) z* (x) z + ...) applied to 1 (x) 1
    TensorPoly b = box_tilde(t);
    CHECK(b.max_abs() > 0);
}

TEST_CASE("star product basics") {
    NormalPoly f = parse_expr("z^2 z* + z*", q), g = parse_expr("z z* - 2 z", q);
    FormalSeries s = star_product(f, g, 3);
    CHECK(s.order() == 3);
    CHECK(max_abs_diff(s[0], f * g) < 1e-12);
    NormalPoly one = NormalPoly::constant(q, 1.0);
    FormalSeries u = star_product(one, g, 3), v = star_product(f, one, 3);
    CHECK(max_abs_diff(u[0], g) < 1e-15);
    CHECK(max_abs_diff(v[0], f) < 1e-15);
    for (int k = 1; k <= 3; ++k) {
        CHECK(u[k].max_abs() < 1e-14);
        CHECK(v[k].max_abs() < 1e-14);
    }
    // holomorphic on the right or antiholomorphic on the left: no corrections
    CHECK(c_k_extract(NormalPoly::z(q), g, 1).max_abs() < 1e-14);
    CHECK(c_k_extract(f, NormalPoly::zstar(q), 2).max_abs() < 1e-14);
    CHECK_THROWS_AS(star_product(f, g, -1), InvalidArgument);
}

TEST_CASE("first-order term") {
    NormalPoly zs = NormalPoly::zstar(q), z = NormalPoly::z(q);
    NormalPoly w = NormalPoly::constant(q, 1.0) - zs * z;
    NormalPoly c1 = c_k_extract(zs, z, 1);
    CHECK(max_abs_diff(c1, w * w * cplx(1 / (q * q) - 1)) < 1e-13);
}

TEST_CASE("bidifferential template and associativity") {
    for (int k = 0; k <= 3; ++k) {
        BidiffTemplate tpl = bidifferential_template(k, q);
        CHECK(template_order(tpl) == k);
        TemplateCheck t = template_check(parse_expr("z z*^2 + z*", q), parse_expr("z^2 z* - z", q), k);
        CHECK(t.order == k);
        CHECK(t.residual < 1e-12);
    }
    NormalPoly a = parse_expr("z*^2", q), b = parse_expr("z z*", q), c = parse_expr("z^2 + z*", q);
    for (int m = 0; m <= 3; ++m) CHECK(associativity_defect(a, b, c, m).max_abs() < 1e-11);
}

TEST_CASE("quantization residual scales like t^{K+1}") {
    QContext c;
    c.q = q;
    c.radial_levels = 40;
    NormalPoly f1 = parse_expr("z* z", q), f2 = parse_expr("z z*^2", q);
    double s2 = quantization_oracle(f1, f2, 2.0, 1, c).scaled, s3 = quantization_oracle(f1, f2, 3.0, 1, c).scaled;
    CHECK(s2 > 0);
    CHECK(std::max(s2, s3) / std::min(s2, s3) < 3.0);
    QuantizationReport r = quantization_oracle(f1, f2, 2.0, 1, c);
    CHECK(r.t == doctest::Approx(std::pow(q, 8.0)));
    CHECK(r.residual == doctest::Approx(r.scaled * r.t * r.t));
}
