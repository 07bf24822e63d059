#include <sstream>

#include "doctest.h"
#include "qdisc/ncpoly.hpp"
#include "qdisc/serialize.hpp"
#include "qdisc/verify.hpp"

using namespace qdisc;

TEST_CASE("JSON round trips") {
    NormalPoly f = parse_expr("2 z^2 z* - 0.5i z* + 3", 0.4);
    json j = to_json(f);
    CHECK(j["q"].get<double>() == 0.4);
    CHECK(max_abs_diff(normal_poly_from_json(j), f) == 0.0);
    CHECK(max_abs_diff(normal_poly_from_json(json::parse(j.dump())), f) == 0.0);

    QContext c;
    c.q = 0.4;
    c.radial_levels = 8;
    c.angular_cutoff = 3;
    PolarFunction p = to_polar(f, c) + PolarFunction::indicator(c, -3, 1, cplx(1, -2));
    json pj = to_json(p);
    CHECK(pj["N"].get<int>() == 8);
    CHECK(pj["modes"].contains("-3"));
    PolarFunction back = polar_from_json(json::parse(pj.dump()));
    CHECK(back.max_abs_diff(p) == 0.0);
    CHECK_THROWS(polar_from_json(json{{"q", 0.4}}));
}

TEST_CASE("matrix and series output") {
    QContext c;
    c.radial_levels = 4;
    RepMatrix m = t_matrix(NormalPoly::z(c.q), c);
    json j = to_json(m);
    CHECK(j["rows"].get<int>() == 4);
    CHECK(j["data"].size() == 32);
    std::string csv = to_csv(m);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    json s = to_json(star_product(NormalPoly::zstar(c.q), NormalPoly::z(c.q), 2));
    CHECK(s["K"].get<int>() == 2);
    CHECK(s["coeffs"].size() == 3);
}

TEST_CASE("verification suites") {
    CHECK(is_suite("all"));
    CHECK(is_suite("qspecial"));
    CHECK_FALSE(is_suite("nope"));
    CHECK_THROWS_AS(run_suite("nope", {}), InvalidArgument);
    VerifyConfig cfg;
    cfg.n = 48;
    SuiteResult r = run_suite("qspecial", cfg);
    CHECK(r.pass());
    CHECK_FALSE(r.tests.empty());
    for (const auto& t : r.tests) CHECK(t.value <= t.bound);
    // a zero tolerance cannot be met by floating-point checks
    cfg.tol = 0.0;
    CHECK_FALSE(run_suite("algebra", cfg).pass());
    VerifyReport rep = run_verify("stokes", VerifyConfig{});
    json j = to_json(rep);
    CHECK(j["suites"].size() == 1);
    CHECK(j["pass"].get<bool>());
    std::string csv = to_csv(rep);
    CHECK(csv.find("stokes") != std::string::npos);
}
