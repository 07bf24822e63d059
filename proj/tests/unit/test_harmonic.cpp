#include <cmath>

#include "doctest.h"
#include "qdisc/harmonic.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/qspecial.hpp"

using namespace qdisc;

namespace {
QContext ctx(int n = 48, int m = 8) {
    QContext c;
    c.q = 0.5;
    c.radial_levels = n;
    c.angular_cutoff = m;
    return c;
}
}  // namespace

TEST_CASE("spectral parameter") {
    const double q = 0.5;
    for (cplx l : {cplx(0.3), cplx(-0.5, 0.8)}) CHECK(std::abs(lambda_of_l(l, q) - lambda_of_l(-1.0 - l, q)) < 1e-13);
    CHECK(std::abs(lambda_of_l(0.0, q)) < 1e-15);
    SpectralParam p = spectral_param_rho(0.4, q);
    CHECK(p.has_rho);
    CHECK(std::abs(p.l - cplx(-0.5, 0.4)) < 1e-15);
    // on the unitary line lambda is real and negative
    CHECK(std::abs(p.lambda.imag()) < 1e-14);
    CHECK(p.lambda.real() < 0);
    CHECK(p.h == doctest::Approx(-2 * std::log(q)));
}

TEST_CASE("sector operators respect the Rayleigh bounds") {
    QContext c = ctx(32, 4);
    double lo = rayleigh_lower_bound(c.q), hi = rayleigh_upper_bound(c.q);
    CHECK(lo == doctest::Approx(1 / 2.25));
    CHECK(hi == doctest::Approx(4.0));
    for (int m = -4; m <= 4; ++m) {
        SectorOperator s = sector_operator(m, c);
        RayleighRange r = rayleigh_range(s);
        CHECK(r.min >= lo - 1e-12);
        CHECK(r.max <= hi + 1e-12);
        // A = B^T B after the Gram change of basis
        Eigen::MatrixXd bt = s.B.transpose() * s.B;
        CHECK(bt.rows() == c.radial_levels);
    }
}

TEST_CASE("Green function and dbar problem") {
    QContext c = ctx();
    GreenKernel g = green_kernel(c);
    PolarFunction f = PolarFunction::indicator(c, 0, 1, 1.0) + PolarFunction::indicator(c, 2, 0, cplx(0, 1));
    PolarFunction u = poisson_solve(f, g), v = poisson_solve_linear(f);
    CHECK(u.max_abs_diff(v) < 1e-8 * v.max_abs());
    PolarFunction b = box_apply(u);
    for (int n = 0; n < c.radial_levels - 4; ++n) CHECK(std::abs(b.sample(0, n) - f.sample(0, n)) < 1e-9);
    CHECK_THROWS(poisson_solve(PolarFunction::indicator(c, 0, g.support_cap + 5), g));
    PolarFunction h = PolarFunction::indicator(c, 1, 2, 1.0);
    PolarFunction w = dbar_solve(h, g), wl = dbar_solve_linear(h);
    CHECK(w.max_abs_diff(wl) < 1e-8 * wl.max_abs());
    DbarReport r = dbar_report(h, wl);
    CHECK(r.dbar_residual < 1e-6);
    CHECK(r.orthogonality_defect < 1e-10);
}

TEST_CASE("Bergman projection and Cauchy-Green") {
    const double q = 0.5;
    NormalPoly z = NormalPoly::z(q);
    CHECK(max_abs_diff(bergman_project(z * z), z * z) < 1e-14);
    CHECK(bergman_project(NormalPoly::zstar(q)).max_abs() < 1e-15);
    NormalPoly py = bergman_project(NormalPoly::y(q));
    CHECK(std::abs(py.coeff(0, 0) - 1 / (1 + q * q)) < 1e-14);
    DbarReport r = cauchy_green_check(parse_expr("z y^2", q), ctx());
    CHECK(r.reproduce_residual < 1e-6);
    CHECK(r.dbar_residual < 1e-6);
}

TEST_CASE("spherical functions") {
    QContext c = ctx(64, 4);
    for (cplx l : {cplx(0.3), cplx(-0.5, 0.5)}) {
        PolarFunction phi = spherical_phi(l, c), bx = box_apply(phi);
        cplx lam = lambda_of_l(l, c.q);
        CHECK(std::abs(phi.sample(0, 0) - 1.0) < 1e-13);
        for (int n = 0; n < 40; ++n) {
            CHECK(std::abs(bx.sample(0, n) - lam * phi.sample(0, n)) < 1e-8 * std::abs(lam * phi.sample(0, n)));
            if (n <= 5) CHECK(std::abs(spherical_phi_direct(l, n, c.q) - phi.sample(0, n)) < 1e-10);
        }
    }
}

TEST_CASE("Poisson kernel and boundary recovery") {
    QContext c = ctx(64, 4);
    cplx l = 0.3;
    PolarFunction u = poisson_extend(BoundaryPoly{{1, 1.0}, {-2, 0.5}}, l, c);
    Recovery r = boundary_recover(u, l);
    CHECK(r.converged);
    CHECK(std::abs(r.value[1] - 1.0) < 1e-6);
    CHECK(std::abs(r.value[-2] - 0.5) < 1e-6);
    // radial part of the kernel is the spherical function
    std::vector<cplx> k0 = poisson_mode_samples(l + 1.0, 0, c);
    PolarFunction phi = spherical_phi(l, c);
    for (int n = 0; n < 20; ++n) CHECK(std::abs(k0[n] - phi.sample(0, n)) < 1e-10 * std::abs(phi.sample(0, n)));
}
