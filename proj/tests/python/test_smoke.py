import cmath
import math

import pytest

import qdisc

Q = 0.5


def test_relation_and_parser():
    zs_z = qdisc.parse("z* z", Q)
    expect = qdisc.NormalPoly.monomial(Q, 1, 1, Q * Q) + qdisc.NormalPoly.constant(Q, 1 - Q * Q)
    assert qdisc.max_abs_diff(zs_z, expect) < 1e-15
    assert zs_z.terms() == pytest.approx({(1, 1): Q * Q, (0, 0): 1 - Q * Q})
    assert str(qdisc.parse("z", Q)) == "z"


def test_errors_map_to_python_exceptions():
    with pytest.raises(SyntaxError):
        qdisc.parse("z + * z", Q)
    with pytest.raises(OverflowError):
        qdisc.parse("z^99", Q)
    with pytest.raises(ValueError):
        qdisc.verify("no-such-suite")
    with pytest.raises(qdisc.PoleError):
        qdisc.qgamma(0.0, Q)


def test_involution_and_json_round_trip():
    f = qdisc.parse("2 z^2 z* - 0.5i z", Q)
    g = qdisc.parse("z* + y", Q)
    assert qdisc.max_abs_diff((f * g).star(), g.star() * f.star()) < 1e-13
    back = qdisc.normal_poly_from_json(f.to_json())
    assert qdisc.max_abs_diff(back, f) == 0.0


def test_polar_and_integrals():
    ctx = qdisc.QContext(Q, 48, 8)
    y = qdisc.NormalPoly.y(Q)
    p = qdisc.to_polar(y * y, ctx)
    assert p.modes() == [0]
    assert p.sample(0, 3) == pytest.approx(ctx.y(3) ** 2)
    assert qdisc.mu(y) == pytest.approx((1 - Q**2) / (1 - Q**4))
    assert qdisc.nu(p) == pytest.approx((1 - Q**2) / (1 - Q**2), rel=1e-12)
    back = qdisc.polar_from_json(p.to_json())
    assert back.max_abs_diff(p) == 0.0


def test_q_special():
    a, z = 0.3, 0.4
    lhs = qdisc.basic_hyper([a], [], Q, z)
    rhs = qdisc.qpoch_inf(a * z, Q) / qdisc.qpoch_inf(z, Q)
    assert abs(lhs - rhs) < 1e-13
    assert qdisc.jackson_integral(lambda t: t, Q) == pytest.approx(1 / (1 + Q))


def test_stokes():
    inner, boundary, residual = qdisc.stokes_check(qdisc.NormalPoly.zstar(Q))
    assert abs(inner - 2j * math.pi) < 1e-12
    assert abs(boundary - 2j * math.pi) < 1e-12
    assert residual < 1e-12


def test_poisson_and_eigenfunctions():
    ctx = qdisc.QContext(Q, 48, 8)
    f = qdisc.PolarFunction.indicator(ctx, 0, 1) + qdisc.PolarFunction.indicator(ctx, 1, 0, 2j)
    u = qdisc.poisson_solve(f)
    assert u.max_abs_diff(qdisc.poisson_solve_kernel(f)) < 1e-8 * u.max_abs()
    b = qdisc.box_apply(u)
    assert max(abs(b.sample(0, n) - f.sample(0, n)) for n in range(40)) < 1e-9
    phi = qdisc.spherical_phi(0.3, ctx)
    lam = qdisc.lambda_of_l(0.3, Q)
    bphi = qdisc.box_apply(phi)
    assert max(abs(bphi.sample(0, n) / phi.sample(0, n) - lam) for n in range(40)) < 1e-8
    lo, hi = qdisc.rayleigh_range(2, qdisc.QContext(Q, 32, 4))
    assert 1 / (1 + Q) ** 2 - 1e-12 <= lo <= hi <= 1 / (1 - Q) ** 2 + 1e-12


def test_fourier_round_trip():
    ctx = qdisc.QContext(Q, 48, 4)
    u = qdisc.to_polar(qdisc.parse("z y^2 + y^3", Q), ctx)
    g = qdisc.fourier_forward(u, 64)
    assert qdisc.fourier_inverse(g).max_abs_diff(u) < 1e-8
    assert abs(qdisc.spectral_inner(g, g) - qdisc.nu_inner(u, u)) < 1e-8


def test_star_product():
    zs, z = qdisc.NormalPoly.zstar(Q), qdisc.NormalPoly.z(Q)
    series = qdisc.star_product(zs, z, 2)
    assert len(series) == 3
    assert qdisc.max_abs_diff(series[0], zs * z) < 1e-15
    w = qdisc.NormalPoly.constant(Q, 1.0) - zs * z
    assert qdisc.max_abs_diff(series[1], w * w * (1 / Q**2 - 1)) < 1e-13


def test_verify_report():
    report = qdisc.verify("qspecial")
    assert report["pass"] is True
    assert report["suites"][0]["name"] == "qspecial"
    assert "qspecial" in qdisc.suite_names()
    assert not cmath.isnan(report["suites"][0]["tests"][0]["value"])
