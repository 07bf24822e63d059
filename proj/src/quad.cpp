#include "qdisc/quad.hpp"

#include <cmath>
#include <numbers>

#include "qdisc/qspecial.hpp"
#include "qdisc/rep.hpp"

namespace qdisc {

namespace {

constexpr cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

// sum over the mode-0 samples with weight q^{2n s}; warn if the last term is not negligible
SumResult lattice_sum(const std::vector<cplx>& s, const QContext& ctx, double power) {
    cplx sum = 0.0;
    double scale = 0.0;
    cplx last = 0.0;
    for (int n = 0; n < static_cast<int>(s.size()); ++n) {
        cplx t = s[n] * std::pow(ctx.q, 2.0 * n * power);
        sum += t;
        scale = std::max(scale, std::abs(t));
        last = t;
    }
    SumResult r{(1.0 - ctx.q2()) * sum, false};
    r.divergence_warning = std::abs(last) > 1e-10 * std::max(scale, 1e-300);
    return r;
}

}  // namespace

cplx mu(const PolarFunction& f) {
    SumResult r = lattice_sum(f.samples(0), f.ctx(), 1.0);
    if (r.divergence_warning && !f.closed(0)) throw SummabilityError("mu: mode-0 samples not summable within truncation");
    if (const RadialPoly* p = f.closed(0)) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < p->size(); ++i)
            s += (*p)[i] * (1.0 - f.ctx().q2()) / (1.0 - std::pow(f.ctx().q2(), static_cast<double>(i + 1)));
        return s;
    }
    return r.value;
}

cplx mu(const NormalPoly& f) {
    QContext ctx;
    ctx.q = f.q();
    ctx.radial_levels = 2;
    ctx.angular_cutoff = std::max(f.degree(), 1);
    return mu(to_polar(f, ctx));
}

SumResult nu(const PolarFunction& f) { return lattice_sum(f.samples(0), f.ctx(), -1.0); }

cplx nu_via_mu(const PolarFunction& f) {
    const QContext& ctx = f.ctx();
    std::vector<cplx> w(ctx.radial_levels + ctx.angular_cutoff + 1);
    for (std::size_t n = 0; n < w.size(); ++n) w[n] = std::pow(ctx.q, -4.0 * static_cast<double>(n));
    PolarFunction g = multiply_radial_right(f, w);
    return lattice_sum(g.samples(0), ctx, 1.0).value;
}

cplx nu_alpha(const PolarFunction& f, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("nu_alpha: alpha must be positive");
    const QContext& ctx = f.ctx();
    double t = std::pow(ctx.q, 4.0 * alpha);
    cplx s = 0.0;
    for (int n = 0; n < f.levels(); ++n) s += f.samples(0)[n] * std::pow(t, static_cast<double>(n));
    return (1.0 - t) * s;
}

cplx nu_alpha_trace(const PolarFunction& f, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("nu_alpha: alpha must be positive");
    const QContext& ctx = f.ctx();
    const int N = ctx.radial_levels;
    Eigen::MatrixXcd ty = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n < N; ++n) ty(n, n) = std::pow(ctx.y(n), 2.0 * alpha);
    double t = std::pow(ctx.q, 4.0 * alpha);
    return (1.0 - t) * (t_matrix(f).entries * ty).trace();
}

std::vector<cplx> adjoint_product_mode0(const PolarFunction& g, const PolarFunction& f) {
    const QContext& ctx = f.ctx();
    const int N = ctx.radial_levels;
    const double q2 = ctx.q2();
    std::vector<cplx> out(N, 0.0);
    for (int m : f.modes()) {
        if (!g.has_mode(m)) continue;
        const auto& a = g.samples(m);
        const auto& b = f.samples(m);
        if (m >= 0) {
            // (z^m a)^* z^m b = conj(a) z*^m z^m b = conj(a) (q^2 y;q^2)_m b
            for (int n = 0; n < N; ++n) out[n] += std::conj(a[n]) * qpoch(q2 * ctx.y(n), q2, m) * b[n];
        } else {
            // (a z*^P)^* b z*^P = z^P conj(a) b z*^P = (conj(a) b)(q^{-2P} y) (y;q^{-2})_P
            int P = -m;
            for (int n = P; n < N; ++n)
                out[n] += std::conj(a[n - P]) * b[n - P] * qpoch(ctx.y(n), 1.0 / q2, P);
        }
    }
    return out;
}

SumResult weighted_inner(const PolarFunction& f1, const PolarFunction& f2, double lambda, FormGrade grade) {
    std::vector<cplx> s = adjoint_product_mode0(f2, f1);
    double expo = grade == FormGrade::Function ? lambda - 2.0 : lambda;
    // int g y^e dmu = (1-q^2) sum g_n q^{2n(e+1)}
    return lattice_sum(s, f1.ctx(), expo + 1.0);
}

cplx form_integral_11(const DiffForm& w) { return -kTwoPiI * mu(w.f11); }

cplx form_integral_11(const PolarFunction& f11) {
    const QContext& ctx = f11.ctx();
    double abs_sum = 0.0, last = 0.0;
    for (int n = 0; n < ctx.radial_levels; ++n) {
        last = std::abs(f11.samples(0)[n]) * ctx.y(n);
        abs_sum += last;
    }
    if (!f11.closed(0) && last > 1e-12 * std::max(abs_sum, 1e-300))
        throw SummabilityError("form_integral_11: coefficient not absolutely summable within truncation");
    return -kTwoPiI * mu(f11);
}

cplx boundary_integral_10(const DiffForm& psi) {
    NormalPoly zf = NormalPoly::z(psi.q()) * psi.f10;
    BoundaryPoly b = boundary_restrict(zf);
    auto it = b.find(0);
    return kTwoPiI * (it == b.end() ? cplx(0.0) : it->second);
}

StokesResult stokes_check(const DiffForm& psi) {
    if (!psi.f00.is_zero() || !psi.f01.is_zero() || !psi.f11.is_zero())
        throw InvalidArgument("stokes_check: expects a (1,0)-form dz f");
    DiffForm dpsi = split_d(psi).delbar;
    StokesResult r;
    r.interior = form_integral_11(dpsi);
    r.boundary = boundary_integral_10(psi);
    r.residual = std::abs(r.interior - r.boundary);
    return r;
}

StokesResult stokes_check(const PolarFunction& f) {
    // dbar(dz f) = -dz (dbar_coefficient f) dz*
    PolarFunction h = dbar_coefficient(f);
    StokesResult r;
    r.interior = form_integral_11(h * -1.0);
    r.boundary = 0.0;
    r.residual = std::abs(r.interior - r.boundary);
    return r;
}

}  // namespace qdisc
