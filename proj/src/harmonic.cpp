#include "qdisc/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdisc/forms.hpp"
#include "qdisc/qspecial.hpp"
#include "qdisc/quad.hpp"

namespace qdisc {

cplx lambda_of_l(cplx l, double q) {
    double lq = std::log(q);
    double q2 = q * q;
    return -(1.0 - std::exp(-2.0 * l * lq)) * (1.0 - std::exp((2.0 * l + 2.0) * lq)) / ((1.0 - q2) * (1.0 - q2));
}

SpectralParam spectral_param(cplx l, double q) {
    SpectralParam p;
    p.l = l;
    p.lambda = lambda_of_l(l, q);
    p.c = c_function(l, q);
    p.h = -2.0 * std::log(q);
    return p;
}

SpectralParam spectral_param_rho(double rho, double q) {
    double h = -2.0 * std::log(q);
    if (rho < 0.0 || rho > std::numbers::pi / h + 1e-12) throw InvalidArgument("spectral_param_rho: rho outside [0, pi/h]");
    SpectralParam p = spectral_param(cplx(-0.5, rho), q);
    p.rho = rho;
    p.has_rho = true;
    return p;
}

namespace {

// (1-q^2) (q^{2k+2};q^2)_{|mode|} q^{2 s n}, n = lattice index of the diagonal entry
double gram_weight(int mode, int k, double s, double q) {
    double q2 = q * q;
    int a = std::abs(mode);
    int n = mode >= 0 ? k : k + a;
    return (1.0 - q2) * qpoch(std::pow(q2, k + 1), q2, a).real() * std::pow(q2, s * n);
}

QContext with_levels(const QContext& ctx, int levels) {
    QContext c = ctx;
    c.radial_levels = levels;
    return c;
}

PolarFunction resample(const PolarFunction& f, const QContext& ctx) {
    PolarFunction out(ctx);
    for (int m : f.modes()) {
        std::vector<cplx> s(ctx.radial_levels, 0.0);
        const RadialPoly* p = f.closed(m);
        for (int n = 0; n < ctx.radial_levels; ++n) {
            if (n < f.levels())
                s[n] = f.samples(m)[n];
            else if (p)
                s[n] = eval_radial(*p, ctx.y(n));
        }
        out.set_mode(m, std::move(s));
    }
    return out;
}

Eigen::VectorXcd mode_vector(const PolarFunction& f, int m) {
    const auto& s = f.samples(m);
    Eigen::VectorXcd v(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<int>(i)) = s[i];
    return v;
}

std::vector<cplx> to_std(const Eigen::VectorXcd& v) { return std::vector<cplx>(v.data(), v.data() + v.size()); }

}  // namespace

SectorOperator sector_operator(int m, const QContext& ctx) {
    ctx.validate();
    const int N = ctx.radial_levels;
    const double q = ctx.q;
    const int rows = m >= 0 ? N : N + 1;
    QContext inner = with_levels(ctx, rows);
    inner.angular_cutoff = std::abs(m) + 2;
    SectorOperator s;
    s.m = m;
    s.op = Eigen::MatrixXd::Zero(rows, N);
    for (int n = 0; n < N; ++n) {
        PolarFunction h = dbar_coefficient(PolarFunction::indicator(inner, m, n));
        const auto& col = h.samples(m + 1);
        for (int k = 0; k < rows; ++k) s.op(k, n) = col[k].real();
    }
    s.w_nu.resize(N);
    s.w_mu.resize(rows);
    for (int k = 0; k < N; ++k) s.w_nu(k) = gram_weight(m, k, -1.0, q);
    for (int k = 0; k < rows; ++k) s.w_mu(k) = gram_weight(m + 1, k, 1.0, q);
    s.B = s.w_mu.cwiseSqrt().asDiagonal() * s.op * s.w_nu.cwiseSqrt().cwiseInverse().asDiagonal();
    s.A = s.w_nu.cwiseInverse().asDiagonal() * s.op.transpose() * s.w_mu.asDiagonal() * s.op;
    return s;
}

Eigen::MatrixXd dbar_sector(int m, const QContext& ctx) { return sector_operator(m, ctx).B; }

RayleighRange rayleigh_range(const SectorOperator& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.B.transpose() * s.B, Eigen::EigenvaluesOnly);
    return RayleighRange{s.m, es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double rayleigh_lower_bound(double q) { return 1.0 / ((1.0 + q) * (1.0 + q)); }
double rayleigh_upper_bound(double q) { return 1.0 / ((1.0 - q) * (1.0 - q)); }

PolarFunction box_apply(const PolarFunction& f) {
    PolarFunction out(f.ctx());
    for (int m : f.modes()) {
        SectorOperator s = sector_operator(m, f.ctx());
        Eigen::VectorXcd v = -(s.A.cast<cplx>() * mode_vector(f, m));
        out.set_mode(m, to_std(v));
    }
    return out;
}

double green_coefficient(int m, double q) {
    double qm2 = 1.0 / (q * q);
    return -(qm2 - 1.0) / (std::pow(qm2, m) - 1.0);
}

GreenKernel green_kernel(const QContext& ctx, int series_terms, int support_cap) {
    ctx.validate();
    if (series_terms < 1) throw InvalidArgument("green_kernel: series_terms must be >= 1");
    if (support_cap < 1) throw InvalidArgument("green_kernel: support_cap must be >= 1");
    const int D = 2 * support_cap;
    const int L = ctx.radial_levels + D + 1;
    const double q = ctx.q;
    BiKernel a = braces_multiply(geometric_kernel({GeometricKind::Eta}, L, D, q),
                                 geometric_kernel({GeometricKind::OneMinusZstarZeta}, L, D, q));
    BiKernel b = braces_multiply(geometric_kernel({GeometricKind::Y}, L, D, q),
                                 geometric_kernel({GeometricKind::OneMinusZZetastar, 1.0}, L, D, q));
    BiKernel g(L, D, q);
    BiKernel am = a, bm = b;
    for (int m = 1; m <= series_terms; ++m) {
        if (m > 1) {
            am = braces_multiply(am, a);
            bm = braces_multiply(bm, b);
        }
        g += braces_multiply(am, bm) * green_coefficient(m, q);
    }
    return GreenKernel{std::move(g), series_terms, support_cap};
}

namespace {

void check_support(const PolarFunction& f, int cap) {
    for (int m : f.modes()) {
        const auto& s = f.samples(m);
        int P = m < 0 ? -m : 0;
        for (int n = 0; n < f.levels(); ++n) {
            if (s[n] == 0.0) continue;
            if (std::abs(m) > cap || n + P > cap)
                throw DegreeCapExceeded("Green kernel: right-hand side support exceeds support cap " + std::to_string(cap));
        }
    }
}

}  // namespace

PolarFunction poisson_solve(const PolarFunction& f, const GreenKernel& g) {
    check_support(f, g.support_cap);
    return kernel_apply(g.kernel, f, KernelMeasure::Nu, f.ctx());
}

PolarFunction poisson_solve_linear(const PolarFunction& f) {
    PolarFunction out(f.ctx());
    for (int m : f.modes()) {
        SectorOperator s = sector_operator(m, f.ctx());
        Eigen::LLT<Eigen::MatrixXd> llt(s.B.transpose() * s.B);
        Eigen::VectorXd sq = s.w_nu.cwiseSqrt();
        Eigen::VectorXcd rhs = sq.cast<cplx>().asDiagonal() * mode_vector(f, m);
        Eigen::VectorXcd x = llt.solve(rhs.real()).cast<cplx>() + cplx(0.0, 1.0) * llt.solve(rhs.imag()).cast<cplx>();
        Eigen::VectorXcd u = -(sq.cwiseInverse().cast<cplx>().asDiagonal() * x);
        out.set_mode(m, to_std(u));
    }
    return out;
}

namespace {

PolarFunction truncate_to(const PolarFunction& f, const QContext& ctx) {
    PolarFunction out(ctx);
    for (int m : f.modes()) {
        std::vector<cplx> s(f.samples(m).begin(), f.samples(m).begin() + ctx.radial_levels);
        out.set_mode(m, std::move(s));
    }
    return out;
}

}  // namespace

PolarFunction dbar_solve(const PolarFunction& f, const GreenKernel& g) {
    check_support(f, g.support_cap);
    QContext ext = with_levels(f.ctx(), f.levels() + 1);
    // dzeta placed immediately right of the kernel: sigma^{-1} on the zeta factor
    PolarFunction w = kernel_apply(g.kernel, f, KernelMeasure::Mu, ext, 1);
    return truncate_to(del_coefficient(w), f.ctx());
}

PolarFunction dbar_solve_linear(const PolarFunction& f) {
    const QContext& ctx = f.ctx();
    QContext ext = with_levels(ctx, ctx.radial_levels + 1);
    PolarFunction fe = resample(f, ext);
    PolarFunction out(ext);
    for (int p : fe.modes()) {
        int P = p < 0 ? -p : 0;
        std::vector<cplx> s = fe.samples(p);
        for (int n = 0; n < ext.radial_levels; ++n) s[n] *= std::pow(ext.y(n + P), 2.0);
        PolarFunction g(ext);
        g.set_mode(p, std::move(s));
        PolarFunction w = poisson_solve_linear(g);
        out += del_coefficient(w) * std::pow(ctx.q, 2.0 * p);
    }
    return truncate_to(out, ctx);
}

DbarReport dbar_report(const PolarFunction& f, const PolarFunction& u, int margin) {
    // lattice dbar amplifies rounding in u by q^{-2n}; interior = levels with q^{2n} >= 1e-8
    DbarReport r;
    PolarFunction d = dbar_coefficient(u);
    const int N = f.levels();
    const double q2 = f.ctx().q2();
    int top = N - margin;
    double p = 1.0;
    for (int n = 0; n < top; ++n, p *= q2)
        if (p < 1e-8) { top = n; break; }
    std::vector<int> modes = d.modes();
    for (int m : f.modes()) modes.push_back(m);
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    double scale = 0.0;
    for (int m : modes)
        for (int n = 0; n < top; ++n) scale = std::max(scale, std::abs(f.sample(m, n)));
    if (scale == 0.0) scale = 1.0;
    for (int m : modes)
        for (int n = 0; n < top; ++n)
            r.dbar_residual = std::max(r.dbar_residual, std::abs(d.sample(m, n) - f.sample(m, n)) / scale);
    for (int k = 0; k <= 4; ++k) {
        if (k > f.ctx().angular_cutoff) break;
        PolarFunction zk = to_polar(NormalPoly::monomial(f.ctx().q, k, 0), f.ctx());
        r.orthogonality_defect = std::max(r.orthogonality_defect, std::abs(weighted_inner(u, zk, 2.0, FormGrade::Function).value));
    }
    return r;
}

DbarReport cauchy_green_check(const NormalPoly& f, const QContext& ctx, int margin) {
    PolarFunction F = to_polar(f, ctx);
    PolarFunction P = to_polar(bergman_project(f), ctx);
    PolarFunction h = to_polar(partial_derivatives(f).dzstar_right, ctx);
    PolarFunction u = dbar_solve_linear(h);
    DbarReport r = dbar_report(h, u, margin);
    PolarFunction diff = F - P - u;
    double scale = std::max(F.max_abs(), 1e-300);
    for (int m : diff.modes())
        for (int n = 0; n < ctx.radial_levels - margin; ++n)
            r.reproduce_residual = std::max(r.reproduce_residual, std::abs(diff.sample(m, n)) / scale);
    return r;
}

NormalPoly bergman_project(const NormalPoly& f) {
    const double q = f.q();
    const double q2 = q * q;
    NormalPoly out(q);
    for (int n = 0; n <= f.degree(); ++n) {
        cplx c = mu(NormalPoly::monomial(q, 0, n) * f);
        if (c == 0.0) continue;
        out.add_term(n, 0, c * (1.0 - std::pow(q2, n + 1)) / (1.0 - q2));
    }
    return out;
}

PolarFunction bergman_project_kernel(const PolarFunction& f, int mode_cap) {
    const int L = f.levels() + mode_cap + 1;
    BiKernel k = geometric_kernel({GeometricKind::Bergman}, L, mode_cap, f.ctx().q);
    return kernel_apply(k, f, KernelMeasure::Mu, f.ctx());
}

namespace {

std::vector<cplx> poisson_coefficients(cplx gamma, double q, int count) {
    double q2 = q * q;
    cplx qg = std::exp(2.0 * gamma * std::log(q));
    std::vector<cplx> a(count);
    cplx num = 1.0;
    double den = 1.0;
    for (int m = 0; m < count; ++m) {
        a[m] = num / den;
        num *= 1.0 - qg * std::pow(q2, m);
        den *= 1.0 - std::pow(q2, m + 1);
    }
    return a;
}

std::vector<cplx> poisson_mode(cplx gamma, int k, const QContext& ctx, const std::vector<cplx>& a) {
    const int N = ctx.radial_levels;
    const double lq = std::log(ctx.q);
    const int K = std::abs(k);
    std::vector<cplx> out(N);
    for (int n = 0; n < N; ++n) {
        cplx sum = 0.0;
        double poch = 1.0;  // (y;q^{-2})_j at y = q^{2n}
        for (int j = 0; j <= n; ++j) {
            if (j > 0) poch *= 1.0 - std::pow(ctx.q, 2.0 * (n - j + 1));
            cplx t;
            if (k >= 0)
                t = a[j + K] * a[j] * std::exp((-2.0 * gamma * double(j + K) + (2.0 - 2.0 * gamma) * double(j)) * lq);
            else
                t = a[j] * a[j + K] * std::exp((-2.0 * gamma * double(j) + (2.0 - 2.0 * gamma) * double(j + K)) * lq);
            sum += t * poch;
        }
        cplx pre = std::exp(gamma * 2.0 * double(n) * lq);
        if (k >= 0) pre *= std::exp(2.0 * double(K) * gamma * lq);
        out[n] = pre * sum;
    }
    return out;
}

}  // namespace

std::vector<cplx> poisson_mode_samples(cplx gamma, int k, const QContext& ctx) {
    std::vector<cplx> a = poisson_coefficients(gamma, ctx.q, ctx.radial_levels + std::abs(k) + 1);
    return poisson_mode(gamma, k, ctx, a);
}

std::map<int, PolarFunction> poisson_kernel(cplx gamma, const QContext& ctx) {
    ctx.validate();
    const int M = ctx.angular_cutoff;
    std::vector<cplx> a = poisson_coefficients(gamma, ctx.q, ctx.radial_levels + M + 1);
    std::map<int, PolarFunction> out;
    for (int k = -M; k <= M; ++k) {
        PolarFunction f(ctx);
        f.set_mode(k, poisson_mode(gamma, k, ctx, a));
        out.emplace(k, std::move(f));
    }
    return out;
}

PolarFunction poisson_extend(const BoundaryPoly& f, cplx l, const QContext& ctx) {
    ctx.validate();
    cplx gamma = l + 1.0;
    int K = 0;
    for (const auto& [k, c] : f) K = std::max(K, std::abs(k));
    if (K > ctx.angular_cutoff) throw AngularOverflow("poisson_extend: boundary mode exceeds angular cutoff");
    std::vector<cplx> a = poisson_coefficients(gamma, ctx.q, ctx.radial_levels + K + 1);
    PolarFunction out(ctx);
    for (const auto& [k, c] : f) {
        if (c == 0.0) continue;
        std::vector<cplx> s = poisson_mode(gamma, k, ctx, a);
        for (cplx& v : s) v *= c;
        PolarFunction part(ctx);
        part.set_mode(k, std::move(s));
        out += part;
    }
    return out;
}

PolarFunction spherical_phi(cplx l, const QContext& ctx) {
    ctx.validate();
    const double q = ctx.q, q2 = q * q, lq = std::log(q);
    cplx a = std::exp((2.0 + 2.0 * l) * lq);
    std::vector<cplx> s(ctx.radial_levels);
    for (int n = 0; n < ctx.radial_levels; ++n) {
        double y = ctx.y(n);
        cplx zarg = std::exp(-2.0 * (2.0 * l + 1.0) * lq) * y;
        cplx series = basic_hyper({a, a, std::pow(q2, -n)}, {q2}, q2, zarg);
        s[n] = std::exp((l + 1.0) * 2.0 * double(n) * lq) * series;
    }
    PolarFunction out(ctx);
    out.set_mode(0, std::move(s));
    return out;
}

cplx spherical_phi_direct(cplx l, int n, double q) {
    const double q2 = q * q, lq = std::log(q);
    return basic_hyper({std::pow(q2, -n), std::exp(-2.0 * l * lq), std::exp((2.0 * l + 2.0) * lq)}, {q2, 0.0}, q2, q2);
}

BoundaryPoly radius_restrict(const PolarFunction& u, int n) {
    if (n < 0 || n >= u.levels()) throw InvalidArgument("radius_restrict: level outside truncation");
    double r = std::sqrt(1.0 - u.ctx().y(n));
    BoundaryPoly b;
    for (int m : u.modes()) {
        int j = std::abs(m);
        int idx = m >= 0 ? n : n - j;
        cplx v = idx >= 0 ? u.sample(m, idx) * std::pow(r, j) : cplx(0.0);
        if (v != 0.0) b[m] = v;
    }
    return b;
}

Recovery boundary_recover(const PolarFunction& u, cplx l, double tol) {
    if (!(l.real() > -0.5)) throw InvalidArgument("boundary_recover: requires Re l > -1/2");
    const double lq = std::log(u.ctx().q);
    cplx factor = 1.0 / c_function(l, u.ctx().q);
    auto estimate = [&](int n) {
        BoundaryPoly b = radius_restrict(u, n);
        cplx w = factor * std::exp(2.0 * double(n) * l * lq);
        for (auto& [k, v] : b) v *= w;
        return b;
    };
    const int n1 = u.levels() - 1;
    Recovery rec;
    rec.level = n1;
    rec.value = estimate(n1);
    BoundaryPoly prev = estimate(n1 - 1);
    double scale = 1.0;
    for (const auto& [k, v] : rec.value) scale = std::max(scale, std::abs(v));
    for (const auto& [k, v] : rec.value) {
        auto it = prev.find(k);
        rec.delta = std::max(rec.delta, std::abs(v - (it == prev.end() ? cplx(0.0) : it->second)));
    }
    for (const auto& [k, v] : prev)
        if (!rec.value.count(k)) rec.delta = std::max(rec.delta, std::abs(v));
    rec.converged = rec.delta <= tol * scale;
    return rec;
}

}  // namespace qdisc
