#include "qdisc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "qdisc/berezin.hpp"
#include "qdisc/forms.hpp"
#include "qdisc/fourier.hpp"
#include "qdisc/harmonic.hpp"
#include "qdisc/quad.hpp"
#include "qdisc/qspecial.hpp"
#include "qdisc/rep.hpp"

namespace qdisc {

namespace {

class Suite {
public:
    Suite(std::string name, const VerifyConfig& cfg) : cfg_(cfg) { res_.name = std::move(name); }

    void check(std::string id, std::string ref, double value, double bound) {
        double b = cfg_.tol.value_or(bound);
        res_.tests.push_back({std::move(id), std::move(ref), value, b, std::isfinite(value) && value <= b});
    }
    SuiteResult done() { return std::move(res_); }

private:
    const VerifyConfig& cfg_;
    SuiteResult res_;
};

QContext context_of(const VerifyConfig& cfg) {
    QContext ctx;
    ctx.q = cfg.q;
    ctx.radial_levels = cfg.n;
    ctx.angular_cutoff = cfg.m;
    ctx.validate();
    return ctx;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

cplx random_cplx(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

NormalPoly random_poly(std::mt19937_64& rng, double q, int degree, int terms) {
    std::uniform_int_distribution<int> d(0, degree);
    NormalPoly f(q);
    for (int t = 0; t < terms; ++t) {
        int j = d(rng);
        int k = std::uniform_int_distribution<int>(0, degree - j)(rng);
        f.add_term(j, k, random_cplx(rng));
    }
    return f;
}

PolarFunction random_finite(std::mt19937_64& rng, const QContext& ctx, int mode_cap, int level_cap, int count) {
    std::uniform_int_distribution<int> md(-mode_cap, mode_cap), lv(0, level_cap);
    PolarFunction f(ctx);
    // keeps the matrix-unit indices (level, level + |mode|) below level_cap
    for (int i = 0; i < count; ++i) {
        int m = md(rng);
        f += PolarFunction::indicator(ctx, m, lv(rng) % (level_cap - std::abs(m) + 1), random_cplx(rng));
    }
    return f;
}

// ---------------------------------------------------------------- suites

SuiteResult suite_qspecial(const VerifyConfig& cfg) {
    Suite s("qspecial", cfg);
    double qb = 0.0, jb = 0.0, t1 = 0.0, t2 = 0.0, gb = 0.0;
    for (double q : {0.3, cfg.q, 0.7}) {
        for (double a : {-0.8, 0.2, 0.55, 2.5})
            for (double z : {-0.6, 0.1, 0.45, 0.9}) {
                cplx lhs = basic_hyper({a}, {}, q, z);
                cplx rhs = qpoch_inf(a * z, q) / qpoch_inf(z, q);
                qb = std::max(qb, rel(lhs, rhs));
            }
        const double q2 = q * q;
        for (double al : {0.5, 1.0, 2.3})
            for (double be : {0.7, 1.5, 3.0}) {
                cplx lhs = jackson_integral(
                    [&](double t) { return std::pow(t, be - 1.0) * qpoch_gamma(t * q2, q2, al - 1.0); }, q2);
                cplx rhs = qgamma(be, q2) * qgamma(al, q2) / qgamma(al + be, q2);
                jb = std::max(jb, rel(lhs, rhs));
            }
        for (int n = 0; n <= 8; ++n)
            for (double b : {-0.3, 0.2, 0.45})
                for (double c : {0.15, 0.6})
                    for (double z : {0.35, 0.8, 1.7}) {
                        cplx qn = std::pow(q, -n);
                        cplx r32 = basic_hyper({qn, b, b * z * std::pow(q, -n) / c}, {b * std::pow(q, 1 - n) / c, 0.0}, q, q);
                        cplx l31 = std::pow(b, n) * basic_hyper({qn, b, q / z}, {b * std::pow(q, 1 - n) / c}, q, z / c);
                        cplx l21 = basic_hyper({qn, b}, {c}, q, z);
                        t1 = std::max(t1, rel(l31, r32));
                        t2 = std::max(t2, rel(l21, qpoch(c / b, q, n) / qpoch(c, q, n) * r32));
                    }
        // Gamma_q(x+1) = [x]_q Gamma_q(x)
        for (cplx x : {cplx(0.3), cplx(1.7), cplx(-0.5, 0.8)})
            gb = std::max(gb, rel(qgamma(x + 1.0, q), (1.0 - std::pow(q, x)) / (1.0 - q) * qgamma(x, q)));
    }
    s.check("q_binomial", "q-binomial theorem", qb, 1e-10);
    s.check("q_beta_jackson", "q-beta integral", jb, 1e-10);
    s.check("transform_3phi1_3phi2", "3phi1 to 3phi2 transformation", t1, 1e-10);
    s.check("transform_2phi1_3phi2", "2phi1 to 3phi2 transformation", t2, 1e-10);
    s.check("qgamma_recurrence", "q-gamma functional equation", gb, 1e-10);
    return s.done();
}

SuiteResult suite_algebra(const VerifyConfig& cfg) {
    Suite s("algebra", cfg);
    std::mt19937_64 rng(cfg.seed);
    const double q = cfg.q;
    QContext ctx = context_of(cfg);
    QContext small = ctx;
    small.radial_levels = 24;
    small.angular_cutoff = 12;
    double assoc = 0.0, inv = 0.0, polar = 0.0, hom = 0.0, dd = 0.0, leib = 0.0, relq = 0.0;
    for (int i = 0; i < 100; ++i) {
        NormalPoly f = random_poly(rng, q, 4, 3), g = random_poly(rng, q, 4, 3), h = random_poly(rng, q, 4, 3);
        NormalPoly fg = f * g;
        double sc = std::max(1.0, (fg * h).max_abs());
        assoc = std::max(assoc, max_abs_diff(fg * h, f * (g * h)) / sc);
        inv = std::max(inv, max_abs_diff(involution(fg), involution(g) * involution(f)) / std::max(1.0, fg.max_abs()));
        polar = std::max(polar, max_abs_diff(from_polar(to_polar(f, ctx)), f) / std::max(1.0, f.max_abs()));
        if (i < 20) {
            Eigen::MatrixXcd a = t_matrix(fg, small).entries, b = t_matrix(f, small).entries * t_matrix(g, small).entries;
            int blk = small.radial_levels - 8;
            hom = std::max(hom, (a - b).topLeftCorner(blk, blk).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff()));
            DiffForm w = DiffForm::function(f);
            dd = std::max(dd, exterior_d(exterior_d(w)).max_abs() / std::max(1.0, f.max_abs()));
            leib = std::max(leib, max_abs_diff(exterior_d(w), exterior_d_leibniz(f)) / std::max(1.0, f.max_abs()));
        }
    }
    NormalPoly z = NormalPoly::z(q), zs = NormalPoly::zstar(q);
    relq = (zs * z - z * zs * cplx(q * q) - NormalPoly::constant(q, 1.0 - q * q)).max_abs();
    s.check("commutation_relation", "z* z = q^2 z z* + 1 - q^2", relq, 1e-12);
    s.check("associativity_100", "associative normal-ordered product", assoc, 1e-12);
    s.check("involution_antihom", "(fg)* = g* f*", inv, 1e-12);
    s.check("polar_roundtrip", "polar decomposition", polar, 1e-12);
    s.check("representation_hom", "T(fg) = T(f) T(g)", hom, 1e-12);
    s.check("d_squared", "d^2 = 0", dd, 1e-12);
    s.check("d_leibniz", "d via the Leibniz rule", leib, 1e-12);
    return s.done();
}

SuiteResult suite_stokes(const VerifyConfig& cfg) {
    Suite s("stokes", cfg);
    const double q = cfg.q;
    double worst = 0.0;
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b) {
            NormalPoly m = NormalPoly::monomial(q, a, b);
            worst = std::max(worst, stokes_check(DiffForm::left_dz(m)).residual);
            worst = std::max(worst, stokes_check(form_multiply(DiffForm::function(m), DiffForm::dz(q))).residual);
        }
    StokesResult base = stokes_check(DiffForm::left_dz(NormalPoly::zstar(q)));
    cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
    std::mt19937_64 rng(cfg.seed + 1);
    QContext ctx = context_of(cfg);
    double fin = 0.0;
    for (int i = 0; i < 10; ++i) {
        StokesResult r = stokes_check(random_finite(rng, ctx, 4, 20, 5));
        fin = std::max(fin, std::abs(r.interior) + std::abs(r.boundary));
    }
    s.check("polynomial_forms_deg6", "Stokes formula", worst, 1e-12);
    s.check("dz_zstar_interior", "int dbar(dz z*) = 2 pi i", std::abs(base.interior - two_pi_i), 1e-12);
    s.check("dz_zstar_boundary", "int_dU dz z* = 2 pi i", std::abs(base.boundary - two_pi_i), 1e-12);
    s.check("finite_forms_vanish", "finite support: both sides 0", fin, 1e-12);
    return s.done();
}

SuiteResult suite_spectral(const VerifyConfig& cfg) {
    Suite s("spectral", cfg);
    QContext ctx = context_of(cfg);
    double lo = rayleigh_lower_bound(cfg.q), hi = rayleigh_upper_bound(cfg.q);
    double below = 0.0, above = 0.0;
    for (int m = -cfg.m; m <= cfg.m; ++m) {
        RayleighRange r = rayleigh_range(sector_operator(m, ctx));
        below = std::max(below, lo - r.min);
        above = std::max(above, r.max - hi);
    }
    s.check("rayleigh_lower", "Rayleigh quotient >= 1/(1+q)^2", below, 1e-10);
    s.check("rayleigh_upper", "Rayleigh quotient <= 1/(1-q)^2", above, 1e-10);
    return s.done();
}

SuiteResult suite_green(const VerifyConfig& cfg) {
    Suite s("green", cfg);
    QContext ctx = context_of(cfg);
    std::mt19937_64 rng(cfg.seed + 2);
    GreenKernel g = green_kernel(ctx);
    const int interior = ctx.radial_levels - 4;
    double agree = 0.0, boxres = 0.0, dagree = 0.0;
    for (int i = 0; i < 10; ++i) {
        PolarFunction f = random_finite(rng, ctx, g.support_cap, g.support_cap, 4);
        PolarFunction u = poisson_solve(f, g), v = poisson_solve_linear(f);
        agree = std::max(agree, u.max_abs_diff(v) / std::max(v.max_abs(), 1e-300));
        PolarFunction b = box_apply(u);
        double sc = std::max(f.max_abs(), 1e-300);
        for (int m : b.modes())
            for (int n = 0; n < interior; ++n) boxres = std::max(boxres, std::abs(b.sample(m, n) - f.sample(m, n)) / sc);
        PolarFunction d1 = dbar_solve(f, g), d2 = dbar_solve_linear(f);
        dagree = std::max(dagree, d1.max_abs_diff(d2) / std::max(d2.max_abs(), 1e-300));
    }
    s.check("kernel_vs_linear", "Green kernel inverts box", agree, 1e-6);
    s.check("box_of_solution", "box G f = f", boxres, 1e-6);
    s.check("dbar_kernel_vs_linear", "Cauchy-Green solution kernel", dagree, 1e-6);
    const double q = cfg.q;
    NormalPoly z = NormalPoly::z(q), y = NormalPoly::y(q);
    std::vector<std::pair<std::string, NormalPoly>> cases = {{"z_y2", z * y * y}, {"y3", y * y * y}, {"z2_y2", z * z * y * y}};
    for (const auto& [name, f] : cases) {
        DbarReport r = cauchy_green_check(f, ctx);
        s.check("cauchy_green_dbar_" + name, "dbar u = f dz*", r.dbar_residual, 1e-6);
        s.check("cauchy_green_reproduce_" + name, "f = P f + u[df/dz*]", r.reproduce_residual, 1e-6);
        s.check("cauchy_green_orthogonal_" + name, "u orthogonal to holomorphic", r.orthogonality_defect, 1e-10);
    }
    return s.done();
}

SuiteResult suite_eigen(const VerifyConfig& cfg) {
    Suite s("eigen", cfg);
    QContext ctx = context_of(cfg);
    const double q = cfg.q;
    const int interior = ctx.radial_levels - 4;
    double eig = 0.0, sym = 0.0, direct = 0.0, modes = 0.0;
    for (cplx l : {cplx(0.3), cplx(0.7), cplx(1.0), cplx(-0.5, 0.5)}) {
        PolarFunction phi = spherical_phi(l, ctx), b = box_apply(phi);
        cplx lam = lambda_of_l(l, q);
        PolarFunction phi2 = spherical_phi(-1.0 - l, ctx);
        for (int n = 0; n < interior; ++n) {
            eig = std::max(eig, std::abs(b.sample(0, n) - lam * phi.sample(0, n)) / std::abs(lam * phi.sample(0, n)));
            sym = std::max(sym, std::abs(phi.sample(0, n) - phi2.sample(0, n)) / std::abs(phi.sample(0, n)));
        }
        for (int n = 0; n <= 5; ++n)
            direct = std::max(direct, std::abs(phi.sample(0, n) - spherical_phi_direct(l, n, q)) / std::abs(phi.sample(0, n)));
        for (int k : {-2, -1, 1, 2}) {
            PolarFunction u = poisson_extend(BoundaryPoly{{k, 1.0}}, l, ctx), bu = box_apply(u);
            for (int n = 0; n < interior - 2; ++n) {
                cplx v = lam * u.sample(k, n);
                if (std::abs(v) > 1e-250) modes = std::max(modes, std::abs(bu.sample(k, n) - v) / std::abs(v));
            }
        }
    }
    s.check("phi_eigen", "box phi_l = lambda(l) phi_l", eig, 1e-8);
    s.check("phi_symmetry", "phi_l = phi_{-1-l}", sym, 1e-12);
    s.check("phi_direct_3phi2", "terminating 3phi2 form of phi_l", direct, 1e-8);
    s.check("poisson_modes_eigen", "box P_{l+1} = lambda(l) P_{l+1}", modes, 1e-8);
    cplx l(0.3);
    QContext c41 = ctx;
    c41.radial_levels = std::max(ctx.radial_levels, 41);
    cplx asym = spherical_phi(l, c41).sample(0, 40) * std::pow(q, 2.0 * 40 * l);
    s.check("asymptotics_n40", "phi_l(q^{2n}) q^{2nl} -> c(l)", std::abs(asym - c_function(l, q)), 1e-4);
    Recovery r0 = boundary_recover(poisson_extend(BoundaryPoly{{0, 1.0}}, l, ctx), l);
    Recovery r1 = boundary_recover(poisson_extend(BoundaryPoly{{1, 1.0}}, l, ctx), l);
    auto err = [](const Recovery& r, int k) {
        double e = 0.0;
        for (const auto& [m, v] : r.value) e = std::max(e, std::abs(v - (m == k ? cplx(1.0) : cplx(0.0))));
        return e;
    };
    s.check("recover_one", "boundary recovery of 1", err(r0, 0), 1e-3);
    s.check("recover_e_itheta", "boundary recovery of e^{i theta}", err(r1, 1), 1e-3);
    return s.done();
}

SuiteResult suite_fourier(const VerifyConfig& cfg) {
    Suite s("fourier", cfg);
    QContext ctx = context_of(cfg);
    const double q = cfg.q;
    NormalPoly z = NormalPoly::z(q), zs = NormalPoly::zstar(q), y = NormalPoly::y(q);
    std::vector<NormalPoly> family = {y, y * y, z * y, z * y * y, y * zs, z * z * y * y * y};
    std::vector<PolarFunction> us;
    std::vector<FourierImage> fs;
    for (const NormalPoly& p : family) {
        us.push_back(to_polar(p, ctx));
        fs.push_back(fourier_forward(us.back(), cfg.nodes));
    }
    double inv = 0.0, pars = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        inv = std::max(inv, (fourier_inverse(fs[i]) - us[i]).max_abs() / us[i].max_abs());
        for (std::size_t j = 0; j < us.size(); ++j) {
            cplx a = nu_inner(us[i], us[j]);
            if (std::abs(a) == 0.0) continue;
            pars = std::max(pars, std::abs(spectral_inner(fs[i], fs[j]) - a) / std::abs(a));
        }
    }
    s.check("inverse_roundtrip", "F^-1 F = id", inv, 1e-4);
    s.check("parseval", "F unitary", pars, 1e-4);
    auto inv_err = [&](int nodes) {
        return (fourier_inverse(fourier_forward(us[3], nodes)) - us[3]).max_abs() / us[3].max_abs();
    };
    double e8 = inv_err(8), e16 = inv_err(16), e32 = inv_err(32);
    // doubling the nodes must cut the error at least 4x
    s.check("convergence_8_16", "quadrature convergence", e16 / e8, 0.25);
    s.check("convergence_16_32", "quadrature convergence", e32 / e16, 0.25);
    PolarFunction bu = box_apply(us[3]);
    FourierImage fb = fourier_forward(bu, cfg.nodes);
    const FourierImage& fu = fs[3];
    double inter = 0.0, scale = 0.0;
    for (int i = 0; i < fu.node_count(); ++i) {
        cplx lam = lambda_of_l(cplx(-0.5, fu.nodes[i]), q);
        inter = std::max(inter, std::abs(fb.values.at(1)[i] - lam * fu.values.at(1)[i]));
        scale = std::max(scale, std::abs(lam * fu.values.at(1)[i]));
    }
    s.check("intertwines_box", "F box = lambda F", inter / scale, 1e-5);
    double neg = 0.0;
    for (int i = 0; i <= 200; ++i) neg = std::max(neg, -plancherel_density(rho_max(q) * i / 200.0, q));
    s.check("density_nonnegative", "Plancherel density >= 0", neg, 0.0);
    return s.done();
}

SuiteResult suite_berezin(const VerifyConfig& cfg) {
    Suite s("berezin", cfg);
    const double q = cfg.q;
    QContext ctx = context_of(cfg);
    std::vector<NormalPoly> mono;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) mono.push_back(NormalPoly::monomial(q, a, b));
    NormalPoly one = NormalPoly::constant(q, 1.0);
    NormalPoly w = one - NormalPoly::zstar(q) * NormalPoly::z(q);
    double c1 = 0.0, tpl = 0.0, unit = 0.0;
    int order = 0;
    const int K = std::max(cfg.order, 1);
    for (const auto& f1 : mono)
        for (const auto& f2 : mono) {
            PartialDerivatives d1 = partial_derivatives(f1), d2 = partial_derivatives(f2);
            NormalPoly expect = d1.dzstar_right * (w * w) * d2.dz_left * cplx(1.0 / (q * q) - 1.0);
            c1 = std::max(c1, max_abs_diff(c_k_extract(f1, f2, 1), expect));
            for (int k = 1; k <= std::min(K, 3); ++k) {
                TemplateCheck t = template_check(f1, f2, k);
                tpl = std::max(tpl, t.residual);
                order = std::max(order, t.order - k);
            }
        }
    for (const auto& f : mono) {
        FormalSeries a = star_product(one, f, K), b = star_product(f, one, K);
        for (int k = 1; k <= K; ++k) unit = std::max({unit, a[k].max_abs(), b[k].max_abs()});
    }
    std::mt19937_64 rng(cfg.seed + 3);
    std::uniform_int_distribution<std::size_t> pick(0, mono.size() - 1);
    double assoc = 0.0;
    for (int i = 0; i < 60; ++i) {
        const NormalPoly &f1 = mono[pick(rng)], &f2 = mono[pick(rng)], &f3 = mono[pick(rng)];
        for (int m = 0; m <= 3; ++m) assoc = std::max(assoc, associativity_defect(f1, f2, f3, m).max_abs());
    }
    s.check("c1_formula", "C_1 = (q^-2 - 1) df1/dz* (1 - z*z)^2 df2/dz", c1, 1e-12);
    s.check("bidifferential_template", "C_k is q-bidifferential", tpl, 1e-12);
    s.check("template_order", "derivative order of C_k <= k", double(std::max(order, 0)), 0.0);
    s.check("unit", "1 * f = f * 1 = f", unit, 1e-12);
    s.check("associativity_t3", "formal associativity", assoc, 1e-12);
    double relres = 0.0;
    QContext rc = ctx;
    for (double alpha : {2.0, 3.0, 4.0}) relres = std::max(relres, bargmann_ops(alpha, rc).relation_residual(rc.radial_levels - 2));
    s.check("bargmann_relation", "z^* z relation in the weighted Bergman space", relres, 1e-12);
    double lo = 1e300, hi = 0.0;
    NormalPoly f1 = NormalPoly::zstar(q) * NormalPoly::z(q), f2 = NormalPoly::z(q) * NormalPoly::zstar(q) * NormalPoly::zstar(q);
    for (double alpha : {2.0, 3.0, 4.0}) {
        QuantizationReport r = quantization_oracle(f1, f2, alpha, 1, ctx);
        lo = std::min(lo, r.scaled);
        hi = std::max(hi, r.scaled);
    }
    s.check("quantization_scaling", "residual ~ q^{4 alpha (K+1)}", hi / lo, 3.0);
    return s.done();
}

const std::map<std::string, std::function<SuiteResult(const VerifyConfig&)>>& registry() {
    static const std::map<std::string, std::function<SuiteResult(const VerifyConfig&)>> r = {
        {"qspecial", suite_qspecial}, {"algebra", suite_algebra}, {"stokes", suite_stokes},
        {"spectral", suite_spectral}, {"green", suite_green},     {"eigen", suite_eigen},
        {"fourier", suite_fourier},   {"berezin", suite_berezin}};
    return r;
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(tests.begin(), tests.end(), [](const CheckResult& c) { return c.pass; });
}

bool VerifyReport::pass() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass(); });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"qspecial", "algebra", "stokes", "spectral",
                                                   "green",    "eigen",   "fourier", "berezin"};
    return names;
}

bool is_suite(const std::string& name) { return name == "all" || registry().count(name) != 0; }

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
    auto it = registry().find(name);
    if (it == registry().end()) throw InvalidArgument("unknown suite: " + name);
    return it->second(cfg);
}

VerifyReport run_verify(const std::string& suite, const VerifyConfig& cfg) {
    if (!is_suite(suite)) throw InvalidArgument("unknown suite: " + suite);
    VerifyReport r{cfg, {}};
    if (suite == "all")
        for (const auto& n : suite_names()) r.suites.push_back(run_suite(n, cfg));
    else
        r.suites.push_back(run_suite(suite, cfg));
    return r;
}

nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json cfg = {{"q", r.config.q},         {"n", r.config.n},       {"m", r.config.m},
                          {"order", r.config.order}, {"nodes", r.config.nodes}, {"seed", r.config.seed}};
    cfg["tol"] = r.config.tol ? nlohmann::json(*r.config.tol) : nlohmann::json(nullptr);
    nlohmann::json suites = nlohmann::json::array();
    for (const auto& s : r.suites) {
        nlohmann::json tests = nlohmann::json::array();
        for (const auto& t : s.tests)
            tests.push_back({{"id", t.id}, {"paper_ref", t.paper_ref}, {"value", t.value}, {"bound", t.bound}, {"pass", t.pass}});
        suites.push_back({{"name", s.name}, {"tests", tests}, {"pass", s.pass()}});
    }
    return {{"config", cfg}, {"suites", suites}, {"pass", r.pass()}};
}

std::string to_csv(const VerifyReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "suite,id,value,bound,pass\n";
    for (const auto& s : r.suites)
        for (const auto& t : s.tests) os << s.name << ',' << t.id << ',' << t.value << ',' << t.bound << ',' << (t.pass ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace qdisc
