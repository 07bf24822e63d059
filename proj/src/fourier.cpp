#include "qdisc/fourier.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "qdisc/harmonic.hpp"
#include "qdisc/qspecial.hpp"

namespace qdisc {

namespace {

double nu_weight(int mode, int k, double q) {
    double q2 = q * q;
    int a = std::abs(mode);
    int n = mode >= 0 ? k : k + a;
    return (1.0 - q2) * qpoch(std::pow(q2, k + 1), q2, a).real() * std::pow(q2, -n);
}

cplx gamma_of(double rho) { return cplx(0.5, rho); }

}  // namespace

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
    if (!(b > a)) throw InvalidArgument("gauss_legendre: empty interval");
    Quadrature g;
    g.nodes.resize(n);
    g.weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = x;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = mid - half * x;
        g.nodes[n - 1 - i] = mid + half * x;
        g.weights[i] = g.weights[n - 1 - i] = half * w;
    }
    return g;
}

double rho_max(double q) { return std::numbers::pi / (-2.0 * std::log(q)); }

double plancherel_density(double rho, double q) {
    if (rho < 0.0 || rho > rho_max(q) * (1.0 + 1e-12))
        throw InvalidArgument("plancherel_density: rho outside [0, pi/h]");
    const double h = -2.0 * std::log(q);
    cplx c1, c2;
    try {
        c1 = c_function(cplx(-0.5, rho), q);
        c2 = c_function(cplx(-0.5, -rho), q);
    } catch (const PoleError&) {
        return 0.0;  // rho = 0 or pi/h: Gamma_{q^2}(2l+1) has a pole, 1/c -> 0
    }
    double pre = h * std::exp(h) / (std::exp(h) - 1.0) / (2.0 * std::numbers::pi);
    return (pre / (c1 * c2)).real();
}

FourierImage fourier_forward(const PolarFunction& u, int nodes) {
    if (nodes < 2) throw InvalidArgument("fourier_forward: need at least two nodes");
    const QContext& ctx = u.ctx();
    Quadrature g = gauss_legendre(nodes, 0.0, rho_max(ctx.q));
    FourierImage out{ctx, g.nodes, g.weights, {}};
    const int N = ctx.radial_levels;
    for (int m : u.modes()) {
        const std::vector<cplx>& s = u.samples(m);
        std::vector<cplx> w(N);
        bool any = false;
        for (int n = 0; n < N; ++n) {
            w[n] = nu_weight(m, n, ctx.q) * s[n];
            any = any || s[n] != 0.0;
        }
        if (!any) continue;
        std::vector<cplx> vals(nodes);
        for (int i = 0; i < nodes; ++i) {
            // transpose kernel paired against u: <u, P_{1/2+i rho} e^{im theta}>_nu
            std::vector<cplx> e = poisson_mode_samples(gamma_of(g.nodes[i]), m, ctx);
            cplx acc = 0.0;
            for (int n = 0; n < N; ++n) acc += w[n] * std::conj(e[n]);
            vals[i] = acc;
        }
        out.values.emplace(m, std::move(vals));
    }
    return out;
}

PolarFunction fourier_inverse(const FourierImage& g) {
    const QContext& ctx = g.ctx;
    const int N = ctx.radial_levels;
    PolarFunction out(ctx);
    std::vector<double> dens(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) dens[i] = g.weights[i] * plancherel_density(g.nodes[i], ctx.q);
    for (const auto& [m, vals] : g.values) {
        std::vector<cplx> s(N, 0.0);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (vals[i] == 0.0) continue;
            std::vector<cplx> e = poisson_mode_samples(gamma_of(g.nodes[i]), m, ctx);
            cplx c = dens[i] * vals[i];
            for (int n = 0; n < N; ++n) s[n] += c * e[n];
        }
        out.set_mode(m, std::move(s));
    }
    return out;
}

cplx spectral_inner(const FourierImage& f, const FourierImage& g) {
    if (f.nodes != g.nodes) throw InvalidArgument("spectral_inner: images on different node grids");
    cplx acc = 0.0;
    for (const auto& [m, a] : f.values) {
        auto it = g.values.find(m);
        if (it == g.values.end()) continue;
        for (std::size_t i = 0; i < f.nodes.size(); ++i)
            acc += f.weights[i] * plancherel_density(f.nodes[i], f.ctx.q) * a[i] * std::conj(it->second[i]);
    }
    return acc;
}

cplx nu_inner(const PolarFunction& u, const PolarFunction& v) {
    std::set<int> modes;
    for (int m : u.modes()) modes.insert(m);
    cplx acc = 0.0;
    for (int m : modes) {
        if (!v.has_mode(m)) continue;
        for (int n = 0; n < u.levels(); ++n)
            acc += nu_weight(m, n, u.ctx().q) * u.sample(m, n) * std::conj(v.sample(m, n));
    }
    return acc;
}

}  // namespace qdisc
