#include "qdisc/forms.hpp"

#include <cmath>

namespace qdisc {

namespace {

double qint(int n, double x) {
    double s = 0.0, p = 1.0;
    for (int r = 0; r < n; ++r) {
        s += p;
        p *= x;
    }
    return s;
}

NormalPoly scale_by_mode(const NormalPoly& f, double base) {
    NormalPoly out(f.q());
    for (const auto& [k, c] : f.terms()) out.add_term(k.first, k.second, c * std::pow(base, k.first - k.second));
    return out;
}

// d-bar coefficient (right) and d coefficient (left) of a function
NormalPoly h_right(const NormalPoly& f) {
    double qm2 = 1.0 / (f.q() * f.q());
    NormalPoly out(f.q());
    for (const auto& [k, c] : f.terms())
        if (k.second > 0) out.add_term(k.first, k.second - 1, c * qint(k.second, qm2));
    return out;
}

NormalPoly g_left(const NormalPoly& f) {
    double qm2 = 1.0 / (f.q() * f.q());
    NormalPoly out(f.q());
    for (const auto& [k, c] : f.terms())
        if (k.first > 0) out.add_term(k.first - 1, k.second, c * qint(k.first, qm2));
    return out;
}

}  // namespace

DiffForm DiffForm::function(const NormalPoly& f) {
    DiffForm w(f.q());
    w.f00 = f;
    return w;
}

DiffForm DiffForm::dz(double q) { return left_dz(NormalPoly::constant(q, 1.0)); }
DiffForm DiffForm::dzstar(double q) { return right_dzstar(NormalPoly::constant(q, 1.0)); }

DiffForm DiffForm::left_dz(const NormalPoly& f) {
    DiffForm w(f.q());
    w.f10 = f;
    return w;
}

DiffForm DiffForm::right_dzstar(const NormalPoly& f) {
    DiffForm w(f.q());
    w.f01 = f;
    return w;
}

DiffForm DiffForm::top(const NormalPoly& f) {
    DiffForm w(f.q());
    w.f11 = f;
    return w;
}

double DiffForm::max_abs() const {
    return std::max(std::max(f00.max_abs(), f10.max_abs()), std::max(f01.max_abs(), f11.max_abs()));
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
    DiffForm w(a.q());
    w.f00 = a.f00 + b.f00;
    w.f10 = a.f10 + b.f10;
    w.f01 = a.f01 + b.f01;
    w.f11 = a.f11 + b.f11;
    return w;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + b * -1.0; }

DiffForm operator*(const DiffForm& a, cplx c) {
    DiffForm w = a;
    w.f00 *= c;
    w.f10 *= c;
    w.f01 *= c;
    w.f11 *= c;
    return w;
}

DiffForm operator*(const DiffForm& a, const DiffForm& b) { return form_multiply(a, b); }

double max_abs_diff(const DiffForm& a, const DiffForm& b) { return (a - b).max_abs(); }

NormalPoly sigma(const NormalPoly& f, int power) { return scale_by_mode(f, std::pow(f.q(), 2.0 * power)); }

DiffForm form_multiply(const DiffForm& a, const DiffForm& b) {
    const double q2 = a.q() * a.q();
    DiffForm w(a.q());
    // g dz = dz sigma^{-1}(g);  dz* g = sigma(g) dz*;  dz* dz = -q^2 dz dz*
    NormalPoly s_inv_a00 = sigma(a.f00, -1);
    w.f00 = a.f00 * b.f00;
    w.f10 = s_inv_a00 * b.f10 + a.f10 * b.f00;
    w.f01 = a.f00 * b.f01 + a.f01 * sigma(b.f00, 1);
    w.f11 = s_inv_a00 * b.f11 + a.f10 * b.f01 - q2 * (sigma(a.f01, -1) * sigma(b.f10, 1)) + a.f11 * sigma(b.f00, 1);
    return w;
}

DiffForm involution(const DiffForm& w) {
    DiffForm r(w.q());
    r.f00 = involution(w.f00);
    r.f10 = involution(w.f01);
    r.f01 = involution(w.f10);
    r.f11 = involution(w.f11);
    return r;
}

DSplit split_d(const DiffForm& w) {
    DSplit s{DiffForm(w.q()), DiffForm(w.q())};
    s.del.f10 = g_left(w.f00);
    s.delbar.f01 = h_right(w.f00);
    // d(dz f10) = -dz (dbar f10);  d(f01 dz*) = (del f01) dz*
    s.delbar.f11 = -h_right(w.f10);
    s.del.f11 = g_left(w.f01);
    return s;
}

DiffForm exterior_d(const DiffForm& w) {
    DSplit s = split_d(w);
    return s.del + s.delbar;
}

DiffForm exterior_d_leibniz(const NormalPoly& f) {
    const double q = f.q();
    DiffForm out(q);
    DiffForm z = DiffForm::function(NormalPoly::z(q));
    DiffForm zs = DiffForm::function(NormalPoly::zstar(q));
    DiffForm one = DiffForm::function(NormalPoly::constant(q, 1.0));
    for (const auto& [key, c] : f.terms()) {
        std::vector<int> letters(key.first, 0);
        letters.insert(letters.end(), key.second, 1);
        for (std::size_t i = 0; i < letters.size(); ++i) {
            DiffForm term = one;
            for (std::size_t j = 0; j < letters.size(); ++j) {
                if (j == i)
                    term = term * (letters[j] == 0 ? DiffForm::dz(q) : DiffForm::dzstar(q));
                else
                    term = term * (letters[j] == 0 ? z : zs);
            }
            out = out + term * c;
        }
    }
    return out;
}

PartialDerivatives partial_derivatives(const NormalPoly& f) {
    PartialDerivatives p{g_left(f), NormalPoly(f.q()), NormalPoly(f.q()), h_right(f)};
    p.dz_right = sigma(p.dz_left, 1);
    p.dzstar_left = sigma(p.dzstar_right, -1);
    return p;
}

RadialPoly radial_dbar(const RadialPoly& p, double q) {
    if (p.size() <= 1) return RadialPoly{0.0};
    RadialPoly r(p.size() - 1, 0.0);
    const double q2 = q * q;
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * (1.0 - std::pow(q2, static_cast<double>(i))) / (1.0 - q2);
    return r;
}

namespace {

struct Extended {
    std::vector<cplx> s;  // samples 0..N (one beyond the truncation)
};

Extended extend(const PolarFunction& f, int m) {
    const int N = f.levels();
    Extended e{std::vector<cplx>(N + 1, 0.0)};
    for (int n = 0; n < N; ++n) e.s[n] = f.samples(m)[n];
    if (const RadialPoly* p = f.closed(m)) e.s[N] = eval_radial(*p, f.ctx().y(N));
    return e;
}

// (D psi)_n = (psi_n - psi_{n+1}) / ((1-q^2) q^{2n}), n = 0..N-1
std::vector<cplx> difference(const Extended& e, const QContext& ctx) {
    const int N = ctx.radial_levels;
    std::vector<cplx> d(N);
    for (int n = 0; n < N; ++n) d[n] = (e.s[n] - e.s[n + 1]) / ((1.0 - ctx.q2()) * ctx.y(n));
    return d;
}

// [p] psi_k - q^{-2p} (1 - y_k) (D psi)_{k-1}
std::vector<cplx> lowering(const Extended& e, const std::vector<cplx>& d, int p, const QContext& ctx) {
    const int N = ctx.radial_levels;
    const double qm2 = 1.0 / ctx.q2();
    const double qp = qint(p, qm2), w = std::pow(qm2, p);
    std::vector<cplx> out(N);
    for (int k = 0; k < N; ++k) out[k] = qp * e.s[k] - (k > 0 ? w * (1.0 - ctx.y(k)) * d[k - 1] : cplx(0.0));
    return out;
}

PolarFunction exact_route(const PolarFunction& f, bool dbar) {
    NormalPoly g = from_polar(f);
    PartialDerivatives p = partial_derivatives(g);
    return to_polar(dbar ? p.dzstar_right : p.dz_left, f.ctx());
}

}  // namespace

PolarFunction dbar_coefficient(const PolarFunction& f) {
    if (f.exact()) return exact_route(f, true);
    const QContext& ctx = f.ctx();
    PolarFunction out(ctx);
    for (int m : f.modes()) {
        Extended e = extend(f, m);
        std::vector<cplx> d = difference(e, ctx);
        PolarFunction part(ctx);
        if (m >= 0) {
            for (cplx& v : d) v = -v;
            part.set_mode(m + 1, std::move(d));
        } else {
            part.set_mode(m + 1, lowering(e, d, -m, ctx));
        }
        out += part;
    }
    return out;
}

PolarFunction del_coefficient(const PolarFunction& f) {
    if (f.exact()) return exact_route(f, false);
    const QContext& ctx = f.ctx();
    PolarFunction out(ctx);
    for (int m : f.modes()) {
        Extended e = extend(f, m);
        std::vector<cplx> d = difference(e, ctx);
        PolarFunction part(ctx);
        if (m > 0) {
            part.set_mode(m - 1, lowering(e, d, m, ctx));
        } else {
            for (cplx& v : d) v = -v;
            part.set_mode(m - 1, std::move(d));
        }
        out += part;
    }
    return out;
}

TwistedSection twisted_from_left(const NormalPoly& f, double lambda) {
    // v z = q^lambda z v,  v z* = q^{-lambda} z* v
    return TwistedSection{0, scale_by_mode(f, std::pow(f.q(), lambda)), lambda};
}

TwistedSection dbar_twisted(const TwistedSection& s) {
    if (s.grade != 0) throw InvalidArgument("dbar_twisted: expects a grade-0 section");
    // dbar(f v) = h dz* v = q^lambda h v dz*
    return TwistedSection{1, h_right(s.f) * std::pow(s.f.q(), s.lambda), s.lambda};
}

}  // namespace qdisc
