#include "qdisc/polar.hpp"

#include <algorithm>
#include <cmath>

namespace qdisc {

cplx eval_radial(const RadialPoly& p, cplx y) {
    cplx r = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * y + *it;
    return r;
}

RadialPoly radial_pochhammer(int k, double q) {
    RadialPoly p{1.0};
    for (int i = 0; i < k; ++i) {
        double f = std::pow(q, -2.0 * i);
        RadialPoly n(p.size() + 1, 0.0);
        for (std::size_t a = 0; a < p.size(); ++a) {
            n[a] += p[a];
            n[a + 1] -= f * p[a];
        }
        p = std::move(n);
    }
    return p;
}

PolarFunction::PolarFunction(const QContext& ctx) : ctx_(ctx), zeros_(ctx.radial_levels, 0.0) { ctx_.validate(); }

PolarFunction PolarFunction::indicator(const QContext& ctx, int mode, int level, cplx value) {
    PolarFunction f(ctx);
    std::vector<cplx> s(ctx.radial_levels, 0.0);
    if (level < 0 || level >= ctx.radial_levels) throw InvalidArgument("indicator: level out of range");
    s[level] = value;
    f.set_mode(mode, std::move(s));
    return f;
}

void PolarFunction::check_mode(int m) const {
    if (std::abs(m) > ctx_.angular_cutoff)
        throw AngularOverflow("mode " + std::to_string(m) + " exceeds angular cutoff " +
                              std::to_string(ctx_.angular_cutoff));
}

void PolarFunction::set_mode(int m, std::vector<cplx> samples) {
    check_mode(m);
    if (static_cast<int>(samples.size()) != levels()) throw InvalidArgument("set_mode: wrong sample count");
    modes_[m] = Mode{std::move(samples), std::nullopt};
}

void PolarFunction::set_mode_closed(int m, RadialPoly p) {
    check_mode(m);
    std::vector<cplx> s(levels());
    for (int n = 0; n < levels(); ++n) s[n] = eval_radial(p, ctx_.y(n));
    modes_[m] = Mode{std::move(s), std::move(p)};
}

std::vector<int> PolarFunction::modes() const {
    std::vector<int> out;
    for (const auto& [m, v] : modes_) out.push_back(m);
    return out;
}

const std::vector<cplx>& PolarFunction::samples(int m) const {
    auto it = modes_.find(m);
    return it == modes_.end() ? zeros_ : it->second.samples;
}

cplx PolarFunction::sample(int m, int n) const {
    if (n < 0 || n >= levels()) return 0.0;
    return samples(m)[n];
}

const RadialPoly* PolarFunction::closed(int m) const {
    auto it = modes_.find(m);
    if (it == modes_.end() || !it->second.closed) return nullptr;
    return &*it->second.closed;
}

bool PolarFunction::exact() const {
    return std::all_of(modes_.begin(), modes_.end(), [](const auto& kv) { return kv.second.closed.has_value(); });
}

double PolarFunction::max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : modes_)
        for (const cplx& c : v.samples) m = std::max(m, std::abs(c));
    return m;
}

double PolarFunction::max_abs_diff(const PolarFunction& o) const {
    PolarFunction d = *this;
    d -= o;
    return d.max_abs();
}

PolarFunction& PolarFunction::operator+=(const PolarFunction& o) {
    if (o.levels() != levels()) throw InvalidArgument("PolarFunction: level count mismatch");
    for (const auto& [m, v] : o.modes_) {
        auto it = modes_.find(m);
        if (it == modes_.end()) {
            modes_[m] = v;
            continue;
        }
        for (int n = 0; n < levels(); ++n) it->second.samples[n] += v.samples[n];
        if (it->second.closed && v.closed) {
            RadialPoly& p = *it->second.closed;
            if (p.size() < v.closed->size()) p.resize(v.closed->size(), 0.0);
            for (std::size_t i = 0; i < v.closed->size(); ++i) p[i] += (*v.closed)[i];
        } else {
            it->second.closed.reset();
        }
    }
    return *this;
}

PolarFunction& PolarFunction::operator-=(const PolarFunction& o) {
    PolarFunction neg = o;
    neg *= -1.0;
    return *this += neg;
}

PolarFunction& PolarFunction::operator*=(cplx c) {
    for (auto& [m, v] : modes_) {
        for (cplx& s : v.samples) s *= c;
        if (v.closed)
            for (cplx& a : *v.closed) a *= c;
    }
    return *this;
}

PolarFunction operator+(PolarFunction a, const PolarFunction& b) { return a += b; }
PolarFunction operator-(PolarFunction a, const PolarFunction& b) { return a -= b; }
PolarFunction operator*(PolarFunction a, cplx c) { return a *= c; }
PolarFunction operator*(cplx c, PolarFunction a) { return a *= c; }

PolarFunction to_polar(const NormalPoly& f, const QContext& ctx) {
    std::map<int, RadialPoly> radial;
    for (const auto& [key, c] : f.terms()) {
        auto [j, k] = key;
        // z^j z*^k = z^{j-k} (y;q^-2)_k  or  (y;q^-2)_j z*^{k-j}
        int mode = j - k;
        if (std::abs(mode) > ctx.angular_cutoff)
            throw AngularOverflow("to_polar: mode " + std::to_string(mode) + " exceeds angular cutoff");
        RadialPoly p = radial_pochhammer(std::min(j, k), f.q());
        RadialPoly& acc = radial[mode];
        if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) acc[i] += c * p[i];
    }
    PolarFunction out(ctx);
    for (auto& [m, p] : radial) out.set_mode_closed(m, std::move(p));
    return out;
}

NormalPoly from_polar(const PolarFunction& f) {
    const double q = f.ctx().q;
    NormalPoly out(q);
    NormalPoly y = NormalPoly::y(q);
    for (int m : f.modes()) {
        const RadialPoly* p = f.closed(m);
        if (!p) throw NotPolynomial("from_polar: mode " + std::to_string(m) + " has no closed polynomial form");
        NormalPoly rad(q);
        NormalPoly yi = NormalPoly::constant(q, 1.0);
        for (std::size_t i = 0; i < p->size(); ++i) {
            rad += yi * (*p)[i];
            yi = yi * y;
        }
        if (m >= 0)
            out += NormalPoly::monomial(q, m, 0) * rad;
        else
            out += rad * NormalPoly::monomial(q, 0, -m);
    }
    return out;
}

PolarFunction multiply_radial_right(const PolarFunction& f, const std::vector<cplx>& g) {
    const int N = f.levels();
    PolarFunction out(f.ctx());
    for (int m : f.modes()) {
        // z*^P g(y) = g(q^{2P} y) z*^P
        int shift = m < 0 ? -m : 0;
        std::vector<cplx> s(N, 0.0);
        for (int n = 0; n < N; ++n) {
            int idx = n + shift;
            cplx gv = idx < static_cast<int>(g.size()) ? g[idx] : cplx(0.0);
            s[n] = f.samples(m)[n] * gv;
        }
        out.set_mode(m, std::move(s));
    }
    return out;
}

}  // namespace qdisc
