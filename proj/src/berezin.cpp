#include "qdisc/berezin.hpp"

#include <cmath>
#include <cstring>
#include <mutex>
#include <tuple>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "qdisc/rep.hpp"

namespace qdisc {

namespace {

using R = mpq_class;
using EPoly = std::map<std::pair<int, int>, R>;
using ETensor = std::map<std::array<int, 4>, R>;
using ETemplate = std::map<std::array<int, 4>, R>;

template <class Map, class Key>
void accumulate(Map& m, const Key& k, const R& v) {
    if (v == 0) return;
    auto [it, ins] = m.try_emplace(k, v);
    if (!ins) {
        it->second += v;
        if (it->second == 0) m.erase(it);
    }
}

R rpow(const R& x, int n) {
    R r = 1;
    R b = n >= 0 ? x : R(1 / x);
    for (int i = 0; i < std::abs(n); ++i) r *= b;
    return r;
}

// exact arithmetic for one value of q
class Exact {
public:
    explicit Exact(double q) : q2_(R(q) * R(q)) { q2_.canonicalize(); }

    const R& q2() const { return q2_; }
    R qi2() const { return 1 / q2_; }

    // [n]_{q^-2}
    R qnum(int n) const {
        R r = qi2();
        return (1 - rpow(r, n)) / (1 - r);
    }

    // z*^b z^c = sum_i e_i z^{c-i} z*^{b-i}
    const std::vector<R>& reorder(int b, int c) {
        auto key = std::make_pair(b, c);
        if (auto it = reorder_.find(key); it != reorder_.end()) return it->second;
        std::vector<R> out;
        if (b == 0 || c == 0) {
            out = {R(1)};
        } else {
            std::vector<R> prev = reorder(b - 1, c);
            std::vector<R> prevm = reorder(b - 1, c - 1);
            R qc = rpow(q2_, c);
            out.assign(std::min(b, c) + 1, R(0));
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (i < prev.size()) out[i] += qc * prev[i];
                if (i >= 1 && i - 1 < prevm.size()) out[i] += (1 - qc) * prevm[i - 1];
            }
        }
        return reorder_.emplace(key, std::move(out)).first->second;
    }

    EPoly mul(const EPoly& a, const EPoly& b) {
        EPoly out;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                const std::vector<R>& e = reorder(ka.second, kb.first);
                for (std::size_t i = 0; i < e.size(); ++i)
                    accumulate(out, std::make_pair(ka.first + kb.first - int(i), ka.second + kb.second - int(i)),
                               R(ca * cb * e[i]));
            }
        return out;
    }

    EPoly collapse(const ETensor& t) {
        EPoly out;
        for (const auto& [k, c] : t)
            for (const auto& [m, v] : mul({{{k[0], k[1]}, R(1)}}, {{{k[2], k[3]}, R(1)}})) accumulate(out, m, R(c * v));
        return out;
    }

    // prefactor entries (i, weight): (c z*^i) (x) (z^i d)
    std::array<R, 3> prefactor() const {
        R qi = qi2();
        return {qi, R(-qi * (1 + qi)), R(qi * qi)};
    }

    ETensor box(const ETensor& x) const {
        auto pre = prefactor();
        ETensor out;
        for (const auto& [k, c] : x) {
            if (k[1] == 0 || k[2] == 0) continue;
            R d = c * qnum(k[1]) * qnum(k[2]);
            // derivative leaves z^a z*^{b-1} (x) z^{c-1} z*^d, prefactor adds z*^i on the right / z^i on the left
            for (int i = 0; i < 3; ++i) accumulate(out, std::array<int, 4>{k[0], k[1] - 1 + i, k[2] - 1 + i, k[3]}, R(d * pre[i]));
        }
        return out;
    }

    // (1 - q^{2i})(1 - q^{2i+2}) x - q^{2i}(1 - q^2)^2 box~ x
    ETensor factor(int i, const ETensor& x) const {
        R qi = rpow(q2_, i);
        R s = (1 - qi) * (1 - qi * q2_);
        R b = -qi * (1 - q2_) * (1 - q2_);
        ETensor out;
        for (const auto& [k, c] : x) accumulate(out, k, R(s * c));
        for (const auto& [k, c] : box(x)) accumulate(out, k, R(b * c));
        return out;
    }

    // (q^{-2j}; q^2)_k / (q^2; q^2)_k^2 q^{2k}
    R pcoef(int j, int k) const {
        R num = 1, den = 1, a = rpow(q2_, -j), p = q2_;
        for (int i = 0; i < k; ++i) {
            num *= 1 - a;
            den *= 1 - p;
            a *= q2_;
            p *= q2_;
        }
        return num / (den * den) * rpow(q2_, k);
    }

    // nested products prod_{i<k} factor_i applied to x, k = 0..K
    std::vector<ETensor> nested(const ETensor& x, int K) const {
        std::vector<ETensor> out = {x};
        for (int k = 1; k <= K; ++k) out.push_back(factor(k - 1, out.back()));
        return out;
    }

    // C_0..C_K of z^a z*^b, z^c z*^d
    std::vector<EPoly> star_monomials(int a, int b, int c, int d, int K) {
        std::vector<ETensor> nest = nested({{{a, b, c, d}, R(1)}}, K);
        std::vector<EPoly> coll;
        for (const ETensor& t : nest) coll.push_back(collapse(t));
        std::vector<EPoly> mp;
        for (int j = 0; j <= K; ++j) {
            EPoly s;
            for (int k = 0; k <= j; ++k) {
                R w = pcoef(j, k);
                for (const auto& [m, v] : coll[k]) accumulate(s, m, R(w * v));
            }
            mp.push_back(std::move(s));
        }
        std::vector<EPoly> out = {mp[0]};
        for (int k = 1; k <= K; ++k) {
            EPoly s = mp[k];
            for (const auto& [m, v] : mp[k - 1]) accumulate(s, m, R(-v));
            out.push_back(std::move(s));
        }
        return out;
    }

    ETemplate bidiff_template(int k) const {
        auto pre = prefactor();
        R qi = qi2();
        auto box_t = [&](const ETemplate& x) {
            ETemplate out;
            for (const auto& [key, c] : x) {
                auto [a, s, b, t] = key;
                // d/dz*(g z*^s) = q^{-2s} (d g) z*^s + [s] g z*^{s-1};  d/dz(z^t h) = [t] z^{t-1} h + q^{-2t} z^t d h
                std::vector<std::tuple<int, int, R>> first = {{a + 1, s, rpow(qi, s)}};
                if (s > 0) first.emplace_back(a, s - 1, qnum(s));
                std::vector<std::tuple<int, int, R>> second = {{b + 1, t, rpow(qi, t)}};
                if (t > 0) second.emplace_back(b, t - 1, qnum(t));
                for (const auto& [fa, fs, cf] : first)
                    for (const auto& [gb, gt, cg] : second)
                        for (int i = 0; i < 3; ++i)
                            accumulate(out, std::array<int, 4>{fa, fs + i, gb, gt + i}, R(c * cf * cg * pre[i]));
            }
            return out;
        };
        std::vector<ETemplate> nest = {{{{0, 0, 0, 0}, R(1)}}};
        for (int m = 1; m <= k; ++m) {
            R qm = rpow(q2_, m - 1);
            R s = (1 - qm) * (1 - qm * q2_);
            R b = -qm * (1 - q2_) * (1 - q2_);
            ETemplate out;
            for (const auto& [key, c] : nest.back()) accumulate(out, key, R(s * c));
            for (const auto& [key, c] : box_t(nest.back())) accumulate(out, key, R(b * c));
            nest.push_back(std::move(out));
        }
        ETemplate out;
        for (int m = 0; m <= k; ++m) {
            R w = pcoef(k, m);
            if (k > 0) w -= pcoef(k - 1, m);
            for (const auto& [key, c] : nest[m]) accumulate(out, key, R(w * c));
        }
        return out;
    }

    // d^a/dz*^a (right) of z^j z*^k and d^b/dz^b (left)
    EPoly dzstar_mono(int j, int k, int a) const {
        if (a > k) return {};
        R c = 1;
        for (int i = 0; i < a; ++i) c *= qnum(k - i);
        return {{{j, k - a}, c}};
    }
    EPoly dz_mono(int j, int k, int b) const {
        if (b > j) return {};
        R c = 1;
        for (int i = 0; i < b; ++i) c *= qnum(j - i);
        return {{{j - b, k}, c}};
    }

    EPoly apply_template(const ETemplate& tpl, int a0, int b0, int c0, int d0) {
        EPoly out;
        for (const auto& [key, c] : tpl) {
            auto [a, s, b, t] = key;
            EPoly f = dzstar_mono(a0, b0, a), g = dz_mono(c0, d0, b);
            if (f.empty() || g.empty()) continue;
            EPoly mid = mul({{{0, s}, R(1)}}, {{{t, 0}, R(1)}});
            for (const auto& [m, v] : mul(mul(f, mid), g)) accumulate(out, m, R(c * v));
        }
        return out;
    }

private:
    R q2_;
    std::map<std::pair<int, int>, std::vector<R>> reorder_;
};

// rounded monomial star coefficients, cached per (q, monomials); the cached order only grows
struct MonoKey {
    std::uint64_t qbits;
    int a, b, c, d;
    auto operator<=>(const MonoKey&) const = default;
};

std::uint64_t bits_of(double q) {
    std::uint64_t u;
    std::memcpy(&u, &q, sizeof u);
    return u;
}

Exact& exact_for(double q) {
    thread_local std::map<std::uint64_t, Exact> engines;
    auto it = engines.find(bits_of(q));
    if (it == engines.end()) it = engines.emplace(bits_of(q), Exact(q)).first;
    return it->second;
}

NormalPoly round_poly(const EPoly& p, double q) {
    NormalPoly out(q);
    for (const auto& [k, v] : p) out.add_term(k.first, k.second, v.get_d());
    return out;
}

const std::vector<NormalPoly>& star_monomials(double q, int a, int b, int c, int d, int K) {
    thread_local std::map<MonoKey, std::vector<NormalPoly>> cache;
    MonoKey key{bits_of(q), a, b, c, d};
    auto it = cache.find(key);
    if (it != cache.end() && static_cast<int>(it->second.size()) > K) return it->second;
    std::vector<NormalPoly> rounded;
    for (const EPoly& p : exact_for(q).star_monomials(a, b, c, d, K)) rounded.push_back(round_poly(p, q));
    cache[key] = std::move(rounded);
    return cache[key];
}

}  // namespace

double qnum_inv(int n, double q) {
    double r = 1.0 / (q * q);
    return (1.0 - std::pow(r, n)) / (1.0 - r);
}

TensorPoly derive_tensor(const TensorPoly& t) {
    const double q = t.q();
    TensorPoly out(q);
    for (const auto& [k, c] : t.terms()) {
        if (k[1] == 0 || k[2] == 0) continue;
        out.add_term({k[0], k[1] - 1, k[2] - 1, k[3]}, c * qnum_inv(k[1], q) * qnum_inv(k[2], q));
    }
    return out;
}

TensorPoly box_tilde(const TensorPoly& t) {
    const double qi2 = 1.0 / (t.q() * t.q());
    TensorPoly pre(t.q());
    pre.add_term({0, 0, 0, 0}, qi2);
    pre.add_term({0, 1, 1, 0}, -qi2 * (1.0 + qi2));
    pre.add_term({0, 2, 2, 0}, qi2 * qi2);
    return braces_multiply(pre, derive_tensor(t));
}

TensorPoly p_polynomial(int j, const TensorPoly& x) {
    if (j < 0) throw InvalidArgument("p_polynomial: j must be nonnegative");
    Exact& ex = exact_for(x.q());
    TensorPoly out(x.q());
    for (const auto& [key, c] : x.terms()) {
        std::vector<ETensor> nest = ex.nested({{key, R(1)}}, j);
        ETensor s;
        for (int k = 0; k <= j; ++k) {
            R w = ex.pcoef(j, k);
            for (const auto& [m, v] : nest[k]) accumulate(s, m, R(w * v));
        }
        for (const auto& [m, v] : s) out.add_term(m, c * v.get_d());
    }
    return out;
}

FormalSeries star_product(const NormalPoly& f1, const NormalPoly& f2, int K) {
    if (K < 0) throw InvalidArgument("star_product: K must be nonnegative");
    const double q = f1.q();
    FormalSeries out{q, std::vector<NormalPoly>(K + 1, NormalPoly(q))};
    for (const auto& [k1, c1] : f1.terms())
        for (const auto& [k2, c2] : f2.terms()) {
            const auto& s = star_monomials(q, k1.first, k1.second, k2.first, k2.second, K);
            for (int k = 0; k <= K; ++k) out.coeffs[k] += s[k] * (c1 * c2);
        }
    return out;
}

NormalPoly c_k_extract(const NormalPoly& f1, const NormalPoly& f2, int k) { return star_product(f1, f2, k)[k]; }

BidiffTemplate bidifferential_template(int k, double q) {
    if (k < 0) throw InvalidArgument("bidifferential_template: k must be nonnegative");
    BidiffTemplate out;
    for (const auto& [key, v] : exact_for(q).bidiff_template(k)) out[key] = v.get_d();
    return out;
}

int template_order(const BidiffTemplate& tpl) {
    int m = 0;
    for (const auto& [key, c] : tpl) m = std::max({m, key[0], key[2]});
    return m;
}

TemplateCheck template_check(const NormalPoly& f1, const NormalPoly& f2, int k) {
    const double q = f1.q();
    Exact& ex = exact_for(q);
    ETemplate tpl = ex.bidiff_template(k);
    TemplateCheck r;
    for (const auto& [key, c] : tpl) r.order = std::max({r.order, key[0], key[2]});
    NormalPoly diff(q);
    for (const auto& [k1, c1] : f1.terms())
        for (const auto& [k2, c2] : f2.terms()) {
            EPoly a = ex.apply_template(tpl, k1.first, k1.second, k2.first, k2.second);
            EPoly b = ex.star_monomials(k1.first, k1.second, k2.first, k2.second, k)[k];
            for (const auto& [m, v] : b) accumulate(a, m, R(-v));
            diff += round_poly(a, q) * (c1 * c2);
        }
    r.residual = diff.max_abs();
    return r;
}

NormalPoly associativity_defect(const NormalPoly& f1, const NormalPoly& f2, const NormalPoly& f3, int m) {
    const double q = f1.q();
    FormalSeries s12 = star_product(f1, f2, m);
    FormalSeries s23 = star_product(f2, f3, m);
    NormalPoly out(q);
    for (int k = 0; k <= m; ++k) {
        int i = m - k;
        out += star_product(f1, s23[k], i)[i];
        out -= star_product(s12[k], f3, i)[i];
    }
    return out;
}

QuantizationReport quantization_oracle(const NormalPoly& f1, const NormalPoly& f2, double alpha, int K,
                                       const QContext& ctx) {
    ctx.validate();
    BargmannOps ops = bargmann_ops(alpha, ctx);
    FormalSeries s = star_product(f1, f2, K);
    QuantizationReport r;
    r.alpha = alpha;
    r.K = K;
    r.t = std::pow(ctx.q, 4.0 * alpha);
    int d = f1.degree() + f2.degree();
    for (const NormalPoly& c : s.coeffs) d = std::max(d, c.degree());
    r.block = ctx.radial_levels - d;
    if (r.block < 1) throw InvalidArgument("quantization_oracle: radial levels too small for the operands");
    Eigen::MatrixXcd lhs = quantize(f1, ops) * quantize(f2, ops);
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(lhs.rows(), lhs.cols());
    double tk = 1.0;
    for (int k = 0; k <= K; ++k, tk *= r.t) rhs += tk * quantize(s[k], ops);
    Eigen::MatrixXcd diff = to_orthonormal(lhs - rhs, ops).topLeftCorner(r.block, r.block);
    r.residual = Eigen::JacobiSVD<Eigen::MatrixXcd>(diff).singularValues()(0);
    r.scaled = r.residual / std::pow(r.t, K + 1);
    return r;
}

}  // namespace qdisc
