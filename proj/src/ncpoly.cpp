#include "qdisc/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <tuple>

namespace qdisc {

NormalPoly::NormalPoly(double q) : q_(q) {}

NormalPoly NormalPoly::constant(double q, cplx c) { return monomial(q, 0, 0, c); }

NormalPoly NormalPoly::monomial(double q, int j, int k, cplx c) {
    NormalPoly p(q);
    p.add_term(j, k, c);
    return p;
}

NormalPoly NormalPoly::y(double q) {
    NormalPoly p(q);
    p.add_term(0, 0, 1.0);
    p.add_term(1, 1, -1.0);
    return p;
}

cplx NormalPoly::coeff(int j, int k) const {
    auto it = terms_.find({j, k});
    return it == terms_.end() ? cplx(0.0) : it->second;
}

void NormalPoly::add_term(int j, int k, cplx c) {
    if (j < 0 || k < 0) throw InvalidArgument("NormalPoly: negative exponent");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace({j, k}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

int NormalPoly::degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
    return d;
}

double NormalPoly::max_abs() const {
    double m = 0.0;
    for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

NormalPoly NormalPoly::pruned(double rel_tol) const {
    NormalPoly out(q_);
    double cut = rel_tol * max_abs();
    for (const auto& [key, c] : terms_)
        if (std::abs(c) > cut) out.terms_.emplace(key, c);
    return out;
}

NormalPoly& NormalPoly::operator+=(const NormalPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
}

NormalPoly& NormalPoly::operator-=(const NormalPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
}

NormalPoly& NormalPoly::operator*=(cplx c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, v] : terms_) v *= c;
    return *this;
}

NormalPoly NormalPoly::pow(int e) const {
    if (e < 0) throw InvalidArgument("NormalPoly::pow: negative exponent");
    NormalPoly r = constant(q_, 1.0);
    NormalPoly b = *this;
    while (e > 0) {
        if (e & 1) r = normal_multiply(r, b);
        e >>= 1;
        if (e) b = normal_multiply(b, b);
    }
    return r;
}

namespace {

std::string format_coeff(cplx c, int precision) {
    std::ostringstream os;
    os.precision(precision);
    if (c.imag() == 0.0) {
        os << c.real();
    } else if (c.real() == 0.0) {
        os << c.imag() << "i";
    } else {
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    return os.str();
}

}  // namespace

std::string NormalPoly::to_string(int precision) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, cplx>> items(terms_.begin(), terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da > db;
        return a.first.first > b.first.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [key, c] : items) {
        cplx v = c;
        bool neg = false;
        if (v.imag() == 0.0 && v.real() < 0.0) {
            neg = true;
            v = -v;
        }
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        first = false;
        std::string mono;
        if (key.first > 0) mono += key.first == 1 ? "z" : "z^" + std::to_string(key.first);
        if (key.second > 0) {
            if (!mono.empty()) mono += " ";
            mono += key.second == 1 ? "z*" : "z*^" + std::to_string(key.second);
        }
        if (mono.empty()) {
            out += format_coeff(v, precision);
        } else if (v == 1.0) {
            out += mono;
        } else {
            out += format_coeff(v, precision) + " " + mono;
        }
    }
    return out;
}

std::vector<double> reorder_coefficients(int b, int c, double q) {
    static thread_local std::map<std::tuple<double, int, int>, std::vector<double>> cache;
    if (b == 0 || c == 0) return {1.0};
    auto key = std::make_tuple(q, b, c);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // z*^b z^c = q^{2c} (z*^{b-1} z^c) z* + (1 - q^{2c}) z*^{b-1} z^{c-1}
    double q2c = std::pow(q, 2.0 * c);
    std::vector<double> a = reorder_coefficients(b - 1, c, q);
    std::vector<double> d = reorder_coefficients(b - 1, c - 1, q);
    std::vector<double> e(static_cast<std::size_t>(std::min(b, c)) + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) e[i] += q2c * a[i];
    for (std::size_t i = 0; i < d.size(); ++i) e[i + 1] += (1.0 - q2c) * d[i];
    cache.emplace(key, e);
    return e;
}

NormalPoly normal_multiply(const NormalPoly& a, const NormalPoly& b) {
    NormalPoly out(a.q());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            auto e = reorder_coefficients(ka.second, kb.first, a.q());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0.0) continue;
                int ii = static_cast<int>(i);
                out.add_term(ka.first + kb.first - ii, ka.second + kb.second - ii, ca * cb * e[i]);
            }
        }
    }
    return out;
}

NormalPoly involution(const NormalPoly& f) {
    NormalPoly out(f.q());
    for (const auto& [k, c] : f.terms()) out.add_term(k.second, k.first, std::conj(c));
    return out;
}

double max_abs_diff(const NormalPoly& a, const NormalPoly& b) { return (a - b).max_abs(); }

bool approx_equal(const NormalPoly& a, const NormalPoly& b, double tol) { return max_abs_diff(a, b) <= tol; }

NormalPoly operator+(NormalPoly a, const NormalPoly& b) { return a += b; }
NormalPoly operator-(NormalPoly a, const NormalPoly& b) { return a -= b; }
NormalPoly operator-(NormalPoly a) { return a *= -1.0; }
NormalPoly operator*(NormalPoly a, cplx c) { return a *= c; }
NormalPoly operator*(cplx c, NormalPoly a) { return a *= c; }
NormalPoly operator*(const NormalPoly& a, const NormalPoly& b) { return normal_multiply(a, b); }

BoundaryPoly boundary_restrict(const NormalPoly& f) {
    BoundaryPoly out;
    for (const auto& [k, c] : f.terms()) out[k.first - k.second] += c;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0.0 ? out.erase(it) : std::next(it);
    return out;
}

// ---- TensorPoly

TensorPoly TensorPoly::pure(const NormalPoly& first, const NormalPoly& second) {
    TensorPoly t(first.q());
    for (const auto& [a, ca] : first.terms())
        for (const auto& [b, cb] : second.terms()) t.add_term({a.first, a.second, b.first, b.second}, ca * cb);
    return t;
}

void TensorPoly::add_term(const Key& k, cplx c) {
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

double TensorPoly::max_abs() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

TensorPoly& TensorPoly::operator*=(cplx c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

std::map<std::pair<int, int>, NormalPoly> TensorPoly::by_second() const {
    std::map<std::pair<int, int>, NormalPoly> out;
    for (const auto& [k, c] : terms_) {
        auto [it, ins] = out.try_emplace({k[2], k[3]}, NormalPoly(q_));
        it->second.add_term(k[0], k[1], c);
    }
    return out;
}

TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
TensorPoly operator*(TensorPoly a, cplx c) { return a *= c; }

TensorPoly braces_multiply(const TensorPoly& a, const TensorPoly& b) {
    const double q = a.q();
    TensorPoly out(q);
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            // first factor: (z^kb0 z*^kb1)(z^ka0 z*^ka1); second: (zeta^ka2 zeta*^ka3)(zeta^kb2 zeta*^kb3)
            auto e1 = reorder_coefficients(kb[1], ka[0], q);
            auto e2 = reorder_coefficients(ka[3], kb[2], q);
            for (std::size_t i = 0; i < e1.size(); ++i) {
                int ii = static_cast<int>(i);
                for (std::size_t j = 0; j < e2.size(); ++j) {
                    int jj = static_cast<int>(j);
                    out.add_term({kb[0] + ka[0] - ii, kb[1] + ka[1] - ii, ka[2] + kb[2] - jj, ka[3] + kb[3] - jj},
                                 ca * cb * e1[i] * e2[j]);
                }
            }
        }
    }
    return out;
}

NormalPoly tensor_collapse(const TensorPoly& t) {
    NormalPoly out(t.q());
    for (const auto& [k, c] : t.terms()) {
        auto e = reorder_coefficients(k[1], k[2], t.q());
        for (std::size_t i = 0; i < e.size(); ++i) {
            int ii = static_cast<int>(i);
            out.add_term(k[0] + k[2] - ii, k[1] + k[3] - ii, c * e[i]);
        }
    }
    return out;
}

// ---- parser

namespace {

class Parser {
public:
    Parser(const std::string& s, double q, int cap) : s_(s), q_(q), cap_(cap) {}

    NormalPoly parse() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("empty expression", pos_);
        NormalPoly r = expr();
        skip_ws();
        if (pos_ < s_.size()) throw SyntaxError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    const std::string& s_;
    double q_;
    int cap_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_primary() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'z' || c == 'y' || c == 'q' ||
               c == 'i' || c == '(';
    }

    NormalPoly check_cap(NormalPoly p, std::size_t at) {
        if (p.degree() > cap_)
            throw DegreeOverflow("expression degree exceeds cap " + std::to_string(cap_) + " at position " +
                                 std::to_string(at));
        return p;
    }

    NormalPoly expr() {
        NormalPoly acc(q_);
        bool neg = false;
        if (peek('+')) {
            ++pos_;
        } else if (peek('-')) {
            ++pos_;
            neg = true;
        }
        acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    NormalPoly term() {
        std::size_t start = pos_;
        NormalPoly acc = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                if (!starts_primary()) throw SyntaxError("expected factor after '*'", pos_);
                acc = check_cap(normal_multiply(acc, factor()), start);
            } else if (starts_primary()) {
                acc = check_cap(normal_multiply(acc, factor()), start);
            } else {
                break;
            }
        }
        return acc;
    }

    NormalPoly factor() {
        std::size_t start = pos_;
        NormalPoly base = primary();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            bool neg = false;
            if (pos_ < s_.size() && s_[pos_] == '-') {
                neg = true;
                ++pos_;
            }
            std::size_t epos = pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw SyntaxError("expected integer exponent", pos_);
            long e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + (s_[pos_] - '0');
                if (e > 1000000) throw DegreeOverflow("exponent too large at position " + std::to_string(epos));
                ++pos_;
            }
            bool scalar = base.is_zero() || (base.terms().size() == 1 && base.terms().count({0, 0}));
            if (scalar) {
                cplx v = base.coeff(0, 0);
                if (neg && v == 0.0) throw SyntaxError("negative power of zero", epos);
                return NormalPoly::constant(q_, std::pow(v, neg ? -static_cast<double>(e) : static_cast<double>(e)));
            }
            if (neg) throw SyntaxError("negative power of a non-scalar", epos);
            if (e * std::max(base.degree(), 1) > cap_)
                throw DegreeOverflow("power exceeds degree cap " + std::to_string(cap_) + " at position " +
                                     std::to_string(start));
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    NormalPoly primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NormalPoly r = expr();
            if (!peek(')')) throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (c == 'z') {
            ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                return NormalPoly::zstar(q_);
            }
            return NormalPoly::z(q_);
        }
        if (c == 'y') {
            ++pos_;
            return NormalPoly::y(q_);
        }
        if (c == 'q') {
            ++pos_;
            return NormalPoly::constant(q_, q_);
        }
        if (c == 'i') {
            ++pos_;
            return NormalPoly::constant(q_, cplx(0.0, 1.0));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    NormalPoly number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        std::string lit = s_.substr(start, pos_ - start);
        double v;
        try {
            std::size_t used = 0;
            v = std::stod(lit, &used);
            if (used != lit.size()) throw SyntaxError("malformed number '" + lit + "'", start);
        } catch (const std::logic_error&) {
            throw SyntaxError("malformed number '" + lit + "'", start);
        }
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return NormalPoly::constant(q_, cplx(0.0, v));
        }
        return NormalPoly::constant(q_, v);
    }
};

}  // namespace

NormalPoly parse_expr(const std::string& text, double q, int degree_cap) {
    Parser p(text, q, degree_cap);
    return p.parse();
}

}  // namespace qdisc
