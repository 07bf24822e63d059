#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdisc/core.hpp"

namespace qdisc {

// Element of Pol(C)_q in normal order: sum a_{jk} z^j z*^k.
class NormalPoly {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, cplx>;

    explicit NormalPoly(double q = 0.5);
    static NormalPoly constant(double q, cplx c);
    static NormalPoly monomial(double q, int j, int k, cplx c = 1.0);
    static NormalPoly z(double q) { return monomial(q, 1, 0); }
    static NormalPoly zstar(double q) { return monomial(q, 0, 1); }
    // y = 1 - z z*
    static NormalPoly y(double q);

    double q() const { return q_; }
    const Terms& terms() const { return terms_; }
    cplx coeff(int j, int k) const;
    void add_term(int j, int k, cplx c);
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    double max_abs() const;
    // drop coefficients with |c| <= tol * max_abs()
    NormalPoly pruned(double rel_tol) const;

    NormalPoly& operator+=(const NormalPoly& o);
    NormalPoly& operator-=(const NormalPoly& o);
    NormalPoly& operator*=(cplx c);
    NormalPoly pow(int e) const;

    std::string to_string(int precision = 12) const;

private:
    double q_;
    Terms terms_;
};

NormalPoly operator+(NormalPoly a, const NormalPoly& b);
NormalPoly operator-(NormalPoly a, const NormalPoly& b);
NormalPoly operator-(NormalPoly a);
NormalPoly operator*(NormalPoly a, cplx c);
NormalPoly operator*(cplx c, NormalPoly a);
NormalPoly operator*(const NormalPoly& a, const NormalPoly& b);

NormalPoly normal_multiply(const NormalPoly& a, const NormalPoly& b);
// antilinear anti-automorphism with z -> z*
NormalPoly involution(const NormalPoly& f);
bool approx_equal(const NormalPoly& a, const NormalPoly& b, double tol);
double max_abs_diff(const NormalPoly& a, const NormalPoly& b);

// z*^b z^c = sum_i e_i z^{c-i} z*^{b-i}; returns e_0..e_min(b,c)
std::vector<double> reorder_coefficients(int b, int c, double q);

// Laurent polynomial in e^{i theta}
using BoundaryPoly = std::map<int, cplx>;

// f|_{|z|=1}: z^j z*^k -> e^{i(j-k) theta}
BoundaryPoly boundary_restrict(const NormalPoly& f);

// Element of Pol^op (x) Pol: sum c z^a z*^b (x) zeta^c zeta*^d, key {a,b,c,d}.
class TensorPoly {
public:
    using Key = std::array<int, 4>;
    using Terms = std::map<Key, cplx>;

    explicit TensorPoly(double q = 0.5) : q_(q) {}
    static TensorPoly pure(const NormalPoly& first, const NormalPoly& second);

    double q() const { return q_; }
    const Terms& terms() const { return terms_; }
    void add_term(const Key& k, cplx c);
    bool is_zero() const { return terms_.empty(); }
    double max_abs() const;

    TensorPoly& operator+=(const TensorPoly& o);
    TensorPoly& operator*=(cplx c);

    // first factors grouped by second-factor monomial, and vice versa
    std::map<std::pair<int, int>, NormalPoly> by_second() const;

private:
    double q_;
    Terms terms_;
};

TensorPoly operator+(TensorPoly a, const TensorPoly& b);
TensorPoly operator*(TensorPoly a, cplx c);

// (A (x) B){.}(C (x) D) = (C A) (x) (B D)
TensorPoly braces_multiply(const TensorPoly& a, const TensorPoly& b);
// m(A (x) B) = A B
NormalPoly tensor_collapse(const TensorPoly& t);

// Expression parser; see docs/grammar.md.
NormalPoly parse_expr(const std::string& text, double q, int degree_cap = 32);

}  // namespace qdisc
