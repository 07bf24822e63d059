#pragma once

#include <array>
#include <map>
#include <vector>

#include "qdisc/core.hpp"
#include "qdisc/ncpoly.hpp"

namespace qdisc {

// sum_k t^k coeffs[k], truncated at order K = coeffs.size() - 1
struct FormalSeries {
    double q = 0.5;
    std::vector<NormalPoly> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const NormalPoly& operator[](int k) const { return coeffs.at(k); }
};

// [n]_{q^-2} = (1 - q^{-2n}) / (1 - q^{-2})
double qnum_inv(int n, double q);

// right d/dz* on first factors, left d/dz on second factors
TensorPoly derive_tensor(const TensorPoly& t);
// q^-2 (1 - (1+q^-2) z* (x) z + q^-2 z*^2 (x) z^2) {.} (d/dz* (x) d/dz)
TensorPoly box_tilde(const TensorPoly& t);

// p_j(box~) applied to x. Computed in exact rational arithmetic (q as the rational value of the double),
// rounded once at the end: the nested products cancel catastrophically in floating point.
TensorPoly p_polynomial(int j, const TensorPoly& x);

// t-expansion of f1 * f2 through order K, exact arithmetic per monomial pair
FormalSeries star_product(const NormalPoly& f1, const NormalPoly& f2, int K);
NormalPoly c_k_extract(const NormalPoly& f1, const NormalPoly& f2, int k);

// C_k(f1, f2) = sum kappa[a,s,b,t] (d/dz*)^a f1 . z*^s z^t . (d/dz)^b f2, coefficients from q-Leibniz only.
// key {a, s, b, t}; values rounded from the exact template.
using BidiffTemplate = std::map<std::array<int, 4>, double>;
BidiffTemplate bidifferential_template(int k, double q);
// max derivative order in either argument used by the template
int template_order(const BidiffTemplate& tpl);

struct TemplateCheck {
    int order = 0;          // derivative order of the template
    double residual = 0.0;  // |template(f1, f2) - C_k(f1, f2)|, both exact before rounding
};
TemplateCheck template_check(const NormalPoly& f1, const NormalPoly& f2, int k);

// sum_{i+k=m} C_i(f1, C_k(f2, f3)) - C_i(C_k(f1, f2), f3)
NormalPoly associativity_defect(const NormalPoly& f1, const NormalPoly& f2, const NormalPoly& f3, int m);

struct QuantizationReport {
    double alpha = 0.0;
    int K = 0;
    int block = 0;
    double t = 0.0;         // q^{4 alpha}
    double residual = 0.0;  // operator norm on the principal block, orthonormal basis
    double scaled = 0.0;    // residual / t^{K+1}
};

QuantizationReport quantization_oracle(const NormalPoly& f1, const NormalPoly& f2, double alpha, int K,
                                       const QContext& ctx);

}  // namespace qdisc
