#pragma once

#include "qdisc/core.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"

namespace qdisc {

// omega = f00 + dz f10 + f01 dz* + dz f11 dz*
struct DiffForm {
    NormalPoly f00, f10, f01, f11;

    explicit DiffForm(double q = 0.5) : f00(q), f10(q), f01(q), f11(q) {}
    static DiffForm function(const NormalPoly& f);
    static DiffForm dz(double q);
    static DiffForm dzstar(double q);
    // dz f
    static DiffForm left_dz(const NormalPoly& f);
    // f dz*
    static DiffForm right_dzstar(const NormalPoly& f);
    // dz f dz*
    static DiffForm top(const NormalPoly& f);

    double q() const { return f00.q(); }
    bool is_zero() const { return f00.is_zero() && f10.is_zero() && f01.is_zero() && f11.is_zero(); }
    double max_abs() const;
};

DiffForm operator+(const DiffForm& a, const DiffForm& b);
DiffForm operator-(const DiffForm& a, const DiffForm& b);
DiffForm operator*(const DiffForm& a, cplx c);
DiffForm operator*(const DiffForm& a, const DiffForm& b);
double max_abs_diff(const DiffForm& a, const DiffForm& b);

DiffForm form_multiply(const DiffForm& a, const DiffForm& b);
DiffForm involution(const DiffForm& w);

// z^a z*^b -> q^{2p(a-b)} z^a z*^b; dz g = sigma(g) dz, dz* g = sigma(g) dz*
NormalPoly sigma(const NormalPoly& f, int power = 1);

struct DSplit {
    DiffForm del;
    DiffForm delbar;
};

DSplit split_d(const DiffForm& w);
DiffForm exterior_d(const DiffForm& w);
// d of a function by the graded Leibniz rule over its letters, using only form_multiply
DiffForm exterior_d_leibniz(const NormalPoly& f);

struct PartialDerivatives {
    NormalPoly dz_left;       // d f = dz (dz_left) + ...
    NormalPoly dz_right;      //     = (dz_right) dz + ...
    NormalPoly dzstar_left;   // dbar f = dz* (dzstar_left)
    NormalPoly dzstar_right;  //        = (dzstar_right) dz*
};

PartialDerivatives partial_derivatives(const NormalPoly& f);

// r(y) with dbar p(y) = -z r(y) dz*, r = (p(y) - p(q^2 y)) / (y - q^2 y)
RadialPoly radial_dbar(const RadialPoly& p, double q);

// Lattice versions on polar samples. dbar f = (dbar_coefficient f) dz*, del f = dz (del_coefficient f).
// Samples beyond the truncation are taken from closed forms when present, otherwise as 0.
PolarFunction dbar_coefficient(const PolarFunction& f);
PolarFunction del_coefficient(const PolarFunction& f);

// f v_lambda (grade 0) or f v_lambda dz* (grade 1)
struct TwistedSection {
    int grade = 0;
    NormalPoly f;
    double lambda = 0.0;
};

// v_lambda f -> f' v_lambda
TwistedSection twisted_from_left(const NormalPoly& f, double lambda);
TwistedSection dbar_twisted(const TwistedSection& s);

}  // namespace qdisc
