#pragma once

#include "qdisc/core.hpp"
#include "qdisc/forms.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"

namespace qdisc {

// Value of a lattice sum plus a flag raised when the truncated partial sums are not yet Cauchy.
struct SumResult {
    cplx value;
    bool divergence_warning = false;
};

// (1-q^2) sum psi_0(q^{2n}) q^{2n}
cplx mu(const PolarFunction& f);
// exact for polynomials: mu(y^i) = (1-q^2)/(1-q^{2i+2})
cplx mu(const NormalPoly& f);

// (1-q^2) sum psi_0(q^{2n}) q^{-2n}
SumResult nu(const PolarFunction& f);
// mu(f (1-zz*)^{-2}) route
cplx nu_via_mu(const PolarFunction& f);

// (1-q^{4a}) sum psi_0(q^{2n}) q^{4an}
cplx nu_alpha(const PolarFunction& f, double alpha);
// (1-q^{4a}) tr T(f y^{2a})
cplx nu_alpha_trace(const PolarFunction& f, double alpha);

// mode-0 samples of g* f
std::vector<cplx> adjoint_product_mode0(const PolarFunction& g, const PolarFunction& f);

enum class FormGrade { Function, ZeroOne };

// grade Function: int f2* f1 y^{lambda-2} dmu;  grade ZeroOne: int f2* f1 y^lambda dmu
SumResult weighted_inner(const PolarFunction& f1, const PolarFunction& f2, double lambda, FormGrade grade);

// int dz f11 dz* = -2 pi i mu(f11)
cplx form_integral_11(const DiffForm& w);
cplx form_integral_11(const PolarFunction& f11);

// 2 pi i * mean of (z f)|_{dU} for psi = dz f
cplx boundary_integral_10(const DiffForm& psi);

struct StokesResult {
    cplx interior;  // int_U dbar psi
    cplx boundary;  // int_dU psi
    double residual;
};

// psi of bidegree (1,0) with polynomial coefficient
StokesResult stokes_check(const DiffForm& psi);
// psi = dz f with f a finite PolarFunction; the boundary side vanishes
StokesResult stokes_check(const PolarFunction& f);

}  // namespace qdisc
