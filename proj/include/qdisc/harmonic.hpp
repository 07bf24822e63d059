#pragma once

#include <map>

#include <Eigen/Dense>

#include "qdisc/core.hpp"
#include "qdisc/kernel.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"

namespace qdisc {

// lambda(l) = -(1 - q^{-2l})(1 - q^{2l+2}) / (1 - q^2)^2
cplx lambda_of_l(cplx l, double q);

struct SpectralParam {
    cplx l;
    cplx lambda;
    cplx c;
    double rho = 0.0;
    bool has_rho = false;
    double h = 0.0;
};

SpectralParam spectral_param(cplx l, double q);
// l = -1/2 + i rho, 0 <= rho <= pi/h
SpectralParam spectral_param_rho(double rho, double q);

// Sector m of dbar between L^2(dnu) (functions z^m psi) and L^2(dmu) (forms h dz*).
struct SectorOperator {
    int m = 0;
    Eigen::MatrixXd op;    // raw lattice dbar: rows N (m >= 0) or N+1 (m < 0), columns N
    Eigen::VectorXd w_nu;  // Gram weights of the domain
    Eigen::VectorXd w_mu;  // Gram weights of the range
    Eigen::MatrixXd B;     // op in orthonormal bases
    Eigen::MatrixXd A;     // dbar* dbar on raw samples; box = -A
};

// dbar of sector m in orthonormalised lattice bases
Eigen::MatrixXd dbar_sector(int m, const QContext& ctx);
SectorOperator sector_operator(int m, const QContext& ctx);

struct RayleighRange {
    int m = 0;
    double min = 0.0;
    double max = 0.0;
};

RayleighRange rayleigh_range(const SectorOperator& s);
double rayleigh_lower_bound(double q);
double rayleigh_upper_bound(double q);

// box = -dbar* dbar, applied sector by sector
PolarFunction box_apply(const PolarFunction& f);

// coefficient of G_m in G
double green_coefficient(int m, double q);

struct GreenKernel {
    BiKernel kernel;
    int series_terms = 0;
    int support_cap = 0;
};

// G truncated at series_terms; exact for right-hand sides with |mode| <= support_cap and
// matrix-unit column index <= support_cap
GreenKernel green_kernel(const QContext& ctx, int series_terms = 40, int support_cap = 8);

PolarFunction poisson_solve(const PolarFunction& f, const GreenKernel& g);
PolarFunction poisson_solve_linear(const PolarFunction& f);

// u with dbar u = f dz*, orthogonal to holomorphic functions in L^2(dmu)
PolarFunction dbar_solve(const PolarFunction& f, const GreenKernel& g);
PolarFunction dbar_solve_linear(const PolarFunction& f);

struct DbarReport {
    double dbar_residual = 0.0;          // max |dbar u - f| on interior points
    double orthogonality_defect = 0.0;   // max_n |<u, z^n>_mu|, n <= 4
    double reproduce_residual = 0.0;     // f - P f - u[df/dz*] (only when f is given as a polynomial)
};

DbarReport dbar_report(const PolarFunction& f, const PolarFunction& u, int interior_margin = 4);
DbarReport cauchy_green_check(const NormalPoly& f, const QContext& ctx, int interior_margin = 4);

NormalPoly bergman_project(const NormalPoly& f);
// kernel route with K_q against dmu; exact for support below the cap
PolarFunction bergman_project_kernel(const PolarFunction& f, int mode_cap);

// boundary mode k -> disc coefficient of P_gamma paired with e^{ik theta}
std::map<int, PolarFunction> poisson_kernel(cplx gamma, const QContext& ctx);
// samples of the single mode k of poisson_kernel(gamma)
std::vector<cplx> poisson_mode_samples(cplx gamma, int k, const QContext& ctx);
PolarFunction poisson_extend(const BoundaryPoly& f, cplx l, const QContext& ctx);

PolarFunction spherical_phi(cplx l, const QContext& ctx);
// direct terminating 3Phi2 at y = q^{2n}; loses accuracy for large n
cplx spherical_phi_direct(cplx l, int n, double q);

// b_r u with 1 - r^2 = q^{2n}
BoundaryPoly radius_restrict(const PolarFunction& u, int n);

struct Recovery {
    BoundaryPoly value;
    double delta = 0.0;  // difference between the last two lattice estimates
    bool converged = false;
    int level = 0;
};

Recovery boundary_recover(const PolarFunction& u, cplx l, double tol = 1e-6);

}  // namespace qdisc
