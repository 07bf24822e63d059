#pragma once

#include <map>

#include <Eigen/Dense>

#include "qdisc/core.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"

namespace qdisc {

// Kernel in D(U x U)' stored per angular mode d as matrix-unit coefficients:
// kappa_d(S,T) multiplies E_{S+d,S} (x) E_{T,T+d} in the T-representation of both factors.
// A separated term z*^i zeta^i psi(y,eta) z^j zeta*^j contributes to mode j - i.
class BiKernel {
public:
    BiKernel(int levels, int mode_cap, double q);

    int levels() const { return levels_; }
    int mode_cap() const { return mode_cap_; }
    double q() const { return q_; }

    bool has_mode(int d) const { return units_.count(d) != 0; }
    const Eigen::MatrixXcd& unit(int d) const;
    Eigen::MatrixXcd& unit_mut(int d);
    const std::map<int, Eigen::MatrixXcd>& units() const { return units_; }

    BiKernel& operator+=(const BiKernel& o);
    BiKernel& operator*=(cplx c);
    double max_abs() const;
    double max_abs_diff(const BiKernel& o) const;

    // balanced tensor polynomial (first-factor mode = -(second-factor mode))
    static BiKernel from_tensor(const TensorPoly& t, int levels, int mode_cap);
    // psi(y, eta) on the lattice, as a mode-0 kernel
    static BiKernel radial(const Eigen::MatrixXcd& psi, double q);
    // {z*^i (x) zeta^i} {psi(y,eta)} {z^j (x) zeta*^j}
    static BiKernel separated_term(int i, int j, const Eigen::MatrixXcd& psi, int mode_cap, double q);

private:
    int levels_;
    int mode_cap_;
    double q_;
    std::map<int, Eigen::MatrixXcd> units_;
};

BiKernel operator+(BiKernel a, const BiKernel& b);
BiKernel operator*(BiKernel a, cplx c);

// braces product in Pol^op (x) Pol; modes beyond the cap are dropped
BiKernel braces_multiply(const BiKernel& a, const BiKernel& b);

enum class KernelMeasure { Nu, Mu };

// (id (x) measure)(K (1 (x) f)); output sampled on out_levels lattice points.
// twist_power p multiplies mode d by q^{2 p d} (p = 1 realises sigma^{-1} on the zeta factor).
PolarFunction kernel_apply(const BiKernel& k, const PolarFunction& f, KernelMeasure m, const QContext& out_ctx,
                           int twist_power = 0);

enum class GeometricKind {
    OneMinusZstarZeta,     // (1 - z* zeta)^{-1}
    OneMinusZZetastar,     // (1 - c z zeta*)^{-1}
    Y,                     // y (x) 1
    Eta,                   // 1 (x) eta
    Bergman,               // (1 - z zeta*)^{-1} (1 - q^2 z zeta*)^{-1}
    Cauchy,                // (1 - z zeta*)^{-1} (1 - q^{-2} z zeta*)^{-1}
    PoissonHolomorphic,    // (z zeta*; q^2)_{-gamma}
    PoissonAntiholomorphic // (q^2 z* zeta; q^2)_{-gamma}
};

struct GeometricSpec {
    GeometricKind kind;
    cplx param = 1.0;  // c for OneMinusZZetastar, gamma for the Poisson factors
};

BiKernel geometric_kernel(const GeometricSpec& spec, int levels, int mode_cap, double q);

// G_m = {((1 (x) eta)(1 - z* zeta)^{-1})^m ((y (x) 1)(1 - z zeta*)^{-1})^m}
BiKernel green_term(int m, int levels, int mode_cap, double q);

}  // namespace qdisc
