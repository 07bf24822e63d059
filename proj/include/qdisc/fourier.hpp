#pragma once

#include <map>
#include <vector>

#include "qdisc/core.hpp"
#include "qdisc/polar.hpp"

namespace qdisc {

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b], nodes increasing
Quadrature gauss_legendre(int n, double a, double b);

// dsigma/drho on [0, pi/h], h = -2 ln q
double plancherel_density(double rho, double q);
double rho_max(double q);

// values[m][i] = (F u)(mode m, rho_i)
struct FourierImage {
    QContext ctx;
    std::vector<double> nodes;
    std::vector<double> weights;  // Gauss weights in rho (dsigma not included)
    std::map<int, std::vector<cplx>> values;

    int node_count() const { return static_cast<int>(nodes.size()); }
};

FourierImage fourier_forward(const PolarFunction& u, int nodes = 128);
PolarFunction fourier_inverse(const FourierImage& g);

// <f, g> in L^2(dtheta/2pi) x L^2(dsigma)
cplx spectral_inner(const FourierImage& f, const FourierImage& g);
// <u, v>_nu computed mode by mode on the lattice
cplx nu_inner(const PolarFunction& u, const PolarFunction& v);

}  // namespace qdisc
