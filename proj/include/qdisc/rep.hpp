#pragma once

#include <Eigen/Dense>

#include "qdisc/core.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"

namespace qdisc {

// Truncated matrix of T(f); column n is the image of z^n v0.
struct RepMatrix {
    Eigen::MatrixXcd entries;
};

// T(z) shift and T(z*) weighted down-shift, N x N
Eigen::MatrixXcd shift_matrix(int N);
Eigen::MatrixXcd down_shift_matrix(int N, double q);

RepMatrix t_matrix(const NormalPoly& f, const QContext& ctx);
RepMatrix t_matrix(const PolarFunction& f);
// inverse of t_matrix(PolarFunction) on the entries present in the truncation
PolarFunction from_t_matrix(const RepMatrix& t, const QContext& ctx);

// tr T(f) T(g)
cplx trace_pairing(const PolarFunction& f, const PolarFunction& g);

// (z^j v0, z^m v0)
cplx fock_inner(int j, int m, const QContext& ctx);
Eigen::VectorXd fock_norms_squared(int N, double q);

// ||z^m||_alpha in H^2_{q,alpha}
double bargmann_norm(double alpha, int m, double q);

struct BargmannOps {
    double alpha = 1.0;
    double q = 0.5;
    Eigen::MatrixXcd zhat;
    Eigen::MatrixXcd zhat_star;

    // max |entry| of z*z - q^2 z z* - (1-q^2) - q^{4a}(1-q^2)/(1-q^{4a}) (1-zz*)(1-z*z) on the leading block
    double relation_residual(int block) const;
};

BargmannOps bargmann_ops(double alpha, const QContext& ctx);
Eigen::MatrixXcd quantize(const NormalPoly& f, const BargmannOps& ops);
// D X D^{-1} with D = diag(||z^m||_alpha)
Eigen::MatrixXcd to_orthonormal(const Eigen::MatrixXcd& x, const BargmannOps& ops);

// Coordinates on the truncated space {j,k < K}: a_{jk}, l_{mn} = T(f)_{mn}, and polar samples psi_p(q^{2s}).
// All three are indexed by (row m, column n) -> m*K + n; the polar sample at that slot is mode m-n, level min(m,n),
// and a_{jk} sits at slot (j, k).
struct CoordinateMaps {
    int K = 0;
    Eigen::MatrixXcd l_from_a;
    Eigen::MatrixXcd psi_from_l;
    Eigen::MatrixXcd psi_from_a;
};

CoordinateMaps coordinate_maps(int K, double q);

}  // namespace qdisc
