#include "qdisc/rep.hpp"

#include <cmath>

#include "qdisc/qspecial.hpp"

namespace qdisc {

Eigen::MatrixXcd shift_matrix(int N) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n + 1 < N; ++n) s(n + 1, n) = 1.0;
    return s;
}

Eigen::MatrixXcd down_shift_matrix(int N, double q) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 1; n < N; ++n) s(n - 1, n) = 1.0 - std::pow(q, 2.0 * n);
    return s;
}

namespace {

Eigen::MatrixXcd monomial_matrix(const Eigen::MatrixXcd& zm, const Eigen::MatrixXcd& zsm, int j, int k) {
    // z*^k first, then z^j; lowering before raising keeps the truncation exact
    const int N = static_cast<int>(zm.rows());
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(N, N);
    for (int i = 0; i < k; ++i) r = zsm * r;
    for (int i = 0; i < j; ++i) r = zm * r;
    return r;
}

}  // namespace

RepMatrix t_matrix(const NormalPoly& f, const QContext& ctx) {
    const int N = ctx.radial_levels;
    Eigen::MatrixXcd zm = shift_matrix(N);
    Eigen::MatrixXcd zsm = down_shift_matrix(N, f.q());
    RepMatrix out{Eigen::MatrixXcd::Zero(N, N)};
    for (const auto& [key, c] : f.terms()) out.entries += c * monomial_matrix(zm, zsm, key.first, key.second);
    return out;
}

RepMatrix t_matrix(const PolarFunction& f) {
    const int N = f.levels();
    const double q = f.ctx().q;
    RepMatrix out{Eigen::MatrixXcd::Zero(N, N)};
    for (int m : f.modes()) {
        const auto& s = f.samples(m);
        if (m >= 0) {
            for (int n = 0; n + m < N; ++n) out.entries(n + m, n) = s[n];
        } else {
            int P = -m;
            for (int n = 0; n + P < N; ++n)
                out.entries(n, n + P) = qpoch(std::pow(q, 2.0 * (n + P)), 1.0 / (q * q), P) * s[n];
        }
    }
    return out;
}

PolarFunction from_t_matrix(const RepMatrix& t, const QContext& ctx) {
    const int N = ctx.radial_levels;
    if (t.entries.rows() != N || t.entries.cols() != N) throw InvalidArgument("from_t_matrix: size mismatch");
    const double q = ctx.q;
    PolarFunction out(ctx);
    for (int m = -std::min(ctx.angular_cutoff, N - 1); m <= std::min(ctx.angular_cutoff, N - 1); ++m) {
        std::vector<cplx> s(N, 0.0);
        bool any = false;
        if (m >= 0) {
            for (int n = 0; n + m < N; ++n) s[n] = t.entries(n + m, n);
        } else {
            int P = -m;
            for (int n = 0; n + P < N; ++n)
                s[n] = t.entries(n, n + P) / qpoch(std::pow(q, 2.0 * (n + P)), 1.0 / (q * q), P);
        }
        for (const cplx& v : s) any = any || v != 0.0;
        if (any) out.set_mode(m, std::move(s));
    }
    return out;
}

cplx trace_pairing(const PolarFunction& f, const PolarFunction& g) {
    return (t_matrix(f).entries * t_matrix(g).entries).trace();
}

cplx fock_inner(int j, int m, const QContext& ctx) {
    if (j != m) return 0.0;
    return qpoch(ctx.q2(), ctx.q2(), m);
}

Eigen::VectorXd fock_norms_squared(int N, double q) {
    Eigen::VectorXd v(N);
    for (int m = 0; m < N; ++m) v(m) = qpoch(q * q, q * q, m).real();
    return v;
}

double bargmann_norm(double alpha, int m, double q) {
    if (!(alpha > 0.0)) throw InvalidArgument("bargmann_norm: alpha must be positive");
    double q2 = q * q;
    return std::sqrt(qpoch(q2, q2, m).real() / qpoch(std::pow(q, 4.0 * alpha + 2.0), q2, m).real());
}

BargmannOps bargmann_ops(double alpha, const QContext& ctx) {
    if (!(alpha > 0.0)) throw InvalidArgument("bargmann_ops: alpha must be positive");
    const int N = ctx.radial_levels;
    const double q = ctx.q;
    BargmannOps ops;
    ops.alpha = alpha;
    ops.q = q;
    ops.zhat = shift_matrix(N);
    ops.zhat_star = Eigen::MatrixXcd::Zero(N, N);
    for (int m = 1; m < N; ++m)
        ops.zhat_star(m - 1, m) = (1.0 - std::pow(q, 2.0 * m)) / (1.0 - std::pow(q, 4.0 * alpha + 2.0 * m));
    return ops;
}

double BargmannOps::relation_residual(int block) const {
    const int N = static_cast<int>(zhat.rows());
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(N, N);
    double q2 = q * q;
    double t = std::pow(q, 4.0 * alpha);
    Eigen::MatrixXcd lhs = zhat_star * zhat;
    Eigen::MatrixXcd rhs =
        q2 * zhat * zhat_star + (1.0 - q2) * I + t * (1.0 - q2) / (1.0 - t) * (I - zhat * zhat_star) * (I - zhat_star * zhat);
    return (lhs - rhs).topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd quantize(const NormalPoly& f, const BargmannOps& ops) {
    const int N = static_cast<int>(ops.zhat.rows());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& [key, c] : f.terms()) out += c * monomial_matrix(ops.zhat, ops.zhat_star, key.first, key.second);
    return out;
}

Eigen::MatrixXcd to_orthonormal(const Eigen::MatrixXcd& x, const BargmannOps& ops) {
    const int N = static_cast<int>(x.rows());
    Eigen::VectorXd d(N);
    for (int m = 0; m < N; ++m) d(m) = bargmann_norm(ops.alpha, m, ops.q);
    return d.asDiagonal() * x * d.cwiseInverse().asDiagonal();
}

CoordinateMaps coordinate_maps(int K, double q) {
    if (K < 1) throw InvalidArgument("coordinate_maps: K must be positive");
    const int D = K * K;
    QContext ctx;
    ctx.q = q;
    ctx.radial_levels = std::max(K, 2);
    ctx.angular_cutoff = K;
    CoordinateMaps maps;
    maps.K = K;
    maps.l_from_a = Eigen::MatrixXcd::Zero(D, D);
    maps.psi_from_l = Eigen::MatrixXcd::Zero(D, D);
    maps.psi_from_a = Eigen::MatrixXcd::Zero(D, D);
    for (int j = 0; j < K; ++j) {
        for (int k = 0; k < K; ++k) {
            NormalPoly mono = NormalPoly::monomial(q, j, k);
            Eigen::MatrixXcd t = t_matrix(mono, ctx).entries;
            PolarFunction p = to_polar(mono, ctx);
            for (int m = 0; m < K; ++m) {
                for (int n = 0; n < K; ++n) {
                    maps.l_from_a(m * K + n, j * K + k) = t(m, n);
                    maps.psi_from_a(m * K + n, j * K + k) = p.sample(m - n, std::min(m, n));
                }
            }
        }
    }
    for (int m = 0; m < K; ++m) {
        for (int n = 0; n < K; ++n) {
            int P = n - m;
            cplx w = P > 0 ? qpoch(std::pow(q, 2.0 * n), 1.0 / (q * q), P) : cplx(1.0);
            maps.psi_from_l(m * K + n, m * K + n) = 1.0 / w;
        }
    }
    return maps;
}

}  // namespace qdisc
