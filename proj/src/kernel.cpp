#include "qdisc/kernel.hpp"

#include <cmath>
#include <functional>

#include "qdisc/qspecial.hpp"

namespace qdisc {

namespace {

// (q^{2S}; q^{-2})_k: matrix element of z*^k from column S
double lower_weight(int S, int k, double q) {
    if (S < k) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= 1.0 - std::pow(q, 2.0 * (S - i));
    return r;
}

}  // namespace

BiKernel::BiKernel(int levels, int mode_cap, double q) : levels_(levels), mode_cap_(mode_cap), q_(q) {
    if (levels < 1 || mode_cap < 0) throw InvalidArgument("BiKernel: bad dimensions");
}

const Eigen::MatrixXcd& BiKernel::unit(int d) const {
    auto it = units_.find(d);
    if (it == units_.end()) throw InvalidArgument("BiKernel: mode not present");
    return it->second;
}

Eigen::MatrixXcd& BiKernel::unit_mut(int d) {
    if (std::abs(d) > mode_cap_) throw DegreeCapExceeded("BiKernel: mode " + std::to_string(d) + " exceeds cap");
    auto it = units_.find(d);
    if (it == units_.end()) it = units_.emplace(d, Eigen::MatrixXcd::Zero(levels_, levels_)).first;
    return it->second;
}

BiKernel& BiKernel::operator+=(const BiKernel& o) {
    if (o.levels_ != levels_) throw InvalidArgument("BiKernel: level mismatch");
    for (const auto& [d, m] : o.units_) unit_mut(d) += m;
    return *this;
}

BiKernel& BiKernel::operator*=(cplx c) {
    for (auto& [d, m] : units_) m *= c;
    return *this;
}

double BiKernel::max_abs() const {
    double r = 0.0;
    for (const auto& [d, m] : units_) r = std::max(r, m.cwiseAbs().maxCoeff());
    return r;
}

double BiKernel::max_abs_diff(const BiKernel& o) const {
    BiKernel diff = *this;
    diff += o * -1.0;
    return diff.max_abs();
}

BiKernel operator+(BiKernel a, const BiKernel& b) { return a += b; }
BiKernel operator*(BiKernel a, cplx c) { return a *= c; }

BiKernel BiKernel::from_tensor(const TensorPoly& t, int levels, int mode_cap) {
    const double q = t.q();
    BiKernel k(levels, mode_cap, q);
    for (const auto& [key, c] : t.terms()) {
        auto [a, b, cc, e] = key;
        int d = a - b;
        if (d != e - cc) throw InvalidArgument("BiKernel::from_tensor: unbalanced tensor term");
        if (std::abs(d) > mode_cap) throw DegreeCapExceeded("BiKernel::from_tensor: mode exceeds cap");
        Eigen::MatrixXcd& u = k.unit_mut(d);
        for (int S = 0; S < levels; ++S) {
            if (S + d < 0 || S + d >= levels) continue;
            double w1 = lower_weight(S, b, q);
            if (w1 == 0.0) continue;
            for (int T = 0; T < levels; ++T) {
                if (T + d < 0 || T + d >= levels) continue;
                u(S, T) += c * w1 * lower_weight(T + d, e, q);
            }
        }
    }
    return k;
}

BiKernel BiKernel::radial(const Eigen::MatrixXcd& psi, double q) {
    if (psi.rows() != psi.cols()) throw InvalidArgument("BiKernel::radial: expects a square sample matrix");
    BiKernel k(static_cast<int>(psi.rows()), 0, q);
    k.unit_mut(0) = psi;
    return k;
}

BiKernel BiKernel::separated_term(int i, int j, const Eigen::MatrixXcd& psi, int mode_cap, double q) {
    const int L = static_cast<int>(psi.rows());
    TensorPoly left(q), right(q);
    left.add_term({0, i, i, 0}, 1.0);
    right.add_term({j, 0, 0, j}, 1.0);
    BiKernel r = radial(psi, q);
    return braces_multiply(braces_multiply(from_tensor(left, L, mode_cap), r), from_tensor(right, L, mode_cap));
}

BiKernel braces_multiply(const BiKernel& a, const BiKernel& b) {
    if (a.levels() != b.levels()) throw InvalidArgument("braces_multiply: level mismatch");
    const int L = a.levels();
    const int cap = std::max(a.mode_cap(), b.mode_cap());
    BiKernel out(L, cap, a.q());
    for (const auto& [d1, k1] : a.units()) {
        for (const auto& [d2, k2] : b.units()) {
            int d = d1 + d2;
            if (std::abs(d) > cap) continue;
            Eigen::MatrixXcd& o = out.unit_mut(d);
            // kappa_{d1+d2}(S,T) += kappa1_{d1}(S,T) kappa2_{d2}(S+d1, T+d1)
            int lo = std::max(0, -d1), hi = std::min(L, L - d1);
            if (lo >= hi) continue;
            int n = hi - lo;
            o.block(lo, lo, n, n) += k1.block(lo, lo, n, n).cwiseProduct(k2.block(lo + d1, lo + d1, n, n));
        }
    }
    return out;
}

PolarFunction kernel_apply(const BiKernel& k, const PolarFunction& f, KernelMeasure measure, const QContext& out_ctx,
                           int twist_power) {
    const int L = k.levels();
    const double q = k.q();
    const int N_out = out_ctx.radial_levels;
    const int N_in = f.levels();
    if (N_out > L) throw DegreeCapExceeded("kernel_apply: output levels exceed kernel levels");
    PolarFunction out(out_ctx);
    const double sgn = measure == KernelMeasure::Nu ? -1.0 : 1.0;
    for (int d : f.modes()) {
        if (!k.has_mode(d)) {
            bool zero = true;
            for (const cplx& v : f.samples(d)) zero = zero && v == 0.0;
            if (zero) continue;
            throw DegreeCapExceeded("kernel_apply: right-hand side mode " + std::to_string(d) + " outside kernel");
        }
        const auto& s = f.samples(d);
        const int P = d < 0 ? -d : 0;
        // F_{T+d,T}: sample index n = T - P, entry weight (q^{2T};q^{-2})_P for negative modes
        Eigen::VectorXcd weighted = Eigen::VectorXcd::Zero(L);
        for (int n = 0; n < N_in; ++n) {
            if (s[n] == 0.0) continue;
            int T = n + P;
            if (T >= L) throw DegreeCapExceeded("kernel_apply: right-hand side support exceeds kernel levels");
            double w = (1.0 - q * q) * std::pow(q, 2.0 * sgn * T) * lower_weight(T, P, q);
            weighted(T) = s[n] * w;
        }
        Eigen::VectorXcd col = k.unit(d) * weighted;
        cplx tw = twist_power == 0 ? cplx(1.0) : cplx(std::pow(q, 2.0 * twist_power * d));
        std::vector<cplx> o(N_out, 0.0);
        for (int S = 0; S < L; ++S) {
            // output matrix entry (S+d, S) -> sample
            int idx = S - P;
            if (idx < 0 || idx >= N_out) continue;
            if (d >= 0) {
                o[idx] = tw * col(S);
            } else {
                o[idx] = tw * col(S) / lower_weight(S, P, q);
            }
        }
        PolarFunction part(out_ctx);
        part.set_mode(d, std::move(o));
        out += part;
    }
    return out;
}

BiKernel geometric_kernel(const GeometricSpec& spec, int L, int cap, double q) {
    BiKernel k(L, cap, q);
    const double q2 = q * q;
    auto holo_series = [&](const std::function<cplx(int)>& coeff) {
        // sum_n coeff(n) z^n (x) zeta*^n
        for (int n = 0; n <= cap; ++n) {
            cplx c = coeff(n);
            if (c == 0.0) continue;
            Eigen::MatrixXcd& u = k.unit_mut(n);
            for (int S = 0; S + n < L; ++S)
                for (int T = 0; T + n < L; ++T) u(S, T) += c * lower_weight(T + n, n, q);
        }
    };
    auto anti_series = [&](const std::function<cplx(int)>& coeff) {
        // sum_n coeff(n) z*^n (x) zeta^n
        for (int n = 0; n <= cap; ++n) {
            cplx c = coeff(n);
            if (c == 0.0) continue;
            Eigen::MatrixXcd& u = k.unit_mut(-n);
            for (int S = n; S < L; ++S)
                for (int T = n; T < L; ++T) u(S, T) += c * lower_weight(S, n, q);
        }
    };
    auto poisson_coeff = [&](cplx gamma, int n) {
        cplx qg = std::exp(2.0 * gamma * std::log(q));
        return qpoch(qg, q2, n) / qpoch(q2, q2, n);
    };
    switch (spec.kind) {
        case GeometricKind::OneMinusZstarZeta:
            anti_series([](int) { return cplx(1.0); });
            break;
        case GeometricKind::OneMinusZZetastar: {
            cplx c = spec.param;
            holo_series([c](int n) { return std::pow(c, n); });
            break;
        }
        case GeometricKind::Y: {
            Eigen::MatrixXcd& u = k.unit_mut(0);
            for (int S = 0; S < L; ++S) u.row(S).setConstant(std::pow(q2, S));
            break;
        }
        case GeometricKind::Eta: {
            Eigen::MatrixXcd& u = k.unit_mut(0);
            for (int T = 0; T < L; ++T) u.col(T).setConstant(std::pow(q2, T));
            break;
        }
        case GeometricKind::Bergman:
            return braces_multiply(geometric_kernel({GeometricKind::OneMinusZZetastar, 1.0}, L, cap, q),
                                   geometric_kernel({GeometricKind::OneMinusZZetastar, q2}, L, cap, q));
        case GeometricKind::Cauchy:
            return braces_multiply(geometric_kernel({GeometricKind::OneMinusZZetastar, 1.0}, L, cap, q),
                                   geometric_kernel({GeometricKind::OneMinusZZetastar, 1.0 / q2}, L, cap, q));
        case GeometricKind::PoissonHolomorphic: {
            cplx g = spec.param;
            cplx qmg = std::exp(-2.0 * g * std::log(q));
            holo_series([&](int n) { return poisson_coeff(g, n) * std::pow(qmg, n); });
            break;
        }
        case GeometricKind::PoissonAntiholomorphic: {
            cplx g = spec.param;
            cplx f = std::exp((2.0 - 2.0 * g) * std::log(q));
            anti_series([&](int n) { return poisson_coeff(g, n) * std::pow(f, n); });
            break;
        }
    }
    return k;
}

BiKernel green_term(int m, int L, int cap, double q) {
    BiKernel a = braces_multiply(geometric_kernel({GeometricKind::Eta}, L, cap, q),
                                 geometric_kernel({GeometricKind::OneMinusZstarZeta}, L, cap, q));
    BiKernel b = braces_multiply(geometric_kernel({GeometricKind::Y}, L, cap, q),
                                 geometric_kernel({GeometricKind::OneMinusZZetastar, 1.0}, L, cap, q));
    BiKernel am = a, bm = b;
    for (int i = 1; i < m; ++i) {
        am = braces_multiply(am, a);
        bm = braces_multiply(bm, b);
    }
    return braces_multiply(am, bm);
}

}  // namespace qdisc
