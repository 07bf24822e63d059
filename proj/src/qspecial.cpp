#include "qdisc/qspecial.hpp"

#include <cmath>

namespace qdisc {

namespace {

// factors closer than this to zero are treated as exact zeros
constexpr double kZeroFactor = 1e-14;

bool is_negative_power(cplx a, double q, int& k) {
    if (std::abs(a) < 1.0 - 1e-12) return false;
    double kf = -std::log(std::abs(a)) / std::log(q);
    k = static_cast<int>(std::lround(kf));
    if (k < 0) return false;
    double target = std::pow(q, -static_cast<double>(k));
    return std::abs(a - target) <= 1e-12 * target;
}

}  // namespace

cplx qpoch(cplx t, double q, int n) {
    if (n < 0) {
        cplx den = qpoch(t * std::pow(q, static_cast<double>(n)), q, -n);
        if (std::abs(den) == 0.0) throw PoleError("qpoch: vanishing denominator for negative order");
        return 1.0 / den;
    }
    cplx p = 1.0;
    cplx tq = t;
    for (int j = 0; j < n; ++j) {
        p *= (1.0 - tq);
        tq *= q;
    }
    return p;
}

cplx qpoch_inf(cplx t, double q, double tol) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("qpoch_inf: q must lie in (0,1)");
    cplx p = 1.0;
    cplx tq = t;
    const long cap = 50000000;
    for (long j = 0; j < cap; ++j) {
        if (std::abs(tq) / (1.0 - q) < tol) {
            // log of the remaining product is -tq/(1-q) to first order
            return p * std::exp(-tq / (1.0 - q));
        }
        cplx f = 1.0 - tq;
        if (std::abs(f) < kZeroFactor) return 0.0;
        p *= f;
        tq *= q;
    }
    throw DivergenceError("qpoch_inf: product did not reach tolerance");
}

cplx qpoch_gamma(cplx a, double q, cplx gamma, double tol) {
    cplx qg = std::exp(gamma * std::log(q));
    cplx den = qpoch_inf(a * qg, q, tol);
    if (den == 0.0) throw PoleError("qpoch_gamma: (a q^gamma; q)_inf vanishes");
    return qpoch_inf(a, q, tol) / den;
}

cplx qgamma(cplx x, double q, double tol) {
    cplx qx = std::exp(x * std::log(q));
    cplx den = qpoch_inf(qx, q, tol);
    if (den == 0.0) throw PoleError("qgamma: pole at non-positive integer argument");
    return qpoch_inf(q, q, tol) / den * std::exp((1.0 - x) * std::log(1.0 - q));
}

double gauss_binomial(int n, int k, double q) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (1.0 - std::pow(q, n - i)) / (1.0 - std::pow(q, i + 1));
    return r;
}

cplx c_function(cplx l, double q, double tol) {
    double q2 = q * q;
    cplx g = qgamma(l + 1.0, q2, tol);
    return qgamma(2.0 * l + 1.0, q2, tol) / (g * g);
}

HyperResult basic_hyper_ex(const std::vector<cplx>& upper, const std::vector<cplx>& lower, double q, cplx z,
                           const HyperOptions& opts) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("basic_hyper: q must lie in (0,1)");
    const int r = static_cast<int>(upper.size());
    const int s = static_cast<int>(lower.size());
    const int e = 1 + s - r;

    // terminating index from an upper parameter q^{-k}
    int term_at = -1;
    for (const cplx& a : upper) {
        int k;
        if (is_negative_power(a, q, k) && (term_at < 0 || k < term_at)) term_at = k;
    }
    for (const cplx& b : lower) {
        int k;
        if (is_negative_power(b, q, k) && (term_at < 0 || k < term_at))
            throw ParameterPoleError("basic_hyper: lower parameter equals q^{-" + std::to_string(k) + "}");
    }

    HyperResult res;
    // extended precision: terminating sums of alternating terms cancel heavily
    using lcplx = std::complex<long double>;
    lcplx term = 1.0L;
    lcplx sum = 1.0L;
    int small_run = 0;
    int grow_run = 0;
    long double qn = 1.0L;  // q^n
    const long double ql = q;
    for (int n = 0; n < opts.max_terms; ++n) {
        if (term_at >= 0 && n >= term_at) {
            res.terminated = true;
            res.value = cplx(sum);
            res.terms = n + 1;
            return res;
        }
        lcplx ratio = lcplx(z);
        bool settled = qn * ql < 1e-3L;
        for (const cplx& a : upper) {
            lcplx al(a);
            ratio *= (1.0L - al * qn);
            settled = settled && std::abs(al * qn) < 1e-3L;
        }
        for (const cplx& b : lower) {
            lcplx d = 1.0L - lcplx(b) * qn;
            if (std::abs(d) < kZeroFactor) throw ParameterPoleError("basic_hyper: vanishing lower factor");
            ratio /= d;
            settled = settled && std::abs(lcplx(b) * qn) < 1e-3L;
        }
        ratio /= (1.0L - qn * ql);
        if (e != 0) ratio *= std::pow(-qn, static_cast<long double>(e));
        term *= ratio;
        sum += term;
        if (!std::isfinite(std::abs(sum))) throw DivergenceError("basic_hyper: overflow while summing");
        if (term == 0.0L) {
            res.terminated = true;
            res.value = cplx(sum);
            res.terms = n + 2;
            return res;
        }
        if (std::abs(term) <= opts.tol * std::abs(sum)) {
            if (++small_run >= 2) {
                res.value = cplx(sum);
                res.terms = n + 2;
                return res;
            }
        } else {
            small_run = 0;
        }
        if (settled && std::abs(ratio) > 1.0L) {
            if (++grow_run >= opts.divergence_window) throw DivergenceError("basic_hyper: series diverges");
        } else {
            grow_run = 0;
        }
        qn *= q;
    }
    throw DivergenceError("basic_hyper: no convergence within max_terms");
}

cplx basic_hyper(const std::vector<cplx>& upper, const std::vector<cplx>& lower, double q, cplx z,
                 const HyperOptions& opts) {
    return basic_hyper_ex(upper, lower, q, z, opts).value;
}

cplx jackson_integral(const std::function<cplx(double)>& f, double q, double tol, int max_terms) {
    cplx sum = 0.0;
    double qm = 1.0;
    int small_run = 0;
    for (int m = 0; m < max_terms; ++m) {
        cplx t = f(qm) * qm;
        sum += t;
        if (std::abs(t) <= tol * std::max(std::abs(sum), 1e-300)) {
            if (++small_run >= 3) return (1.0 - q) * sum;
        } else {
            small_run = 0;
        }
        qm *= q;
        if (qm == 0.0) return (1.0 - q) * sum;
    }
    throw DivergenceError("jackson_integral: no convergence within max_terms");
}

}  // namespace qdisc
