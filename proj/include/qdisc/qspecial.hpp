#pragma once

#include <functional>
#include <vector>

#include "qdisc/core.hpp"

namespace qdisc {

// (t;q)_n. Negative n uses (t;q)_{-n} = 1/(t q^{-n};q)_n.
cplx qpoch(cplx t, double q, int n);

// (t;q)_inf, truncated once |t q^J|/(1-q) < tol with a first-order tail correction.
cplx qpoch_inf(cplx t, double q, double tol = 1e-16);

// (a;q)_gamma = (a;q)_inf / (a q^gamma;q)_inf
cplx qpoch_gamma(cplx a, double q, cplx gamma, double tol = 1e-16);

// Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^{1-x}
cplx qgamma(cplx x, double q, double tol = 1e-16);

// [n choose k]_q
double gauss_binomial(int n, int k, double q);

// c(l) = Gamma_{q^2}(2l+1) / Gamma_{q^2}(l+1)^2
cplx c_function(cplx l, double q, double tol = 1e-16);

struct HyperOptions {
    int max_terms = 20000;
    double tol = 1e-16;
    // consecutive growing terms (after the parameter factors settle) that signal divergence
    int divergence_window = 3;
};

struct HyperResult {
    cplx value;
    int terms = 0;
    bool terminated = false;
};

// r phi s (upper; lower; q, z) with the standard ((-1)^n q^{n(n-1)/2})^{1+s-r} factor.
HyperResult basic_hyper_ex(const std::vector<cplx>& upper, const std::vector<cplx>& lower, double q, cplx z,
                           const HyperOptions& opts = {});
cplx basic_hyper(const std::vector<cplx>& upper, const std::vector<cplx>& lower, double q, cplx z,
                 const HyperOptions& opts = {});

// int_0^1 f(t) d_q t = (1-q) sum_m f(q^m) q^m
cplx jackson_integral(const std::function<cplx(double)>& f, double q, double tol = 1e-16, int max_terms = 200000);

}  // namespace qdisc
