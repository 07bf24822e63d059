#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qdisc/core.hpp"
#include "qdisc/ncpoly.hpp"

namespace qdisc {

// polynomial in y, coefficient i multiplies y^i
using RadialPoly = std::vector<cplx>;

cplx eval_radial(const RadialPoly& p, cplx y);
// coefficients of (y; q^{-2})_k
RadialPoly radial_pochhammer(int k, double q);

// f = sum_{m>=0} z^m psi_m(y) + sum_{m<0} psi_m(y) z*^{|m|}, sampled at y = q^{2n}, n < N.
class PolarFunction {
public:
    explicit PolarFunction(const QContext& ctx);

    static PolarFunction indicator(const QContext& ctx, int mode, int level, cplx value = 1.0);

    const QContext& ctx() const { return ctx_; }
    int levels() const { return ctx_.radial_levels; }

    void set_mode(int m, std::vector<cplx> samples);
    void set_mode_closed(int m, RadialPoly p);
    bool has_mode(int m) const { return modes_.count(m) != 0; }
    std::vector<int> modes() const;
    // samples of mode m (all zero if absent)
    const std::vector<cplx>& samples(int m) const;
    cplx sample(int m, int n) const;
    const RadialPoly* closed(int m) const;
    bool exact() const;
    double max_abs() const;
    double max_abs_diff(const PolarFunction& o) const;

    PolarFunction& operator+=(const PolarFunction& o);
    PolarFunction& operator-=(const PolarFunction& o);
    PolarFunction& operator*=(cplx c);

private:
    struct Mode {
        std::vector<cplx> samples;
        std::optional<RadialPoly> closed;
    };
    void check_mode(int m) const;

    QContext ctx_;
    std::map<int, Mode> modes_;
    std::vector<cplx> zeros_;
};

PolarFunction operator+(PolarFunction a, const PolarFunction& b);
PolarFunction operator-(PolarFunction a, const PolarFunction& b);
PolarFunction operator*(PolarFunction a, cplx c);
PolarFunction operator*(cplx c, PolarFunction a);

PolarFunction to_polar(const NormalPoly& f, const QContext& ctx);
// requires closed-form radial parts (NotPolynomial otherwise)
NormalPoly from_polar(const PolarFunction& f);

// f g where g = g(y) is given by its lattice samples on n < N (and g(q^{2n}) for n up to N+|m| as needed)
PolarFunction multiply_radial_right(const PolarFunction& f, const std::vector<cplx>& g_samples);

}  // namespace qdisc
