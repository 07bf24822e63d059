#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdisc {

using cplx = std::complex<double>;

enum class Precision { Double };

// Numerical parameters shared by every module.
struct QContext {
    double q = 0.5;
    int radial_levels = 64;   // N: lattice points q^{2n}, n = 0..N-1
    int angular_cutoff = 16;  // M: modes |m| <= M
    double series_tol = 1e-16;
    Precision precision = Precision::Double;

    void validate() const;
    double q2() const { return q * q; }
    // lattice point q^{2n}
    double y(int n) const;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Division by a vanishing factor, e.g. (1 - t q^k) == 0 in a q-Pochhammer quotient.
class PoleError : public Error {
public:
    using Error::Error;
};

class ParameterPoleError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

class SummabilityError : public Error {
public:
    using Error::Error;
};

class AngularOverflow : public Error {
public:
    using Error::Error;
};

class NotPolynomial : public Error {
public:
    using Error::Error;
};

class DegreeCapExceeded : public Error {
public:
    using Error::Error;
};

class DegreeOverflow : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace qdisc
