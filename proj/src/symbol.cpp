#include "adjpair/symbol.hpp"

#include <cmath>
#include <sstream>

namespace adjpair {

namespace {

double int_pow(double x, int n) {
    double base = n < 0 ? 1.0 / x : x;
    unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
    double r = 1.0;
    while (e) {
        if (e & 1U) r *= base;
        base *= base;
        e >>= 1U;
    }
    return r;
}

cplx int_pow(cplx x, int n) {
    // unit-modulus inputs only, so the inverse is the conjugate
    cplx base = n < 0 ? std::conj(x) : x;
    unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
    cplx r{1.0, 0.0};
    while (e) {
        if (e & 1U) r *= base;
        base *= base;
        e >>= 1U;
    }
    return r;
}

}  // namespace

cplx monomial_value(double modulus, cplx phase, int degree, int winding) {
    double m = degree == 0 ? 1.0 : int_pow(modulus, degree);
    switch (winding) {
        case 0: return {m, 0.0};
        case 1: return m * phase;
        case -1: return m * std::conj(phase);
        default: return m * int_pow(phase, winding);
    }
}

cplx DiagonalSymbol::evaluate(cplx z) const {
    const double r = std::abs(z);
    return scale_ * monomial_value(r, z / r, degree_, winding_);
}

std::string DiagonalSymbol::to_string() const {
    std::ostringstream os;
    if (scale_ != cplx{1.0, 0.0}) os << "(" << scale_.real() << (scale_.imag() < 0 ? "-" : "+")
                                     << std::abs(scale_.imag()) << "i)*";
    // names for the monoid generators and their common products
    if (degree_ == 0 && winding_ == 0) os << "1";
    else if (degree_ == winding_ && degree_ > 0) os << (degree_ == 1 ? std::string("z") : "z^" + std::to_string(degree_));
    else if (degree_ == -winding_ && degree_ > 0) os << (degree_ == 1 ? std::string("zbar") : "zbar^" + std::to_string(degree_));
    else if (degree_ == winding_ && degree_ < 0) os << (degree_ == -1 ? std::string("1/z") : "z^" + std::to_string(degree_));
    else if (degree_ == -winding_ && degree_ < 0) os << (degree_ == -1 ? std::string("1/zbar") : "zbar^" + std::to_string(degree_));
    else {
        os << "|z|^" << degree_ << "*(z/|z|)^" << winding_;
    }
    return os.str();
}

}  // namespace adjpair
