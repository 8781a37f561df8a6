#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "adjpair/atoms.hpp"
#include "adjpair/vector.hpp"

namespace adjpair {

/// A value together with an upper bound on its absolute error.
struct CertifiedComplex {
    cplx value;
    double bound = 0.0;
    std::size_t terms = 0;  ///< explicit summands used before the tail estimate
};

struct CertifiedReal {
    double value = 0.0;
    double bound = 0.0;
    std::size_t terms = 0;
};

/// Neumaier's improvement of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// Σ_{k>n} k^(-exponent) for exponent > 1 by Euler–Maclaurin, with a bound
/// from the first omitted Bernoulli term.
CertifiedReal power_tail_sum(double exponent, std::size_t n);

/// ⟨v, w⟩ = Σ v_k conj(w_k) over the atoms of `gen`, summed explicitly up to
/// an adaptively doubled cutoff N and completed by an asymptotic tail
/// estimate with rigorous remainder bound. The returned bound is ≤ tol.
/// Throws DomainViolation if an argument is not square summable and
/// TailBoundFailure if n_max is reached first.
CertifiedComplex certified_inner_product(const AtomGenerator& gen, const ModelVector& v, const ModelVector& w,
                                         double tol, std::size_t n_max);

/// Same estimate at the fixed cutoff max(n, settle index, extents); the
/// bound is whatever the cutoff achieves.
CertifiedComplex truncated_inner_product(const AtomGenerator& gen, const ModelVector& v, const ModelVector& w,
                                         std::size_t n);

/// Σ_{k≤n} v_k conj(w_k) without any tail: a truncation, not an ℓ² value.
cplx partial_inner_product(const AtomGenerator& gen, const ModelVector& v, const ModelVector& w, std::size_t n);

/// Partial Gram matrix G_ij = Σ_{k≤n} (v_i)_k conj((v_j)_k), row-major.
std::vector<cplx> partial_gram(const AtomGenerator& gen, std::span<const ModelVector> vs, std::size_t n);

/// Upper bound on Σ_{k>n} |v_k|² from the atom envelope.
double tail_norm_squared_bound(const AtomGenerator& gen, const ModelVector& v, std::size_t n);

}  // namespace adjpair
