#pragma once

#include <complex>
#include <string>

namespace adjpair {

using cplx = std::complex<double>;

/// Diagonal multiplication symbol  scale * |z|^degree * (z/|z|)^winding.
///
/// Every product of z, z̄, z⁻¹, z̄⁻¹, |z|, |z|⁻¹, z/|z| and z̄/|z| has this
/// form: z^a z̄^b |z|^m = |z|^(a+b+m) (z/|z|)^(a-b). Storing the pair
/// (degree, winding) makes symbol identities such as z/z̄ = (z/|z|)² hold
/// exactly, without any floating-point comparison.
class DiagonalSymbol {
public:
    constexpr DiagonalSymbol() = default;
    constexpr DiagonalSymbol(cplx scale, int degree, int winding)
        : scale_(scale), degree_(degree), winding_(winding) {}

    /// z^a z̄^b |z|^m
    static constexpr DiagonalSymbol from_powers(int a, int b, int m) {
        return {cplx{1.0, 0.0}, a + b + m, a - b};
    }

    static constexpr DiagonalSymbol identity() { return {}; }
    static constexpr DiagonalSymbol z() { return from_powers(1, 0, 0); }
    static constexpr DiagonalSymbol zbar() { return from_powers(0, 1, 0); }
    static constexpr DiagonalSymbol z_inv() { return from_powers(-1, 0, 0); }
    static constexpr DiagonalSymbol zbar_inv() { return from_powers(0, -1, 0); }
    static constexpr DiagonalSymbol modulus() { return from_powers(0, 0, 1); }
    static constexpr DiagonalSymbol modulus_inv() { return from_powers(0, 0, -1); }
    /// z/|z|
    static constexpr DiagonalSymbol phase() { return from_powers(1, 0, -1); }
    /// z̄/|z|
    static constexpr DiagonalSymbol phase_conj() { return from_powers(0, 1, -1); }
    static DiagonalSymbol constant(cplx c) { return {c, 0, 0}; }

    constexpr cplx scale() const { return scale_; }
    /// Net homogeneity in |z|.
    constexpr int degree() const { return degree_; }
    constexpr int winding() const { return winding_; }

    /// True when the symbol has modulus |scale| at every nonzero z.
    bool unimodular() const { return degree_ == 0 && std::abs(scale_) == 1.0; }

    DiagonalSymbol operator*(const DiagonalSymbol& o) const {
        return {scale_ * o.scale_, degree_ + o.degree_, winding_ + o.winding_};
    }
    DiagonalSymbol scaled(cplx c) const { return {scale_ * c, degree_, winding_}; }

    /// Symbol of the adjoint multiplication operator.
    DiagonalSymbol adjoint() const {
        return {std::conj(scale_), degree_, -winding_};
    }
    DiagonalSymbol inverse() const { return {1.0 / scale_, -degree_, -winding_}; }

    constexpr bool same_monomial(const DiagonalSymbol& o) const {
        return degree_ == o.degree_ && winding_ == o.winding_;
    }
    bool operator==(const DiagonalSymbol& o) const {
        return same_monomial(o) && scale_ == o.scale_;
    }

    cplx evaluate(cplx z) const;
    std::string to_string() const;

private:
    cplx scale_{1.0, 0.0};
    int degree_ = 0;
    int winding_ = 0;
};

/// |z|^degree (z/|z|)^winding, with the modulus and phase precomputed.
cplx monomial_value(double modulus, cplx phase, int degree, int winding);

}  // namespace adjpair
