#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "adjpair/symbol.hpp"

namespace adjpair {

/// Entries coeff * |z_k|^degree (z_k/|z_k|)^winding * k^(-decay) for k ≥ start.
struct TailTerm {
    cplx coeff;
    int degree = 0;
    int winding = 0;
    double decay = 1.0;
    std::size_t start = 1;

    /// ℓ²-membership margin 2(decay - β*degree) - 1; positive means square summable.
    double l2_margin(double growth, int extra_degree = 0) const {
        return 2.0 * (decay - growth * (degree + extra_degree)) - 1.0;
    }
    bool same_shape(const TailTerm& o) const {
        return degree == o.degree && winding == o.winding && decay == o.decay && start == o.start;
    }
};

/// Vector of ℓ²(ℕ) given as a finite part plus power-law tail rules. The
/// representation is closed under the diagonal symbols, which makes ℓ² and
/// operator-domain membership decidable from exponents alone.
class ModelVector {
public:
    ModelVector() = default;

    static ModelVector unit(std::size_t k, cplx value = {1.0, 0.0});
    static ModelVector power_tail(cplx coeff, double decay, std::size_t start = 1,
                                  const DiagonalSymbol& symbol = DiagonalSymbol::identity());

    const std::map<std::size_t, cplx>& finite() const { return finite_; }
    const std::vector<TailTerm>& tails() const { return tails_; }

    void set_finite(std::size_t k, cplx value);
    void add_tail(const TailTerm& term);

    bool has_tail() const { return !tails_.empty(); }
    bool is_zero() const { return finite_.empty() && tails_.empty(); }
    /// Largest index of the finite part or tail start (0 for the zero vector).
    std::size_t extent() const;

    /// Merges tail terms of identical shape and drops exact zeros.
    ModelVector& normalize();

    /// Value at index k given the atom z_k there.
    cplx entry(std::size_t k, cplx atom) const;

    /// Multiplies the tail rules by a symbol; finite entries are left to the
    /// caller because they need atom values.
    ModelVector with_tail_symbol(const DiagonalSymbol& s) const;

    ModelVector& operator+=(const ModelVector& o);
    ModelVector& operator-=(const ModelVector& o);
    ModelVector& operator*=(cplx c);

    friend ModelVector operator+(ModelVector a, const ModelVector& b) { return a += b; }
    friend ModelVector operator-(ModelVector a, const ModelVector& b) { return a -= b; }
    friend ModelVector operator*(cplx c, ModelVector v) { return v *= c; }
    friend ModelVector operator*(ModelVector v, cplx c) { return v *= c; }
    ModelVector operator-() const { return cplx{-1.0, 0.0} * *this; }

    bool operator==(const ModelVector& o) const;

private:
    std::map<std::size_t, cplx> finite_;
    std::vector<TailTerm> tails_;
};

/// k^(-decay) with exact fast paths for small half-integer decays.
double inv_kpow(std::size_t k, double decay);

}  // namespace adjpair
