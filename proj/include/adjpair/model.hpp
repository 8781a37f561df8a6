#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adjpair/atoms.hpp"
#include "adjpair/summation.hpp"
#include "adjpair/symbol.hpp"
#include "adjpair/vector.hpp"

namespace adjpair {

struct Tolerance {
    double inner_product = 1e-10;
    double residual = 1e-8;
    double subspace = 1e-8;
    std::size_t n_max = std::size_t{1} << 24;

    /// Throws InvalidArgument unless all fields are positive and
    /// inner_product ≤ residual.
    void validate() const;
};

/// Diagonal model: R = multiplication by z on ℓ² over the atoms of the
/// generator, with the adjoint pair A = R↾Z(I-P)ℋ, B = R*↾Z(I-P)ℋ where P
/// projects onto ℂξ. Then 𝒩(A*) = ℂξ and 𝒩(B*) = ℂW*ξ.
class DiscreteModel {
public:
    const AtomGenerator& generator() const { return generator_; }
    const ModelVector& xi() const { return xi_; }
    const Tolerance& tolerance() const { return tolerance_; }
    double growth() const { return generator_.growth(); }
    double eps() const { return generator_.eps(); }
    /// FNV-1a hash of the canonical model description.
    std::uint64_t digest() const { return digest_; }
    std::string digest_hex() const;

    static constexpr DiagonalSymbol R() { return DiagonalSymbol::z(); }
    static constexpr DiagonalSymbol R_star() { return DiagonalSymbol::zbar(); }
    static constexpr DiagonalSymbol Z() { return DiagonalSymbol::z_inv(); }
    static constexpr DiagonalSymbol Z_star() { return DiagonalSymbol::zbar_inv(); }
    static constexpr DiagonalSymbol U() { return DiagonalSymbol::phase(); }
    static constexpr DiagonalSymbol W() { return DiagonalSymbol::from_powers(1, -1, 0); }
    static constexpr DiagonalSymbol W_star() { return DiagonalSymbol::from_powers(-1, 1, 0); }
    static constexpr DiagonalSymbol modulus() { return DiagonalSymbol::modulus(); }
    static constexpr DiagonalSymbol modulus_inv() { return DiagonalSymbol::modulus_inv(); }

    /// Bases of 𝒩(A*) and 𝒩(B*); one vector each.
    const std::vector<ModelVector>& kernel_a_star() const { return kernel_a_; }
    const std::vector<ModelVector>& kernel_b_star() const { return kernel_b_; }

    /// ‖ξ‖² with its certified error.
    const CertifiedComplex& xi_norm_squared() const { return xi_norm2_; }

private:
    friend DiscreteModel build_model(AtomGenerator, ModelVector, Tolerance);
    DiscreteModel(AtomGenerator g, ModelVector xi, Tolerance tol);

    AtomGenerator generator_;
    ModelVector xi_;
    Tolerance tolerance_;
    std::uint64_t digest_ = 0;
    std::vector<ModelVector> kernel_a_;
    std::vector<ModelVector> kernel_b_;
    CertifiedComplex xi_norm2_;
};

/// Validates the generator and ξ. Throws EpsGapViolated, XiNotL2 or
/// XiInDomainOfR.
DiscreteModel build_model(AtomGenerator generator, ModelVector xi, Tolerance tolerance = {});

/// True iff v lies in the domain of the multiplication by `symbol`.
bool in_domain(const DiscreteModel& model, const ModelVector& v, const DiagonalSymbol& symbol);

/// Entrywise product. Throws DomainViolation outside the domain.
ModelVector apply_symbol(const DiscreteModel& model, const DiagonalSymbol& symbol, const ModelVector& v);

/// Certified ⟨v, w⟩ (linear in v). Defaults to the model's inner-product tolerance.
CertifiedComplex inner_product(const DiscreteModel& model, const ModelVector& v, const ModelVector& w,
                               std::optional<double> tol = std::nullopt);

/// Certified ‖v‖.
CertifiedReal norm(const DiscreteModel& model, const ModelVector& v, std::optional<double> tol = std::nullopt);

/// Canonical text form of a vector, used for digests and reports.
std::string describe(const ModelVector& v);

}  // namespace adjpair
