#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "adjpair/model.hpp"

namespace adjpair {

class Rng;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Element x0 = Z g of 𝒟(A) = 𝒟(B), presented by its core g ∈ (I-P)ℋ.
/// Then A x0 = g and B x0 = W* g hold exactly at the symbol level; the only
/// numerical error is the residual overlap ⟨g, ξ⟩, bounded by offset_bound
/// in units of ‖ξ‖².
class DomainElement {
public:
    DomainElement() = default;

    const ModelVector& core() const { return core_; }
    double offset_bound() const { return offset_bound_; }
    bool is_zero() const { return core_.is_zero(); }

private:
    friend DomainElement project_domain(const DiscreteModel&, const ModelVector&);
    friend DomainElement domain_from_core(const DiscreteModel&, const ModelVector&);

    ModelVector core_;
    double offset_bound_ = 0.0;
};

/// x0 = Z(I-P)h.
DomainElement project_domain(const DiscreteModel& model, const ModelVector& h);
/// x0 = Z g for g already orthogonal to ξ; throws NotInDomain otherwise.
DomainElement domain_from_core(const DiscreteModel& model, const ModelVector& g);

ModelVector domain_vector(const DiscreteModel& model, const DomainElement& d);
ModelVector apply_a(const DiscreteModel& model, const DomainElement& d);
ModelVector apply_b(const DiscreteModel& model, const DomainElement& d);

/// x = x0 + (R*)⁻¹v1 + u1 with v1, u1 given by coefficients in the kernel bases.
struct AStarElement {
    std::uint64_t model = 0;
    DomainElement x0;
    CVector v1;
    CVector u1;
};

/// y = y0 + R⁻¹u2 + v2.
struct BStarElement {
    std::uint64_t model = 0;
    DomainElement y0;
    CVector u2;
    CVector v2;
};

AStarElement make_astar(const DiscreteModel& model, DomainElement x0, CVector v1, CVector u1);
BStarElement make_bstar(const DiscreteModel& model, DomainElement y0, CVector u2, CVector v2);

ModelVector recompose(const DiscreteModel& model, const AStarElement& e);
ModelVector recompose(const DiscreteModel& model, const BStarElement& e);

/// A*x = B x0 + v1. Throws InvalidElement or ModelMismatch.
ModelVector astar_apply(const DiscreteModel& model, const AStarElement& e);
/// B*y = A y0 + u2.
ModelVector bstar_apply(const DiscreteModel& model, const BStarElement& e);

/// Point of 𝒦 = 𝒩(A*) ⊕ 𝒩(B*) in kernel-basis coordinates.
struct BoundaryValue {
    CVector u;
    CVector v;
};

/// Γ0 = (u1, v1), Γ1 = (u2, -v2). Throws ModelMismatch.
std::pair<BoundaryValue, BoundaryValue> boundary_maps(const AStarElement& ea, const BStarElement& eb);

/// Certified Gram matrices of the kernel bases.
struct KernelGram {
    CMatrix a;
    CMatrix b;
    double bound_a = 0.0;
    double bound_b = 0.0;
};
KernelGram kernel_gram(const DiscreteModel& model);

/// (k, k') = ⟨u, u'⟩ + ⟨v, v'⟩.
cplx k_inner(const KernelGram& g, const BoundaryValue& k, const BoundaryValue& kp);

struct GreenResult {
    double residual = 0.0;
    double bound = 0.0;
    cplx lhs;
    cplx rhs;
};

using ElementPair = std::pair<AStarElement, BStarElement>;

/// |⟨B*y,x'⟩ + ⟨A*x,y'⟩ - ⟨x,B*y'⟩ - ⟨y,A*x'⟩ - (Γ1(x,y),Γ0(x',y')) + (Γ0(x,y),Γ1(x',y'))|
/// together with a certified bound on the rounding and truncation error of
/// both sides.
GreenResult green_residual(const DiscreteModel& model, const ElementPair& p1, const ElementPair& p2,
                           std::optional<double> tol = std::nullopt);

enum class PieceTag { DomainB, RstarInvKernelB, KernelA };

struct PresentedPiece {
    PieceTag tag;
    ModelVector vector;
};

/// The three summands of the element as tagged vectors.
std::vector<PresentedPiece> presentation(const DiscreteModel& model, const AStarElement& e);

/// Canonical triple from a tagged sum. Each piece is checked against its
/// tag; throws NotInDomain when a piece does not belong to its summand.
AStarElement redecompose(const DiscreteModel& model, std::span<const PresentedPiece> pieces);

/// Triple of a raw vector of 𝒟(A*): the ξ-coefficient is read off the tail
/// outside 𝒟(R), the (R*)⁻¹𝒩(B*) coefficient from ⟨R(x - aξ), ξ⟩.
/// Throws NotInDomain when x ∉ 𝒟(A*).
AStarElement decompose(const DiscreteModel& model, const ModelVector& x);

/// Elements with x0 = y0 = 0 and prescribed boundary values.
ElementPair lift_boundary(const DiscreteModel& model, const BoundaryValue& gamma0, const BoundaryValue& gamma1);

/// Seeded random elements: x0 = Z(I-P)h with h a random finite part plus at
/// most one power tail, and complex normal kernel coefficients.
DomainElement random_domain(const DiscreteModel& model, Rng& rng);
AStarElement random_astar(const DiscreteModel& model, Rng& rng);
BStarElement random_bstar(const DiscreteModel& model, Rng& rng);
CVector random_coefficients(Eigen::Index n, Rng& rng);

}  // namespace adjpair
