#pragma once

#include <optional>
#include <string>

#include "adjpair/vishik.hpp"

namespace adjpair {

/// Finite-dimensional geometry of 𝒦 and of the vectors (R*)⁻¹v + u, R⁻¹u + v.
///
/// The generators f = [u-basis, v-basis, R⁻¹u-basis, (R*)⁻¹v-basis] have a
/// certified Gram matrix G = VΛV^H; coefficient vectors p are embedded
/// isometrically as Λ^{1/2}V^T p, dropping the null directions of G.
class KernelFrame {
public:
    explicit KernelFrame(const DiscreteModel& model);

    Eigen::Index dim_a() const { return dim_a_; }
    Eigen::Index dim_b() const { return dim_b_; }
    Eigen::Index dim_k() const { return dim_a_ + dim_b_; }
    const CMatrix& gram_a() const { return gram_a_; }
    const CMatrix& gram_b() const { return gram_b_; }
    /// Gram of 𝒦 = 𝒩(A*) ⊕ 𝒩(B*) in the stacked (u; v) coordinates.
    CMatrix gram_k() const;
    /// Largest certified error of a Gram entry.
    double gram_bound() const { return bound_; }
    double subspace_tol() const { return subspace_tol_; }
    std::uint64_t model() const { return model_; }

    /// Coordinates of Σ p_i f_i in which the ℋ inner product is x^T conj(y).
    CMatrix embed(const CMatrix& p) const;
    /// Coordinates of (u; v) ∈ 𝒦 in which the 𝒦 inner product is x^T conj(y).
    CMatrix k_embed(const CMatrix& k) const;

private:
    std::uint64_t model_;
    Eigen::Index dim_a_;
    Eigen::Index dim_b_;
    CMatrix gram_a_;
    CMatrix gram_b_;
    CMatrix embedding_;    // r × 2dim_k
    CMatrix k_embedding_;  // dim_k × dim_k
    double bound_ = 0.0;
    double subspace_tol_;
};

/// Subspace C ⊆ 𝒦 with linearly independent basis columns (u; v).
class ExtensionSubspace {
public:
    /// Throws DegenerateSubspace for dependent columns and InvalidArgument
    /// for a wrong row count.
    ExtensionSubspace(const KernelFrame& frame, CMatrix basis);

    static ExtensionSubspace zero(const KernelFrame& frame);
    static ExtensionSubspace whole(const KernelFrame& frame);

    const CMatrix& basis() const { return basis_; }
    Eigen::Index dim() const { return basis_.cols(); }
    Eigen::Index dim_a() const { return dim_a_; }
    auto u_part() const { return basis_.topRows(dim_a_); }
    auto v_part() const { return basis_.bottomRows(basis_.rows() - dim_a_); }

    /// 𝒦-norm distance of (u; v) from the subspace, relative to ‖(u; v)‖.
    double relative_distance(const KernelFrame& frame, const CVector& k) const;

private:
    ExtensionSubspace(CMatrix basis, Eigen::Index dim_a) : basis_(std::move(basis)), dim_a_(dim_a) {}
    CMatrix basis_;
    Eigen::Index dim_a_;
};

/// Relative distance between two subspaces in the 𝒦 metric (max of the two
/// one-sided projection residuals; 1 when the dimensions differ).
double subspace_distance(const KernelFrame& frame, const ExtensionSubspace& a, const ExtensionSubspace& b);

/// C′ = {(u2, v2): ⟨v1, v2⟩ = ⟨u1, u2⟩ for all (u1, v1) ∈ C}.
ExtensionSubspace cprime(const KernelFrame& frame, const ExtensionSubspace& c);

/// T_C x = A*x for x with (u1, v1) ∈ C. Throws NotInExtensionDomain.
ModelVector t_c_apply(const DiscreteModel& model, const KernelFrame& frame, const ExtensionSubspace& c,
                      const AStarElement& e);
/// S_{C′} y = B*y for y with (u2, v2) ∈ C′.
ModelVector s_cprime_apply(const DiscreteModel& model, const KernelFrame& frame, const ExtensionSubspace& c,
                           const BStarElement& e);

enum class NotNormalReason { DomainMismatch, NormMismatch, DegenerateDim };
std::string to_string(NotNormalReason r);

struct NormalityVerdict {
    bool normal = false;
    std::optional<NotNormalReason> reason;
    /// Isometry u2 ↦ v1 of the matched pairs, 𝒩(A*) → 𝒩(B*) coordinates (Normal only).
    CMatrix witness;
    double domain_residual = 0.0;  ///< condition (i)
    double norm_residual = 0.0;    ///< condition (ii)
    double threshold = 0.0;
};

/// Decides normality of T_C by the domain condition (i) and the norm
/// condition (ii) on the matching produced by the (i) solve.
NormalityVerdict check_normal(const KernelFrame& frame, const ExtensionSubspace& c,
                              std::optional<double> tol = std::nullopt);

/// Operator C: 𝒩(B*) → 𝒩(A*) as a dim_a × dim_b matrix; C = graph.
struct GraphOperator {
    CMatrix matrix;
};

ExtensionSubspace graph(const KernelFrame& frame, const GraphOperator& g);
/// C* with respect to the kernel Gram inner products.
CMatrix graph_adjoint(const KernelFrame& frame, const GraphOperator& g);

/// Solves R⁻¹u + C*u = (R*)⁻¹Uu + CUu for U and returns it when the system
/// is consistent and U is an isometry onto 𝒩(B*).
std::optional<CMatrix> boundary_isometry(const KernelFrame& frame, const GraphOperator& g,
                                         std::optional<double> tol = std::nullopt);

/// For T_C normal, re-presents z = x0 + (R*)⁻¹v1 + u1 as y0 + R⁻¹u2 + v2 with
/// y0 = x0 and (u2, v2) ∈ C′, so that (T_C)* z = B*z of the result.
BStarElement adjoint_presentation(const DiscreteModel& model, const KernelFrame& frame, const ExtensionSubspace& c,
                                  const AStarElement& e);

}  // namespace adjpair
