#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adjpair/model.hpp"

namespace adjpair {

/// Largest certified ‖a_i - b_i‖ over a sample set.
struct SampledResidual {
    double value = 0.0;
    double bound = 0.0;
    std::size_t samples = 0;
};

/// R = U|R| with U = z/|z| and |R| = |z|; T = |R| restricted to 𝒟(A).
struct PolarData {
    DiagonalSymbol phase;
    DiagonalSymbol modulus;
    DiagonalSymbol w;
    /// ‖|R|⁻¹‖ ≤ 1/eps.
    double modulus_inverse_bound = 0.0;
    /// Basis of 𝒩(T*) = U*𝒩(A*).
    std::vector<ModelVector> kernel_t_star;
    /// Value of U on every atom when all atoms lie on one open ray from 0.
    std::optional<cplx> constant_phase;
    SampledResidual phase_first;   ///< ‖U|R|v - Rv‖
    SampledResidual modulus_first; ///< ‖|R|Uv - Rv‖
};

/// Seeded random vectors of 𝒟(R): finite parts plus tails decaying fast enough.
std::vector<ModelVector> domain_samples(const DiscreteModel& model, std::size_t count, std::uint64_t seed);

PolarData polar_decompose(const DiscreteModel& model, std::size_t samples = 8, std::uint64_t seed = 7);

/// W = z/z̄, the unitary with W R* = R.
DiagonalSymbol w_operator(const DiscreteModel& model);

struct WIdentities {
    bool w_rstar_is_r = false;    ///< symbol level
    bool commutes_with_z = false; ///< W Z = Z W and W Z* = Z* W
    bool is_phase_squared = false;
    SampledResidual w_rstar_minus_r;  ///< ‖W R* v - R v‖ on 𝒟(R) samples
    SampledResidual norm_defect;      ///< |‖Wv‖ - ‖v‖|
};

WIdentities w_identities(const DiscreteModel& model, std::size_t samples = 8, std::uint64_t seed = 11);

struct KernelRelations {
    std::vector<ModelVector> kernel_t_star;
    double a_star_from_t = 0.0;    ///< ‖U(U*ξ) - ξ‖ relative: 𝒩(A*) = U𝒩(T*)
    double b_star_from_t = 0.0;    ///< ‖U*(U*ξ) - W*ξ‖ relative: 𝒩(B*) = U*𝒩(T*)
    double w_maps_kernels = 0.0;   ///< ‖W(W*ξ) - ξ‖ relative
    double subspace_residual = 0.0;  ///< (R*)⁻¹𝒩(B*) vs R⁻¹𝒩(A*), mutual projection residual
    double bound = 0.0;            ///< certified bound shared by the residuals above
    bool symbol_level = false;     ///< U·U* = 1, U*·U* = W*, W·W* = 1, Z*·W* = Z exactly
};

KernelRelations kernel_relations(const DiscreteModel& model);

}  // namespace adjpair
