#include "adjpair/polar.hpp"

#include <algorithm>
#include <cmath>

#include "adjpair/random.hpp"

namespace adjpair {

namespace {

void record(SampledResidual& r, const CertifiedReal& n) {
    r.value = std::max(r.value, n.value);
    r.bound = std::max(r.bound, n.bound);
    ++r.samples;
}

double relative(const DiscreteModel& model, const ModelVector& diff, const ModelVector& ref, double& bound) {
    const auto d = norm(model, diff);
    const auto r = norm(model, ref);
    bound = std::max(bound, (d.bound + d.value * r.bound / r.value) / r.value);
    return d.value / r.value;
}

// Atoms on one open ray from the origin: z_k = λ k^β (1 + η_k) with every
// η_k real and 1 + η_k > 0.
std::optional<cplx> ray_phase(const AtomGenerator& gen) {
    const auto& a = gen.asymptotics();
    for (const auto& c : a.corrections)
        if (c.coeff.imag() != 0.0) return std::nullopt;
    const cplx lead = a.leading / std::abs(a.leading);
    for (std::size_t k = 1; k < a.settle_index; ++k) {
        const cplx z = gen.atom(k);
        if (!((z / lead).real() > 0.0)) return std::nullopt;
    }
    return lead;
}

}  // namespace

std::vector<ModelVector> domain_samples(const DiscreteModel& model, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    const double beta = model.growth();
    std::vector<ModelVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        ModelVector v;
        const auto entries = rng.integer(1, 4);
        for (std::int64_t j = 0; j < entries; ++j)
            v.set_finite(static_cast<std::size_t>(rng.integer(1, 30)), rng.complex_normal());
        if (i % 2 == 1) {
            TailTerm t;
            t.coeff = rng.complex_normal();
            t.winding = static_cast<int>(rng.integer(-2, 2));
            t.decay = beta + 0.75 + rng.uniform();
            t.start = static_cast<std::size_t>(rng.integer(1, 10));
            v.add_tail(t);
        }
        out.push_back(v.normalize());
    }
    return out;
}

PolarData polar_decompose(const DiscreteModel& model, std::size_t samples, std::uint64_t seed) {
    PolarData p;
    p.phase = DiscreteModel::U();
    p.modulus = DiscreteModel::modulus();
    p.w = DiscreteModel::W();
    p.modulus_inverse_bound = 1.0 / model.eps();
    p.kernel_t_star = {apply_symbol(model, p.phase.adjoint(), model.xi())};
    p.constant_phase = ray_phase(model.generator());
    for (const auto& v : domain_samples(model, samples, seed)) {
        const ModelVector rv = apply_symbol(model, DiscreteModel::R(), v);
        const ModelVector u_mod = apply_symbol(model, p.phase, apply_symbol(model, p.modulus, v));
        const ModelVector mod_u = apply_symbol(model, p.modulus, apply_symbol(model, p.phase, v));
        record(p.phase_first, norm(model, u_mod - rv));
        record(p.modulus_first, norm(model, mod_u - rv));
    }
    return p;
}

DiagonalSymbol w_operator(const DiscreteModel&) { return DiscreteModel::W(); }

WIdentities w_identities(const DiscreteModel& model, std::size_t samples, std::uint64_t seed) {
    const DiagonalSymbol w = w_operator(model);
    WIdentities r;
    r.w_rstar_is_r = w * DiscreteModel::R_star() == DiscreteModel::R();
    r.commutes_with_z = w * DiscreteModel::Z() == DiscreteModel::Z() * w &&
                        w * DiscreteModel::Z_star() == DiscreteModel::Z_star() * w;
    r.is_phase_squared = w == DiscreteModel::U() * DiscreteModel::U();
    for (const auto& v : domain_samples(model, samples, seed)) {
        const ModelVector lhs = apply_symbol(model, w, apply_symbol(model, DiscreteModel::R_star(), v));
        record(r.w_rstar_minus_r, norm(model, lhs - apply_symbol(model, DiscreteModel::R(), v)));
        const auto nw = norm(model, apply_symbol(model, w, v));
        const auto nv = norm(model, v);
        record(r.norm_defect, {std::abs(nw.value - nv.value), nw.bound + nv.bound, 0});
    }
    return r;
}

KernelRelations kernel_relations(const DiscreteModel& model) {
    KernelRelations k;
    const ModelVector& xi = model.xi();
    const ModelVector& wxi = model.kernel_b_star().front();
    const DiagonalSymbol u = DiscreteModel::U();
    const DiagonalSymbol u_star = u.adjoint();
    k.symbol_level = u * u_star == DiagonalSymbol::identity() && u_star * u_star == DiscreteModel::W_star() &&
                     DiscreteModel::W() * DiscreteModel::W_star() == DiagonalSymbol::identity() &&
                     DiscreteModel::Z_star() * DiscreteModel::W_star() == DiscreteModel::Z();

    const ModelVector t_basis = apply_symbol(model, u_star, xi);
    k.kernel_t_star = {t_basis};
    k.a_star_from_t = relative(model, apply_symbol(model, u, t_basis) - xi, xi, k.bound);
    k.b_star_from_t = relative(model, apply_symbol(model, u_star, t_basis) - wxi, wxi, k.bound);
    k.w_maps_kernels = relative(model, apply_symbol(model, DiscreteModel::W(), wxi) - xi, xi, k.bound);

    // Both subspaces are one-dimensional; project each generator on the other.
    const ModelVector a = apply_symbol(model, DiscreteModel::Z_star(), wxi);
    const ModelVector b = apply_symbol(model, DiscreteModel::Z(), xi);
    const cplx ab = inner_product(model, a, b).value;
    const cplx c_ab = ab / inner_product(model, b, b).value;
    const cplx c_ba = std::conj(ab) / inner_product(model, a, a).value;
    k.subspace_residual = std::max(relative(model, a - c_ab * b, a, k.bound), relative(model, b - c_ba * a, b, k.bound));
    return k;
}

}  // namespace adjpair
