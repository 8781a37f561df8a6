#include "adjpair/vishik.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "adjpair/error.hpp"
#include "adjpair/random.hpp"

namespace adjpair {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;
// Relative size below which a cancelled tail coefficient counts as zero.
constexpr double kTailCancellation = 1e-12;

void check_model(const DiscreteModel& model, std::uint64_t digest, const char* what) {
    if (digest != model.digest())
        throw Error(ErrorKind::ModelMismatch, "vishik", std::string(what) + " was built for a different model");
}

void check_dims(const DiscreteModel& model, const CVector& b_coeffs, const CVector& a_coeffs) {
    if (static_cast<std::size_t>(b_coeffs.size()) != model.kernel_b_star().size() ||
        static_cast<std::size_t>(a_coeffs.size()) != model.kernel_a_star().size())
        throw Error(ErrorKind::InvalidElement, "vishik", "kernel coefficient vector has the wrong dimension");
    if (!b_coeffs.allFinite() || !a_coeffs.allFinite())
        throw Error(ErrorKind::InvalidElement, "vishik", "kernel coefficients must be finite");
}

ModelVector combine(const std::vector<ModelVector>& basis, const CVector& coeffs) {
    ModelVector out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coeffs[static_cast<Eigen::Index>(i)] != cplx{}) out += coeffs[static_cast<Eigen::Index>(i)] * basis[i];
    return out;
}

std::vector<ModelVector> mapped(const DiscreteModel& model, const DiagonalSymbol& s, const std::vector<ModelVector>& b) {
    std::vector<ModelVector> out;
    out.reserve(b.size());
    for (const auto& v : b) out.push_back(apply_symbol(model, s, v));
    return out;
}

// ε ≥ |⟨g,ξ⟩|/‖ξ‖² from a certified ⟨g,ξ⟩ and ‖ξ‖².
double overlap_bound(const DiscreteModel& model, const CertifiedComplex& g_xi, cplx already_removed = {}) {
    const auto& s = model.xi_norm_squared();
    const double denom = s.value.real() - s.bound;
    return (std::abs(g_xi.value - already_removed * s.value) + g_xi.bound + std::abs(already_removed) * s.bound) / denom;
}

const TailTerm* largest_tail(const ModelVector& v) {
    const TailTerm* best = nullptr;
    for (const auto& t : v.tails())
        if (!best || std::abs(t.coeff) > std::abs(best->coeff)) best = &t;
    return best;
}

cplx tail_coefficient(const ModelVector& v, const TailTerm& shape) {
    for (const auto& t : v.tails())
        if (t.same_shape(shape)) return t.coeff;
    return {};
}

// Coefficient c with v ≈ c·basis and a check that the remainder is negligible.
cplx coefficient_along(const DiscreteModel& model, const ModelVector& v, const ModelVector& basis, const char* what) {
    if (v.is_zero()) return {};
    cplx c;
    if (const TailTerm* ref = largest_tail(basis)) {
        c = tail_coefficient(v, *ref) / ref->coeff;
    } else {
        c = inner_product(model, v, basis).value / inner_product(model, basis, basis).value;
    }
    const auto rest = norm(model, v - c * basis);
    const auto scale = norm(model, v);
    if (rest.value - rest.bound > model.tolerance().subspace * scale.value) {
        std::ostringstream os;
        os << what << " piece is not in its summand (relative remainder " << rest.value / scale.value << ")";
        throw Error(ErrorKind::NotInDomain, "vishik", os.str());
    }
    return c;
}

}  // namespace

DomainElement project_domain(const DiscreteModel& model, const ModelVector& h) {
    if (!in_domain(model, h, DiagonalSymbol::identity()))
        throw Error(ErrorKind::InvalidElement, "vishik", "domain presentation vector is not square summable");
    DomainElement d;
    if (h.is_zero()) return d;
    const auto h_xi = inner_product(model, h, model.xi());
    const cplx c = h_xi.value / model.xi_norm_squared().value;
    d.core_ = h - c * model.xi();
    d.offset_bound_ = overlap_bound(model, h_xi, c);
    return d;
}

DomainElement domain_from_core(const DiscreteModel& model, const ModelVector& g) {
    if (!in_domain(model, g, DiagonalSymbol::identity()))
        throw Error(ErrorKind::NotInDomain, "vishik", "core vector is not square summable");
    DomainElement d;
    if (g.is_zero()) return d;
    const auto g_xi = inner_product(model, g, model.xi());
    const double scale = norm(model, g).value * std::sqrt(model.xi_norm_squared().value.real());
    if (std::abs(g_xi.value) - g_xi.bound > model.tolerance().subspace * scale)
        throw Error(ErrorKind::NotInDomain, "vishik", "vector is not in Z(I-P)H: its image under R is not orthogonal to xi");
    d.core_ = g;
    d.offset_bound_ = overlap_bound(model, g_xi);
    return d;
}

ModelVector domain_vector(const DiscreteModel& model, const DomainElement& d) {
    return apply_symbol(model, DiscreteModel::Z(), d.core());
}

ModelVector apply_a(const DiscreteModel&, const DomainElement& d) { return d.core(); }

ModelVector apply_b(const DiscreteModel& model, const DomainElement& d) {
    return apply_symbol(model, DiscreteModel::W_star(), d.core());
}

AStarElement make_astar(const DiscreteModel& model, DomainElement x0, CVector v1, CVector u1) {
    check_dims(model, v1, u1);
    return {model.digest(), std::move(x0), std::move(v1), std::move(u1)};
}

BStarElement make_bstar(const DiscreteModel& model, DomainElement y0, CVector u2, CVector v2) {
    check_dims(model, v2, u2);
    return {model.digest(), std::move(y0), std::move(u2), std::move(v2)};
}

ModelVector recompose(const DiscreteModel& model, const AStarElement& e) {
    check_model(model, e.model, "A* element");
    check_dims(model, e.v1, e.u1);
    ModelVector x = domain_vector(model, e.x0);
    x += combine(mapped(model, DiscreteModel::Z_star(), model.kernel_b_star()), e.v1);
    x += combine(model.kernel_a_star(), e.u1);
    return x;
}

ModelVector recompose(const DiscreteModel& model, const BStarElement& e) {
    check_model(model, e.model, "B* element");
    check_dims(model, e.v2, e.u2);
    ModelVector y = domain_vector(model, e.y0);
    y += combine(mapped(model, DiscreteModel::Z(), model.kernel_a_star()), e.u2);
    y += combine(model.kernel_b_star(), e.v2);
    return y;
}

ModelVector astar_apply(const DiscreteModel& model, const AStarElement& e) {
    check_model(model, e.model, "A* element");
    check_dims(model, e.v1, e.u1);
    return apply_b(model, e.x0) + combine(model.kernel_b_star(), e.v1);
}

ModelVector bstar_apply(const DiscreteModel& model, const BStarElement& e) {
    check_model(model, e.model, "B* element");
    check_dims(model, e.v2, e.u2);
    return apply_a(model, e.y0) + combine(model.kernel_a_star(), e.u2);
}

std::pair<BoundaryValue, BoundaryValue> boundary_maps(const AStarElement& ea, const BStarElement& eb) {
    if (ea.model != eb.model)
        throw Error(ErrorKind::ModelMismatch, "vishik", "boundary maps need elements of one model");
    return {BoundaryValue{ea.u1, ea.v1}, BoundaryValue{eb.u2, -eb.v2}};
}

KernelGram kernel_gram(const DiscreteModel& model) {
    auto gram = [&](const std::vector<ModelVector>& basis, double& bound) {
        const auto n = static_cast<Eigen::Index>(basis.size());
        CMatrix g(n, n);
        bound = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i; j < n; ++j) {
                const auto ip = inner_product(model, basis[i], basis[j]);
                g(i, j) = ip.value;
                g(j, i) = std::conj(ip.value);
                bound = std::max(bound, ip.bound);
            }
        return g;
    };
    KernelGram k;
    k.a = gram(model.kernel_a_star(), k.bound_a);
    k.b = gram(model.kernel_b_star(), k.bound_b);
    return k;
}

cplx k_inner(const KernelGram& g, const BoundaryValue& k, const BoundaryValue& kp) {
    return (k.u.transpose() * g.a * kp.u.conjugate())(0, 0) + (k.v.transpose() * g.b * kp.v.conjugate())(0, 0);
}

GreenResult green_residual(const DiscreteModel& model, const ElementPair& p1, const ElementPair& p2,
                           std::optional<double> tol) {
    const auto& [ea1, eb1] = p1;
    const auto& [ea2, eb2] = p2;
    for (auto m : {ea1.model, eb1.model, ea2.model, eb2.model}) check_model(model, m, "element");

    const ModelVector x = recompose(model, ea1), y = recompose(model, eb1);
    const ModelVector xp = recompose(model, ea2), yp = recompose(model, eb2);
    const ModelVector ax = astar_apply(model, ea1), by = bstar_apply(model, eb1);
    const ModelVector axp = astar_apply(model, ea2), byp = bstar_apply(model, eb2);

    GreenResult r;
    const CertifiedComplex terms[] = {inner_product(model, by, xp, tol), inner_product(model, ax, yp, tol),
                                      inner_product(model, x, byp, tol), inner_product(model, y, axp, tol)};
    r.lhs = terms[0].value + terms[1].value - terms[2].value - terms[3].value;
    double lhs_bound = 0.0;
    for (const auto& t : terms) lhs_bound += t.bound;

    const KernelGram g = kernel_gram(model);
    const auto [g0, g1] = boundary_maps(ea1, eb1);
    const auto [g0p, g1p] = boundary_maps(ea2, eb2);
    r.rhs = k_inner(g, g1, g0p) - k_inner(g, g0, g1p);

    // Gram errors, and the shift of v1 (resp. u2) by the residual overlap of
    // x0 (resp. y0) with ξ, which moves Z⟨g,ξ⟩ξ/‖ξ‖² between the summands.
    const double na = g.a.norm() + g.bound_a, nb = g.b.norm() + g.bound_b;
    double rhs_bound = g.bound_a * (eb1.u2.norm() * ea2.u1.norm() + ea1.u1.norm() * eb2.u2.norm()) +
                       g.bound_b * (eb1.v2.norm() * ea2.v1.norm() + ea1.v1.norm() * eb2.v2.norm());
    rhs_bound += na * (eb1.y0.offset_bound() * ea2.u1.norm() + eb2.y0.offset_bound() * ea1.u1.norm());
    rhs_bound += nb * (ea2.x0.offset_bound() * eb1.v2.norm() + ea1.x0.offset_bound() * eb2.v2.norm());
    const double magnitude = std::abs(terms[0].value) + std::abs(terms[1].value) + std::abs(terms[2].value) +
                             std::abs(terms[3].value) + std::abs(r.rhs);
    r.bound = lhs_bound + rhs_bound + 16.0 * kUnitRoundoff * magnitude;
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

std::vector<PresentedPiece> presentation(const DiscreteModel& model, const AStarElement& e) {
    check_model(model, e.model, "A* element");
    return {{PieceTag::DomainB, domain_vector(model, e.x0)},
            {PieceTag::RstarInvKernelB, combine(mapped(model, DiscreteModel::Z_star(), model.kernel_b_star()), e.v1)},
            {PieceTag::KernelA, combine(model.kernel_a_star(), e.u1)}};
}

AStarElement redecompose(const DiscreteModel& model, std::span<const PresentedPiece> pieces) {
    const ModelVector rstar_inv_v = apply_symbol(model, DiscreteModel::Z_star(), model.kernel_b_star().front());
    ModelVector core;
    cplx v_coeff{}, u_coeff{};
    for (const auto& p : pieces) {
        switch (p.tag) {
            case PieceTag::DomainB: {
                if (!in_domain(model, p.vector, DiscreteModel::R()))
                    throw Error(ErrorKind::NotInDomain, "vishik", "domainB piece is not in the domain of R");
                core += apply_symbol(model, DiscreteModel::R(), p.vector);
                break;
            }
            case PieceTag::RstarInvKernelB:
                v_coeff += coefficient_along(model, p.vector, rstar_inv_v, "RstarInvKernelB");
                break;
            case PieceTag::KernelA:
                u_coeff += coefficient_along(model, p.vector, model.xi(), "kernelA");
                break;
        }
    }
    CVector v1(1), u1(1);
    v1 << v_coeff;
    u1 << u_coeff;
    return make_astar(model, domain_from_core(model, core), v1, u1);
}

AStarElement decompose(const DiscreteModel& model, const ModelVector& x_in) {
    ModelVector x = x_in;
    x.normalize();
    if (!in_domain(model, x, DiagonalSymbol::identity()))
        throw Error(ErrorKind::NotInDomain, "vishik", "vector is not square summable");
    const double beta = model.growth();
    auto outside_r = [&](const TailTerm& t) { return !(t.l2_margin(beta, 1) > 0.0); };

    const TailTerm* ref = nullptr;
    for (const auto& t : model.xi().tails())
        if (outside_r(t) && (!ref || std::abs(t.coeff) > std::abs(ref->coeff))) ref = &t;
    const cplx a = tail_coefficient(x, *ref) / ref->coeff;

    ModelVector rest = x - a * model.xi();
    double scale = 0.0;
    for (const auto& t : x.tails()) scale = std::max(scale, std::abs(t.coeff));
    ModelVector cleaned;
    for (const auto& [k, c] : rest.finite()) cleaned.set_finite(k, c);
    for (const auto& t : rest.tails()) {
        if (!outside_r(t)) cleaned.add_tail(t);
        else if (std::abs(t.coeff) > kTailCancellation * scale)
            throw Error(ErrorKind::NotInDomain, "vishik", "vector has a tail outside D(R) that is not a multiple of xi");
    }
    cleaned.normalize();

    const ModelVector r_rest = apply_symbol(model, DiscreteModel::R(), cleaned);
    const auto overlap = inner_product(model, r_rest, model.xi());
    const cplx b = overlap.value / model.xi_norm_squared().value;
    DomainElement x0;
    ModelVector core = r_rest - b * model.xi();
    if (!core.is_zero()) x0 = domain_from_core(model, core);
    CVector v1(1), u1(1);
    v1 << b;
    u1 << a;
    return make_astar(model, x0, v1, u1);
}

ElementPair lift_boundary(const DiscreteModel& model, const BoundaryValue& gamma0, const BoundaryValue& gamma1) {
    return {make_astar(model, DomainElement{}, gamma0.v, gamma0.u),
            make_bstar(model, DomainElement{}, gamma1.u, -gamma1.v)};
}

CVector random_coefficients(Eigen::Index n, Rng& rng) {
    CVector c(n);
    for (Eigen::Index i = 0; i < n; ++i) c[i] = rng.complex_normal();
    return c;
}

DomainElement random_domain(const DiscreteModel& model, Rng& rng) {
    // decays with fast power paths; all give square-summable tails for degree 0
    constexpr double kDecays[] = {1.0, 1.5, 2.0};
    ModelVector h;
    const auto entries = rng.integer(1, 4);
    for (std::int64_t j = 0; j < entries; ++j)
        h.set_finite(static_cast<std::size_t>(rng.integer(1, 20)), rng.complex_normal());
    if (rng.uniform() < 0.5) {
        TailTerm t;
        t.coeff = rng.complex_normal();
        t.winding = static_cast<int>(rng.integer(-2, 2));
        t.decay = kDecays[rng.integer(0, 2)];
        t.start = static_cast<std::size_t>(rng.integer(1, 8));
        h.add_tail(t);
    }
    return project_domain(model, h.normalize());
}

AStarElement random_astar(const DiscreteModel& model, Rng& rng) {
    DomainElement x0 = random_domain(model, rng);
    CVector v1 = random_coefficients(static_cast<Eigen::Index>(model.kernel_b_star().size()), rng);
    CVector u1 = random_coefficients(static_cast<Eigen::Index>(model.kernel_a_star().size()), rng);
    return make_astar(model, std::move(x0), std::move(v1), std::move(u1));
}

BStarElement random_bstar(const DiscreteModel& model, Rng& rng) {
    DomainElement y0 = random_domain(model, rng);
    CVector u2 = random_coefficients(static_cast<Eigen::Index>(model.kernel_a_star().size()), rng);
    CVector v2 = random_coefficients(static_cast<Eigen::Index>(model.kernel_b_star().size()), rng);
    return make_bstar(model, std::move(y0), std::move(u2), std::move(v2));
}

}  // namespace adjpair
