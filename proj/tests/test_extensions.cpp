#include "catch_amalgamated.hpp"

#include <Eigen/LU>

#include "adjpair/extensions.hpp"
#include "adjpair/random.hpp"
#include "fixtures.hpp"

using namespace adjpair;
using fixtures::distance;
using fixtures::error_kind;

namespace {

CMatrix column(cplx u, cplx v) {
    CMatrix c(2, 1);
    c << u, v;
    return c;
}

CVector scalar(cplx c) {
    CVector v(1);
    v << c;
    return v;
}

// Independent C′: null space of the rows [-conj(u) g_a, conj(v) g_b].
CMatrix dense_cprime(const KernelFrame& f, const CMatrix& basis) {
    const double ga = f.gram_a()(0, 0).real(), gb = f.gram_b()(0, 0).real();
    CMatrix rows(basis.cols(), 2);
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        rows(j, 0) = -std::conj(basis(0, j)) * ga;
        rows(j, 1) = std::conj(basis(1, j)) * gb;
    }
    if (basis.cols() == 0) return CMatrix::Identity(2, 2);
    Eigen::FullPivLU<CMatrix> lu(rows);
    lu.setThreshold(1e-10);
    if (lu.rank() == 2) return CMatrix(2, 0);
    return lu.kernel();
}

Eigen::Index rank(const CMatrix& m) {
    if (m.cols() == 0) return 0;
    Eigen::FullPivLU<CMatrix> lu(m);
    lu.setThreshold(1e-9);
    return lu.rank();
}

bool same_span(const CMatrix& a, const CMatrix& b) {
    if (a.cols() == 0 || b.cols() == 0) return rank(a) == rank(b);
    CMatrix ab(a.rows(), a.cols() + b.cols());
    ab << a, b;
    return rank(a) == rank(b) && rank(ab) == rank(a);
}

}  // namespace

TEST_CASE("kernel frame of z = k + i") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    CHECK(f.dim_a() == 1);
    CHECK(f.dim_b() == 1);
    // ‖W*ξ‖ = ‖ξ‖ = π²/6
    CHECK(std::abs(f.gram_a()(0, 0) - f.gram_b()(0, 0)) <= 2 * f.gram_bound());
    CHECK(std::abs(f.gram_a()(0, 0).real() - 1.6449340668482264) <= f.gram_bound() + 1e-15);
}

TEST_CASE("cprime examples") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    CHECK(cprime(f, ExtensionSubspace::whole(f)).dim() == 0);
    CHECK(cprime(f, ExtensionSubspace::zero(f)).dim() == 2);
    for (cplx alpha : {cplx(0.0, -1.0), cplx(1.0, 0.0), cplx(2.0, 3.0)}) {
        const ExtensionSubspace cp = cprime(f, ExtensionSubspace(f, column(1.0, alpha)));
        REQUIRE(cp.dim() == 1);
        CHECK(cp.relative_distance(f, column(std::conj(alpha), 1.0).col(0)) < 1e-12);
    }
}

TEST_CASE("cprime duality against a dense solve") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto dim = rng.integer(0, 2);
        CMatrix basis(2, dim);
        for (Eigen::Index j = 0; j < dim; ++j) basis.col(j) << rng.complex_normal(), rng.complex_normal();
        const ExtensionSubspace c = dim == 0 ? ExtensionSubspace::zero(f) : ExtensionSubspace(f, basis);
        const ExtensionSubspace cp = cprime(f, c);
        const ExtensionSubspace cpp = cprime(f, cp);
        CHECK(c.dim() + cp.dim() == 2);
        CHECK(subspace_distance(f, cpp, c) < 1e-10);
        CHECK(same_span(cp.basis(), dense_cprime(f, c.basis())));
    }
}

TEST_CASE("dependent bases are rejected") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    CMatrix b(2, 2);
    b << 1.0, 2.0, cplx(0, 1), cplx(0, 2);
    CHECK(error_kind([&] { ExtensionSubspace(f, b); }) == ErrorKind::DegenerateSubspace);
    CHECK(error_kind([&] { ExtensionSubspace(f, CMatrix::Ones(3, 1)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("T_C and S_C' actions") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    const cplx alpha{0.5, -1.0};
    const ExtensionSubspace c(f, column(1.0, alpha));
    const DomainElement x0 = project_domain(m, ModelVector::unit(2) + ModelVector::power_tail(1.0, 2.0));
    const ModelVector bx0 = apply_b(m, x0);
    const ModelVector ax0 = apply_a(m, x0);

    CHECK(distance(m, t_c_apply(m, f, c, make_astar(m, x0, scalar(0.0), scalar(0.0))), bx0) == 0.0);
    const ModelVector expected = bx0 + alpha * m.kernel_b_star().front();
    CHECK(distance(m, t_c_apply(m, f, c, make_astar(m, x0, scalar(alpha), scalar(1.0))), expected) < 1e-14);
    CHECK(error_kind([&] { t_c_apply(m, f, c, make_astar(m, x0, scalar(1.0), scalar(1.0))); }) ==
          ErrorKind::NotInExtensionDomain);

    CHECK(distance(m, s_cprime_apply(m, f, c, make_bstar(m, x0, scalar(0.0), scalar(0.0))), ax0) == 0.0);
    const ModelVector expected_s = ax0 + std::conj(alpha) * m.xi();
    CHECK(distance(m, s_cprime_apply(m, f, c, make_bstar(m, x0, scalar(std::conj(alpha)), scalar(1.0))), expected_s) <
          1e-14);
    CHECK(error_kind([&] { s_cprime_apply(m, f, c, make_bstar(m, x0, scalar(1.0), scalar(1.0))); }) ==
          ErrorKind::NotInExtensionDomain);
}

TEST_CASE("normality verdicts") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    const NormalityVerdict rstar = check_normal(f, ExtensionSubspace(f, column(0.0, 1.0)));
    CHECK(rstar.normal);
    CHECK(check_normal(f, ExtensionSubspace::zero(f)).reason == NotNormalReason::DegenerateDim);
    CHECK_FALSE(check_normal(f, ExtensionSubspace::whole(f)).normal);

    for (double a : {-2.0, 0.0, 3.0, 0.25}) {
        const NormalityVerdict v = check_normal(f, ExtensionSubspace(f, column(1.0, cplx(a, -1.0))));
        CHECK(v.normal);
        CHECK(std::abs(std::abs(v.witness(0, 0)) - 1.0) < 1e-9);
    }
    for (cplx alpha : {cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(2.0, 1.0), cplx(0.0, -1.1)}) {
        const NormalityVerdict v = check_normal(f, ExtensionSubspace(f, column(1.0, alpha)));
        CHECK_FALSE(v.normal);
        CHECK(v.reason.has_value());
    }
}

TEST_CASE("T_C = R* for C = span{(0, W*xi)}") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    const ExtensionSubspace c(f, column(0.0, 1.0));
    Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        const auto e = make_astar(m, random_domain(m, rng), random_coefficients(1, rng), scalar(0.0));
        const ModelVector rstar = apply_symbol(m, DiscreteModel::R_star(), recompose(m, e));
        CHECK(distance(m, t_c_apply(m, f, c, e), rstar) <= 1e-10);
    }
}

TEST_CASE("boundary isometry agrees with check_normal") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    for (cplx alpha : {cplx(0.0, -1.0), cplx(-2.0, -1.0), cplx(3.0, -1.0), cplx(1.0, 0.0), cplx(0.0, 1.0),
                       cplx(2.0, 1.0)}) {
        // C = span{(ξ, αW*ξ)} = graph of G = 1/α
        const GraphOperator g{CMatrix::Constant(1, 1, 1.0 / alpha)};
        const auto iso = boundary_isometry(f, g);
        const bool normal = check_normal(f, graph(f, g)).normal;
        CHECK(iso.has_value() == normal);
        if (iso) CHECK(std::abs(std::abs((*iso)(0, 0)) - 1.0) < 1e-9);
    }
}

TEST_CASE("cprime of a graph is the graph of the adjoint") {
    const auto m = fixtures::parabola();
    const KernelFrame f(m);
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        const GraphOperator g{CMatrix::Constant(1, 1, rng.complex_normal())};
        const CMatrix adj = graph_adjoint(f, g);
        const ExtensionSubspace expected(f, column(1.0, adj(0, 0)));
        CHECK(subspace_distance(f, cprime(f, graph(f, g)), expected) < 1e-10);
    }
}

TEST_CASE("normal extensions preserve norms") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    const ExtensionSubspace c(f, column(1.0, cplx(0.0, -1.0)));
    Rng rng(77);
    for (int i = 0; i < 10; ++i) {
        const cplx s = rng.complex_normal();
        const auto e = make_astar(m, random_domain(m, rng), scalar(cplx(0.0, -1.0) * s), scalar(s));
        const auto t = norm(m, t_c_apply(m, f, c, e));
        const auto bx0 = norm(m, apply_b(m, e.x0));
        const double v1 = std::abs(s) * std::sqrt(f.gram_b()(0, 0).real());
        CHECK(std::abs(t.value * t.value - bx0.value * bx0.value - v1 * v1) <= 1e-9);
        const BStarElement adj = adjoint_presentation(m, f, c, e);
        CHECK(distance(m, recompose(m, adj), recompose(m, e)) <= 1e-9);
        const auto ts = norm(m, s_cprime_apply(m, f, c, adj));
        CHECK(std::abs(t.value - ts.value) <= 1e-9);
    }
}

TEST_CASE("C = {0} gives T_C = B on a domain strictly inside D(B*)") {
    const auto m = fixtures::k_plus_i();
    const KernelFrame f(m);
    CHECK(check_normal(f, ExtensionSubspace::zero(f)).reason == NotNormalReason::DegenerateDim);
    // R⁻¹ξ = Zξ lies in D(B*) but its core ξ is not orthogonal to ξ, so Zξ ∉ D(B).
    const ModelVector z_xi = recompose(m, make_bstar(m, {}, scalar(1.0), scalar(0.0)));
    CHECK(distance(m, z_xi, apply_symbol(m, DiscreteModel::Z(), m.xi())) == 0.0);
    CHECK(error_kind([&] { domain_from_core(m, m.xi()); }) == ErrorKind::NotInDomain);
    CHECK(error_kind([&] { t_c_apply(m, f, ExtensionSubspace::zero(f), make_astar(m, {}, scalar(0.0), scalar(1.0))); }) ==
          ErrorKind::NotInExtensionDomain);
}
