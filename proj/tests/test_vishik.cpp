#include "catch_amalgamated.hpp"


#include "adjpair/error.hpp"
#include "adjpair/random.hpp"
#include "adjpair/vishik.hpp"
#include "fixtures.hpp"

using namespace adjpair;
using fixtures::error_kind;
using fixtures::distance;

namespace {

CVector scalar(cplx c) {
    CVector v(1);
    v << c;
    return v;
}


}  // namespace

TEST_CASE("A* action on the three summands") {
    const auto m = fixtures::k_plus_i();
    const DomainElement x0 = project_domain(m, ModelVector::unit(1));
    const auto e = make_astar(m, x0, scalar(0.0), scalar(0.0));
    const ModelVector bx0 = apply_symbol(m, DiscreteModel::R_star(), domain_vector(m, x0));
    CHECK(distance(m, astar_apply(m, e), bx0) < 1e-12);

    const ModelVector w_star_xi = m.kernel_b_star().front();
    CHECK(distance(m, astar_apply(m, make_astar(m, {}, scalar(1.0), scalar(0.0))), w_star_xi) == 0.0);
    CHECK(astar_apply(m, make_astar(m, {}, scalar(0.0), scalar(1.0))).is_zero());
}

TEST_CASE("B* action on the three summands") {
    const auto m = fixtures::k_plus_i();
    const DomainElement y0 = project_domain(m, ModelVector::unit(2));
    const ModelVector ay0 = apply_symbol(m, DiscreteModel::R(), domain_vector(m, y0));
    CHECK(distance(m, bstar_apply(m, make_bstar(m, y0, scalar(0.0), scalar(0.0))), ay0) < 1e-12);
    CHECK(distance(m, bstar_apply(m, make_bstar(m, {}, scalar(1.0), scalar(0.0))), m.xi()) == 0.0);
    CHECK(bstar_apply(m, make_bstar(m, {}, scalar(0.0), scalar(1.0))).is_zero());
}

TEST_CASE("boundary maps") {
    const auto m = fixtures::k_plus_i();
    const DomainElement x0 = project_domain(m, ModelVector::unit(1));
    const DomainElement y0 = project_domain(m, ModelVector::unit(5));
    {
        auto [g0, g1] = boundary_maps(make_astar(m, x0, scalar(0.0), scalar(0.0)),
                                      make_bstar(m, y0, scalar(0.0), scalar(0.0)));
        CHECK(g0.u.isZero(0.0));
        CHECK(g0.v.isZero(0.0));
        CHECK(g1.u.isZero(0.0));
        CHECK(g1.v.isZero(0.0));
    }
    {
        auto [g0, g1] = boundary_maps(make_astar(m, {}, scalar(1.0), scalar(1.0)),
                                      make_bstar(m, {}, scalar(0.0), scalar(0.0)));
        CHECK(g0.u(0) == cplx(1.0));
        CHECK(g0.v(0) == cplx(1.0));
        CHECK(g1.u.isZero(0.0));
        CHECK(g1.v.isZero(0.0));
    }
    {
        auto [g0, g1] = boundary_maps(make_astar(m, {}, scalar(0.0), scalar(0.0)),
                                      make_bstar(m, {}, scalar(1.0), scalar(1.0)));
        CHECK(g0.u.isZero(0.0));
        CHECK(g1.u(0) == cplx(1.0));
        CHECK(g1.v(0) == cplx(-1.0));
    }
    const auto other = fixtures::parabola();
    CHECK(error_kind([&] {
              boundary_maps(make_astar(m, {}, scalar(0.0), scalar(0.0)), make_bstar(other, {}, scalar(0.0), scalar(0.0)));
          }) == ErrorKind::ModelMismatch);
    CHECK(error_kind([&] { astar_apply(other, make_astar(m, {}, scalar(1.0), scalar(0.0))); }) == ErrorKind::ModelMismatch);
    CHECK(error_kind([&] { make_astar(m, {}, CVector::Zero(2), scalar(0.0)); }) == ErrorKind::InvalidElement);
}

TEST_CASE("Green identity") {
    const auto m = fixtures::k_plus_i();
    const ElementPair zero{make_astar(m, {}, scalar(0.0), scalar(0.0)), make_bstar(m, {}, scalar(0.0), scalar(0.0))};
    CHECK(green_residual(m, zero, zero).residual == 0.0);

    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        // kernel parts zero: both sides reduce to the symmetric core
        const ElementPair p1{make_astar(m, random_domain(m, rng), scalar(0.0), scalar(0.0)),
                             make_bstar(m, random_domain(m, rng), scalar(0.0), scalar(0.0))};
        const ElementPair p2{make_astar(m, random_domain(m, rng), scalar(0.0), scalar(0.0)),
                             make_bstar(m, random_domain(m, rng), scalar(0.0), scalar(0.0))};
        const GreenResult g = green_residual(m, p1, p2);
        CHECK(g.residual <= 2.0 * m.tolerance().inner_product + g.bound);
    }
    for (int i = 0; i < 20; ++i) {
        const ElementPair p1{random_astar(m, rng), random_bstar(m, rng)};
        const ElementPair p2{random_astar(m, rng), random_bstar(m, rng)};
        const GreenResult g = green_residual(m, p1, p2);
        CHECK(g.residual <= g.bound);
        CHECK(g.bound <= 1e-8);
    }
}

TEST_CASE("decomposition round trips") {
    const auto m = fixtures::k_plus_i();
    Rng rng(21);
    for (int i = 0; i < 10; ++i) {
        const AStarElement e = random_astar(m, rng);
        const auto pieces = presentation(m, e);
        const AStarElement r = redecompose(m, pieces);
        CHECK(r.v1 == e.v1);
        CHECK(r.u1 == e.u1);
        CHECK(distance(m, domain_vector(m, r.x0), domain_vector(m, e.x0)) < 1e-12);

        const AStarElement d = decompose(m, recompose(m, e));
        CHECK(std::abs(d.v1(0) - e.v1(0)) < 1e-10);
        CHECK(std::abs(d.u1(0) - e.u1(0)) < 1e-10);
        CHECK(distance(m, domain_vector(m, d.x0), domain_vector(m, e.x0)) < 1e-10);
    }
    const AStarElement z = decompose(m, ModelVector{});
    CHECK(z.x0.is_zero());
    CHECK(z.v1.isZero(0.0));
    CHECK(z.u1.isZero(0.0));
}

TEST_CASE("two presentations of one vector give one triple") {
    const auto m = fixtures::k_plus_i();
    Rng rng(4);
    const AStarElement a = random_astar(m, rng);
    const AStarElement b = random_astar(m, rng);
    std::vector<PresentedPiece> both = presentation(m, a);
    for (const auto& p : presentation(m, b)) both.push_back(p);
    const AStarElement sum = redecompose(m, both);
    const AStarElement direct = decompose(m, recompose(m, a) + recompose(m, b));
    CHECK(std::abs(sum.v1(0) - direct.v1(0)) < 1e-10);
    CHECK(std::abs(sum.u1(0) - direct.u1(0)) < 1e-10);
    CHECK(distance(m, domain_vector(m, sum.x0), domain_vector(m, direct.x0)) < 1e-10);
}

TEST_CASE("decomposition rejects vectors outside the domain") {
    const auto m = fixtures::k_plus_i();
    CHECK(error_kind([&] { decompose(m, ModelVector::power_tail(1.0, 0.9)); }) == ErrorKind::NotInDomain);
    const std::vector<PresentedPiece> bad{{PieceTag::DomainB, m.xi()}};
    CHECK(error_kind([&] { redecompose(m, bad); }) == ErrorKind::NotInDomain);
    CHECK(error_kind([&] { domain_from_core(m, ModelVector::unit(1)); }) == ErrorKind::NotInDomain);
}

TEST_CASE("boundary lift is exact") {
    const auto m = fixtures::k_plus_i();
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        const BoundaryValue g0{random_coefficients(1, rng), random_coefficients(1, rng)};
        const BoundaryValue g1{random_coefficients(1, rng), random_coefficients(1, rng)};
        const ElementPair p = lift_boundary(m, g0, g1);
        auto [h0, h1] = boundary_maps(p.first, p.second);
        CHECK(h0.u == g0.u);
        CHECK(h0.v == g0.v);
        CHECK(h1.u == g1.u);
        CHECK(h1.v == g1.v);
    }
}
