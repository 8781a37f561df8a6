#include "catch_amalgamated.hpp"

#include <cmath>

#include "adjpair/polar.hpp"
#include "adjpair/random.hpp"
#include "fixtures.hpp"

using namespace adjpair;

TEST_CASE("positive atoms have trivial phase") {
    const auto m = fixtures::real_k();
    const PolarData p = polar_decompose(m);
    REQUIRE(p.constant_phase.has_value());
    CHECK(*p.constant_phase == cplx(1.0, 0.0));
    for (std::size_t k = 1; k <= 100; ++k) {
        const cplx z = m.generator().atom(k);
        CHECK(p.phase.evaluate(z) == cplx(1.0, 0.0));
        CHECK(p.modulus.evaluate(z) == z);
        CHECK(p.w.evaluate(z) == cplx(1.0, 0.0));
    }
}

TEST_CASE("imaginary axis atoms") {
    const auto m = build_model(AtomGenerator::generic(PowerRule{0, 0, 1}, PowerRule{0, 1, 1}, 0.0, 0.5),
                               ModelVector::power_tail(1.0, 1.0));
    const PolarData p = polar_decompose(m);
    REQUIRE(p.constant_phase.has_value());
    CHECK(std::abs(*p.constant_phase - cplx(0.0, 1.0)) < 1e-15);
    for (std::size_t k = 1; k <= 100; ++k) CHECK(std::abs(p.w.evaluate(m.generator().atom(k)) + 1.0) < 1e-15);
}

TEST_CASE("phase and W on z = k + i") {
    const auto m = fixtures::k_plus_i();
    const PolarData p = polar_decompose(m);
    CHECK_FALSE(p.constant_phase.has_value());
    CHECK(p.modulus_inverse_bound == 2.0);
    for (std::size_t k = 1; k <= 100; ++k) {
        const double x = static_cast<double>(k);
        const cplx z = m.generator().atom(k);
        CHECK(std::abs(p.phase.evaluate(z) - cplx(x, 1.0) / std::sqrt(x * x + 1.0)) < 1e-15);
        CHECK(std::abs(w_operator(m).evaluate(z) - cplx(x, 1.0) / cplx(x, -1.0)) < 1e-15);
    }
    CHECK(p.phase_first.value <= std::max(p.phase_first.bound, 1e-10));
    CHECK(p.modulus_first.value <= std::max(p.modulus_first.bound, 1e-10));
}

TEST_CASE("W identities") {
    for (const auto& m : {fixtures::k_plus_i(), fixtures::parabola(), fixtures::rotated(0.7)}) {
        const WIdentities w = w_identities(m);
        CHECK(w.w_rstar_is_r);
        CHECK(w.commutes_with_z);
        CHECK(w.is_phase_squared);
        CHECK(w.w_rstar_minus_r.value <= 1e-10);
        CHECK(w.norm_defect.value <= std::max(w.norm_defect.bound, 1e-12));
    }
}

TEST_CASE("kernel relations") {
    Rng rng(8);
    std::vector<DiscreteModel> models{fixtures::k_plus_i(), fixtures::parabola()};
    for (int i = 0; i < 3; ++i) models.push_back(fixtures::rotated(rng.uniform(0.0, 6.28)));
    for (const auto& m : models) {
        const KernelRelations k = kernel_relations(m);
        CHECK(k.symbol_level);
        CHECK(k.a_star_from_t <= 1e-8);
        CHECK(k.b_star_from_t <= 1e-8);
        CHECK(k.w_maps_kernels <= 1e-8);
        CHECK(k.subspace_residual <= 1e-8);
    }
}

TEST_CASE("real atoms give one kernel") {
    const auto m = fixtures::real_k();
    const PolarData p = polar_decompose(m);
    CHECK(fixtures::distance(m, m.kernel_b_star().front(), m.xi()) == 0.0);
    CHECK(fixtures::distance(m, p.kernel_t_star.front(), m.xi()) == 0.0);
}
