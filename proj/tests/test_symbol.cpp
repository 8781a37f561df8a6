#include "catch_amalgamated.hpp"

#include "adjpair/error.hpp"
#include "adjpair/extended_real.hpp"
#include "adjpair/model.hpp"
#include "adjpair/random.hpp"

using namespace adjpair;
using Catch::Matchers::WithinAbs;

TEST_CASE("symbol identities hold exactly") {
    using M = DiscreteModel;
    CHECK(M::W() == M::U() * M::U());
    CHECK(M::W_star() == M::W().inverse());
    CHECK(M::W_star() == M::W().adjoint());
    CHECK(M::Z() == M::R().inverse());
    CHECK(M::Z_star() == M::R_star().inverse());
    CHECK(M::R().adjoint() == M::R_star());
    CHECK(M::W() * M::R_star() == M::R());
    CHECK(M::modulus() * M::U() == M::R());
    CHECK(M::W().unimodular());
    CHECK_FALSE(M::R().unimodular());
}

TEST_CASE("symbol evaluation") {
    const cplx z{3.0, 4.0};
    CHECK(DiagonalSymbol::z().evaluate(z) == z);
    CHECK_THAT(DiagonalSymbol::modulus().evaluate(z).real(), WithinAbs(5.0, 1e-15));
    CHECK(std::abs(DiagonalSymbol::phase().evaluate(z) - z / 5.0) < 1e-15);
    CHECK(std::abs(DiscreteModel::W().evaluate(z) - z / std::conj(z)) < 1e-15);
}

TEST_CASE("from_powers matches direct evaluation") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const int a = static_cast<int>(rng.integer(-3, 3));
        const int b = static_cast<int>(rng.integer(-3, 3));
        const int m = static_cast<int>(rng.integer(-2, 2));
        const cplx z = rng.complex_normal() * 3.0;
        const cplx direct = std::pow(z, a) * std::pow(std::conj(z), b) * std::pow(std::abs(z), m);
        const cplx got = DiagonalSymbol::from_powers(a, b, m).evaluate(z);
        CHECK(std::abs(got - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("extended reals") {
    CHECK(ExtendedReal::infinity().is_infinite());
    CHECK(ExtendedReal::finite(2.0) == ExtendedReal::finite(2.0));
    CHECK_FALSE(ExtendedReal::finite(2.0) == ExtendedReal::infinity());
    CHECK(ExtendedReal::infinity().to_string() == "inf");
    CHECK_THROWS_AS(ExtendedReal::infinity().value(), Error);
}
