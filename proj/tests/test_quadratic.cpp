#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace abstab;
using namespace abstab::testutil;

namespace {

QuadraticFunction cz_on_z2z2() {
    Group g{2, 2};
    RatMat m(2, 2);
    m << 0, Rat(1, 2), Rat(1, 2), 0;
    return QuadraticFunction(g, std::move(m), RatVec::Zero(2));
}

}  // namespace

TEST_CASE("controlled-Z exponents") {
    QuadraticFunction cz = cz_on_z2z2();
    Group g = cz.group();
    CHECK(cz.evaluate(element(g, {1, 1})) == PhaseExp(4, 8));
    CHECK(cz.evaluate(element(g, {1, 0})).exponent() == 0);
    CHECK(cz.evaluate(element(g, {0, 1})).exponent() == 0);
    CHECK(cz.evaluate(GroupElement::zero(g)).exponent() == 0);
}

TEST_CASE("controlled-Z bicharacter hom") {
    QuadraticFunction cz = cz_on_z2z2();
    HomMatrix beta = bicharacter_hom(cz);
    IntMat want(2, 2);
    want << 0, 1, 1, 0;
    CHECK(beta.same_action(HomMatrix(cz.group(), cz.group(), std::move(want))));
}

TEST_CASE("quadratic law holds for random functions") {
    CounterRng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        Group g = random_group(rng, 64, 3);
        QuadraticFunction q = random_quadratic(rng, g);
        GroupElement a = random_element(rng, g), b = random_element(rng, g);
        CHECK(q.evaluate(a + b) ==
              q.evaluate(a) + q.evaluate(b) + q.bicharacter_exp(a, b));
        HomMatrix beta = bicharacter_hom(q);
        CHECK(beta.validate());
        CHECK(q.bicharacter_exp(a, b) == character_exp(beta.apply(a), b));
    }
}

TEST_CASE("phase gate on Z2 from an oracle") {
    Group z2{2};
    // n(x) with i^x: n(0) = 0, n(1) = 1 (gamma = i over Z2)
    QuadraticFunction s = fit_quadratic(
        [](const GroupElement& x) { return x.residue(0); }, z2);
    CHECK(s.evaluate(element(z2, {1})) == PhaseExp(1, 4));
    CHECK(s.evaluate(element(z2, {0})).exponent() == 0);
}

TEST_CASE("fit_quadratic round trip") {
    CounterRng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        Group g = random_group(rng, 256, 4);
        QuadraticFunction q = random_quadratic(rng, g);
        QuadraticFunction fitted = fit_quadratic(
            [&](const GroupElement& x) { return q.evaluate(x).exponent(); }, g);
        CHECK(fitted.same_action(q));
        for (const GroupElement& x : all_elements(g))
            CHECK(fitted.evaluate(x) == q.evaluate(x));
    }
}

TEST_CASE("fit_quadratic rejects a non-quadratic oracle") {
    Group g{2, 2};
    CHECK_THROWS_AS(fit_quadratic(
                        [](const GroupElement& x) {
                            return Int(x.residue(0) * x.residue(1) * x.residue(1) * 3 +
                                       (x.residue(0) == 1 && x.residue(1) == 0 ? 1 : 0));
                        },
                        g),
                    std::domain_error);
}

TEST_CASE("composition with an automorphism evaluates pointwise") {
    CounterRng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        Group g = random_group(rng, 64, 3);
        QuadraticFunction q = random_quadratic(rng, g);
        HomMatrix alpha = random_automorphism(rng, g);
        QuadraticFunction comp = compose_with_automorphism(q, alpha);
        for (const GroupElement& x : all_elements(g))
            CHECK(comp.evaluate(x) == q.evaluate(alpha.apply(x)));
    }
}
