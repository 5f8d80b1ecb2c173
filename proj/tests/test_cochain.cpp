#include <catch2/catch_amalgamated.hpp>

#include "pcoh/cohomology.hpp"
#include "testutil.hpp"

using namespace pcoh;
using testutil::elem;

TEST_CASE("identity cochains") {
    const PartialAction pa = testutil::fixture1();
    const Cochain e1 = identity_cochain(pa, 1);
    CHECK(e1.at(pa.group, {0}) == elem({1, 1}));
    CHECK(e1.at(pa.group, {1}) == elem({0, 1}));
    CHECK(e1.at(pa.group, {2}) == elem({1, 0}));

    CHECK(identity_cochain(pa, 0).values[0] == elem({1, 1}));

    const Cochain e2 = identity_cochain(pa, 2);
    CHECK(e2.at(pa.group, {1, 2}) == elem({0, 1}));  // D_g ∩ D_e
    CHECK(e2.at(pa.group, {1, 1}) == elem({0, 0}));  // empty meet
    CHECK(is_cochain(pa, e2));
}

TEST_CASE("cochain group laws") {
    const PartialAction pa = testutil::fixture1();
    Rng rng(9);
    for (int n : {0, 1, 2}) {
        const Cochain e = identity_cochain(pa, n);
        for (int t = 0; t < 8; ++t) {
            const Cochain f = random_cochain(pa, n, rng);
            const Cochain g = random_cochain(pa, n, rng);
            const Cochain h = random_cochain(pa, n, rng);
            CHECK(cochain_mul(pa, f, e) == f);
            CHECK(cochain_mul(pa, f, cochain_inv(pa, f)) == e);
            CHECK(cochain_mul(pa, f, g) == cochain_mul(pa, g, f));
            CHECK(cochain_mul(pa, cochain_mul(pa, f, g), h) == cochain_mul(pa, f, cochain_mul(pa, g, h)));
        }
    }
    Cochain f = identity_cochain(pa, 1);
    f.at(pa.group, {1}) = elem({0, 2});
    CHECK(cochain_inv(pa, f).at(pa.group, {1}) == elem({0, 3}));

    Cochain bad = identity_cochain(pa, 1);
    bad.at(pa.group, {1}) = elem({1, 1});  // support exceeds D_g
    CHECK_THROWS_AS(cochain_mul(pa, bad, f), MathError);
}

TEST_CASE("delta, hand-evaluated") {
    const PartialAction pa = testutil::fixture1();
    Cochain f = identity_cochain(pa, 1);
    f.at(pa.group, {0}) = elem({1, 1});
    f.at(pa.group, {1}) = elem({0, 2});
    f.at(pa.group, {2}) = elem({3, 0});
    const Cochain df = delta(pa, f);
    CHECK(df.at(pa.group, {1, 2}) == elem({0, 1}));  // alpha_g(1_{g^2}(3,0)) f(e)^-1 f(g)

    for (int n : {0, 1, 2}) CHECK(delta(pa, identity_cochain(pa, n)) == identity_cochain(pa, n + 1));

    // trivial action: δ^0 a = e_1
    const PartialAction f3 = testutil::fixture3();
    Rng rng(2);
    for (int t = 0; t < 5; ++t)
        CHECK(delta(f3, random_cochain(f3, 0, rng)) == identity_cochain(f3, 1));
}

TEST_CASE("delta squared is the identity and delta is a homomorphism") {
    Rng rng(13);
    for (const PartialAction& pa :
         {testutil::fixture1(), testutil::fixture2(), testutil::fixture3()}) {
        for (int n : {0, 1, 2}) {
            for (int t = 0; t < 10; ++t) {
                const Cochain f = random_cochain(pa, n, rng);
                const Cochain g = random_cochain(pa, n, rng);
                CHECK(delta(pa, delta(pa, f)) == identity_cochain(pa, n + 2));
                CHECK(delta(pa, cochain_mul(pa, f, g)) ==
                      cochain_mul(pa, delta(pa, f), delta(pa, g)));
            }
        }
    }
}

TEST_CASE("pointwise cocycle identities match the kernel predicate") {
    Rng rng(21);
    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2()}) {
        for (int t = 0; t < 20; ++t) {
            const Cochain f1 = t % 2 ? random_cochain(pa, 1, rng) : random_cocycle(pa, 1, rng);
            CHECK(is_cocycle(pa, f1) == z1_identity_holds(pa, f1));
            const Cochain f2 = t % 2 ? random_cochain(pa, 2, rng) : random_cocycle(pa, 2, rng);
            CHECK(is_cocycle(pa, f2) == z2_identity_holds(pa, f2));
        }
    }
}

TEST_CASE("cocycles, coboundaries and witnesses on FIXTURE-3") {
    const PartialAction pa = testutil::fixture3();
    CHECK(is_cocycle(pa, identity_cochain(pa, 1)));

    Cochain f = identity_cochain(pa, 1);
    f.at(pa.group, {1}) = elem({4});
    CHECK(is_cocycle(pa, f));                      // 4^2 = 16 ≡ 1 mod 5
    CHECK_FALSE(is_coboundary(pa, f).has_value());  // δ^0 is trivial here

    // exhaustive oracle: no ξ ∈ C^0 has δξ = f
    for (int a = 1; a < 5; ++a) {
        Cochain xi;
        xi.degree = 0;
        xi.values = {elem({a})};
        CHECK_FALSE(delta(pa, xi) == f);
    }

    CHECK_FALSE(cohomologous(pa, f, identity_cochain(pa, 1)).has_value());

    Rng rng(4);
    for (int n : {1, 2}) {
        const Cochain xi = random_cochain(pa, n - 1, rng);
        const auto witness = is_coboundary(pa, delta(pa, xi));
        REQUIRE(witness.has_value());
        CHECK(delta(pa, *witness) == delta(pa, xi));
    }
}

TEST_CASE("cohomologous pairs") {
    Rng rng(6);
    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2()}) {
        for (int n : {1, 2}) {
            const Cochain w = random_cocycle(pa, n, rng);
            const auto self = cohomologous(pa, w, w);
            REQUIRE(self.has_value());
            CHECK(cochain_mul(pa, w, delta(pa, *self)) == w);

            const Cochain xi = random_cochain(pa, n - 1, rng);
            const Cochain w2 = cochain_mul(pa, w, delta(pa, xi));
            const auto wit = cohomologous(pa, w, w2);
            REQUIRE(wit.has_value());
            CHECK(cochain_mul(pa, w, delta(pa, *wit)) == w2);
        }
    }
}
