#include <catch2/catch_amalgamated.hpp>

#include "pcoh/cohomology.hpp"
#include "pcoh/verify.hpp"
#include "testutil.hpp"

using namespace pcoh;
using testutil::elem;

TEST_CASE("presentations of the cochain groups") {
    const PartialAction f3 = testutil::fixture3();
    const AbelianPresentation p3 = present_cochain_group(f3, 1);
    REQUIRE(p3.factors.size() == 2);
    CHECK(p3.factors[0].order == 4);
    CHECK(p3.factors[1].order == 4);
    CHECK(p3.total_order() == 16);

    const PartialAction f1 = testutil::fixture1();
    const AbelianPresentation p1 = present_cochain_group(f1, 1);
    std::vector<i64> orders;
    for (const auto& f : p1.factors) orders.push_back(f.order);
    CHECK(orders == std::vector<i64>{4, 4, 4, 4});  // slot e contributes two Z_4's
    CHECK(p1.factors[0].slot == 0);
    CHECK(p1.factors[1].slot == 0);

    // a slot with empty ideal contributes no factors: FIXTURE-1 slot (g,g)
    const AbelianPresentation p2 = present_cochain_group(f1, 2);
    for (const auto& f : p2.factors) CHECK(f.slot != tuple_index({1, 1}, 3));
}

TEST_CASE("encode and decode round-trip") {
    Rng rng(19);
    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2()}) {
        for (int n : {0, 1, 2}) {
            const AbelianPresentation pres = present_cochain_group(pa, n);
            for (int t = 0; t < 10; ++t) {
                const Cochain f = random_cochain(pa, n, rng);
                CHECK(decode(pa, pres, encode(pa, pres, f)) == f);
            }
        }
    }
}

TEST_CASE("delta matrix") {
    // trivial action, n = 0: δ^0 ≡ e_1, the zero matrix
    const PartialAction f3 = testutil::fixture3();
    const HomMatrix m0 = delta_matrix(f3, 0);
    for (i64 v : m0.m.a) CHECK(v == 0);

    // FIXTURE-3, n = 1: kernel and image orders, against brute force
    CHECK(kernel_order(f3, 1) == 2);  // f(e) forced to 1, f(s)^2 = 1
    CHECK(image_order(f3, 1) == 8);
    CHECK(kernel_order(f3, 1) * image_order(f3, 1) == 16);  // |C^1|

    // composition is zero mod target orders
    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2()}) {
        for (int n : {0, 1}) {
            const HomMatrix a = delta_matrix(pa, n);
            const HomMatrix b = delta_matrix(pa, n + 1);
            for (int j = 0; j < a.m.cols; ++j) {
                std::vector<i64> col(static_cast<std::size_t>(a.m.rows));
                for (int i = 0; i < a.m.rows; ++i) col[static_cast<std::size_t>(i)] = a.m.at(i, j);
                const std::vector<i64> comp = apply_hom(b, col);
                for (i64 v : comp) CHECK(v == 0);
            }
        }
    }
}

TEST_CASE("delta matrix equals delta on random cochains") {
    Rng rng(29);
    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2(), testutil::fixture3()}) {
        for (int n : {0, 1}) {
            const HomMatrix hm = delta_matrix(pa, n);
            for (int t = 0; t < 100 / 3 + 1; ++t) {
                const Cochain f = random_cochain(pa, n, rng);
                std::vector<i64> lhs = encode(pa, hm.target, delta(pa, f));
                for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] %= hm.target.factors[i].order;
                CHECK(lhs == apply_hom(hm, encode(pa, hm.source, f)));
            }
        }
    }
}

TEST_CASE("rank-nullity over the finite groups") {
    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2(), testutil::fixture3()}) {
        for (int n : {0, 1, 2}) {
            const AbelianPresentation pres = present_cochain_group(pa, n);
            CHECK(kernel_order(pa, n) * image_order(pa, n) == pres.total_order());
        }
    }
}

TEST_CASE("cohomology: SNF route against the brute-force oracle") {
    const PartialAction f3 = testutil::fixture3();
    CHECK(cohomology(f3, 1) == std::vector<i64>{2});  // the classical H^1(Z_2, U(Z_5)) anchor
    CHECK(cohomology_bruteforce(f3, 1) == std::vector<i64>{2});

    const PartialAction z2z3 = testutil::trivial_z2_on_z3();
    CHECK(cohomology(z2z3, 2) == std::vector<i64>{2});  // H^2(Z_2, U(Z_3)) anchor
    CHECK(cohomology_bruteforce(z2z3, 2) == std::vector<i64>{2});

    const PartialAction f1 = testutil::fixture1();
    CHECK(cohomology(f1, 0) == std::vector<i64>{4});  // invariants {(c,c)} ≅ Z_4
    CHECK(cohomology_bruteforce(f1, 0) == std::vector<i64>{4});

    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2()})
        for (int n : {0, 1, 2}) {
            const AbelianPresentation pres = present_cochain_group(pa, n);
            if (pres.total_order(1 << 20) > (1 << 20)) continue;
            CHECK(cohomology(pa, n) == cohomology_bruteforce(pa, n));
        }
}

TEST_CASE("H^0 equals the alpha-invariants") {
    for (const PartialAction& pa : {testutil::fixture1(), testutil::fixture2(), testutil::fixture3()}) {
        // direct enumeration of {a ∈ U(A) : alpha_x(1_{x^-1} a) = 1_x a}
        const AbelianPresentation pres = present_cochain_group(pa, 0);
        i64 count = 0;
        std::vector<i64> e(pres.factors.size(), 0);
        while (true) {
            const Cochain c = decode(pa, pres, e);
            bool inv = true;
            for (int x = 0; x < pa.group.order && inv; ++x)
                inv = apply(pa, x, c.values[0]) ==
                      pa.ring.mul(pa.ring.idempotent(pa.dom(x)), c.values[0]);
            if (inv) ++count;
            std::size_t i = 0;
            for (; i < e.size(); ++i) {
                if (++e[i] < pres.factors[i].order) break;
                e[i] = 0;
            }
            if (i == e.size()) break;
        }
        i64 snf_order = 1;
        for (i64 d : cohomology(pa, 0)) snf_order *= d;
        CHECK(snf_order == count);
    }
}

TEST_CASE("randomized instances agree with the oracle") {
    Rng rng(101);
    int done = 0;
    for (int t = 0; t < 30 && done < 8; ++t) {
        const PartialAction pa = random_restricted_action(rng);
        for (int n : {0, 1}) {
            const AbelianPresentation pres = present_cochain_group(pa, n);
            if (pres.total_order(1 << 14) > (1 << 14)) continue;
            CHECK(cohomology(pa, n) == cohomology_bruteforce(pa, n));
            ++done;
        }
    }
    CHECK(done >= 8);
}

TEST_CASE("brute force respects its bound") {
    CHECK_THROWS_AS(cohomology_bruteforce(testutil::fixture1(), 1, 4), MathError);
}
