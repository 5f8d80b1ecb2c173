#include <catch2/catch_amalgamated.hpp>

#include "pcoh/snf.hpp"

using namespace pcoh;

namespace {

Mat from_rows(const std::vector<std::vector<i64>>& rows) {
    Mat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat m(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < b.cols; ++c)
            for (int k = 0; k < a.cols; ++k)
                m.at(r, c) = checked_add(m.at(r, c), checked_mul(a.at(r, k), b.at(k, c)));
    return m;
}

bool equal(const Mat& a, const Mat& b) { return a.rows == b.rows && a.cols == b.cols && a.a == b.a; }

}  // namespace

TEST_CASE("smith normal form of known matrices") {
    const Mat a = from_rows({{2, 4}, {6, 8}});
    const SnfResult r = smith_normal_form(a);
    CHECK(r.diagonal() == std::vector<i64>{2, 4});  // det = -8, gcd = 2
    CHECK(equal(mat_mul(mat_mul(r.u, a), r.v), r.s));

    // divisibility chain on the diagonal
    const Mat b = from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 10}});
    const SnfResult rb = smith_normal_form(b);
    const auto d = rb.diagonal();
    REQUIRE(d.size() == 3);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
    i64 prod = 1;
    for (i64 x : d) prod *= x;
    CHECK(prod == 60);
}

TEST_CASE("smith normal form, randomized transform check") {
    Rng rng(77);
    for (int t = 0; t < 40; ++t) {
        const int rows = rng.uniform(1, 6), cols = rng.uniform(1, 6);
        Mat a(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) a.at(r, c) = rng.uniform(-9, 9);
        const SnfResult s = smith_normal_form(a);
        CHECK(equal(mat_mul(mat_mul(s.u, a), s.v), s.s));
        const auto d = s.diagonal();
        for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
        for (int i = 0; i < std::min(rows, cols); ++i)
            for (int j = 0; j < std::min(rows, cols); ++j)
                if (i != j) CHECK(s.s.at(i, j) == 0);
    }
}

TEST_CASE("kernel basis") {
    const Mat a = from_rows({{2, 3, 5}});
    const Mat k = kernel_basis(a);
    CHECK(k.cols == 2);
    for (int c = 0; c < k.cols; ++c) {
        i128 dot = 0;
        for (int j = 0; j < 3; ++j) dot += a.at(0, j) * k.at(j, c);
        CHECK(dot == 0);
    }
}

TEST_CASE("integer linear solve") {
    const Mat a = from_rows({{2, 3}, {4, 9}});
    const auto x = solve_linear(a, {5, 13});
    REQUIRE(x.has_value());
    CHECK(2 * (*x)[0] + 3 * (*x)[1] == 5);
    CHECK(4 * (*x)[0] + 9 * (*x)[1] == 13);

    CHECK_FALSE(solve_linear(from_rows({{2, 4}}), {3}).has_value());
    CHECK_FALSE(solve_linear(from_rows({{1, 0}, {1, 0}}), {1, 2}).has_value());
}

TEST_CASE("lattice basis and triangular solve") {
    const Mat gens = from_rows({{2, 0, 4, 6}, {1, 3, 0, 2}});
    const Mat basis = lattice_column_basis(gens);
    REQUIRE(basis.rows == 2);
    REQUIRE(basis.cols == 2);
    CHECK(basis.at(0, 1) == 0);  // lower triangular
    // every generator expands integrally over the basis
    for (int c = 0; c < gens.cols; ++c) {
        const std::vector<i128> col{gens.at(0, c), gens.at(1, c)};
        const std::vector<i128> x = solve_lower_triangular(basis, col);
        CHECK(basis.at(0, 0) * x[0] == col[0]);
        CHECK(basis.at(1, 0) * x[0] + basis.at(1, 1) * x[1] == col[1]);
    }
}

TEST_CASE("lattice quotient invariants") {
    const Mat z2 = Mat::identity(2);
    CHECK(lattice_quotient_invariants(z2, from_rows({{2, 0}, {0, 4}})) == std::vector<i64>{2, 4});
    // Z^2 / (2Z x 3Z) ≅ Z_6: canonical divisibility chain
    CHECK(lattice_quotient_invariants(z2, from_rows({{2, 0}, {0, 3}})) == std::vector<i64>{6});
    // trivial quotient
    CHECK(lattice_quotient_invariants(z2, z2).empty());
    // sublattice of a sublattice
    const Mat z = from_rows({{2, 0}, {0, 1}});
    const Mat b = from_rows({{4, 0}, {0, 3}});
    CHECK(lattice_quotient_invariants(z, b) == std::vector<i64>{6});
}
