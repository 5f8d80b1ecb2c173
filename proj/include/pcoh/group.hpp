#pragma once

#include <vector>

#include "pcoh/common.hpp"

namespace pcoh {

// Caps the exhaustive associativity check and the dense G^n tables at desk
// scale; G^n tables grow as order^n.
inline constexpr int kMaxGroupOrder = 64;

// A finite group as a validated multiplication table. Elements are dense
// indices 0..order-1; identity and inverses are always recomputed from the
// table, never trusted.
struct FiniteGroup {
    int order = 1;
    std::vector<std::vector<int>> table;  // table[a][b] = a*b
    int identity = 0;
    std::vector<int> inverse;

    int mul(int a, int b) const { return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inverse[static_cast<std::size_t>(a)]; }

    int mul(const Tuple& xs) const {
        int p = identity;
        for (int x : xs) p = mul(p, x);
        return p;
    }

    bool operator==(const FiniteGroup&) const = default;
};

// Validates all group axioms and fills in identity/inverse.
inline FiniteGroup make_from_table(std::vector<std::vector<int>> table, int max_order = kMaxGroupOrder) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw InputError("not-a-group", "empty multiplication table");
    if (n > max_order)
        throw InputError("invalid-parameter",
                         "group order " + std::to_string(n) + " exceeds cap " + std::to_string(max_order));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[static_cast<std::size_t>(i)].size()) != n)
            throw InputError("not-a-group", "table is not square at row " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            const int v = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v < 0 || v >= n)
                throw InputError("not-a-group", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                    ") = " + std::to_string(v) + " out of range");
        }
    }

    FiniteGroup g;
    g.order = n;
    g.table = std::move(table);

    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = g.mul(e, i) == i && g.mul(i, e) == i;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw MathError("not-a-group", "no identity element");
    g.identity = identity;

    g.inverse.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (g.mul(i, j) == identity && g.mul(j, i) == identity) {
                g.inverse[static_cast<std::size_t>(i)] = j;
                break;
            }
        }
        if (g.inverse[static_cast<std::size_t>(i)] < 0)
            throw MathError("not-a-group", "element " + std::to_string(i) + " has no inverse");
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw MathError("not-a-group", "associativity fails at (" + std::to_string(a) + "," +
                                                       std::to_string(b) + "," + std::to_string(c) + ")");
    return g;
}

// Z_n with i*j = (i+j) mod n, identity 0.
inline FiniteGroup make_cyclic(int n) {
    if (n <= 0) throw InputError("invalid-parameter", "cyclic group order must be positive");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return make_from_table(std::move(t));
}

// Componentwise product on pairs, enumerated row-major: (a,b) -> a*|H| + b.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const int n = g.order * h.order;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a1 = 0; a1 < g.order; ++a1)
        for (int b1 = 0; b1 < h.order; ++b1)
            for (int a2 = 0; a2 < g.order; ++a2)
                for (int b2 = 0; b2 < h.order; ++b2)
                    t[static_cast<std::size_t>(a1 * h.order + b1)][static_cast<std::size_t>(a2 * h.order + b2)] =
                        g.mul(a1, a2) * h.order + h.mul(b1, b2);
    return make_from_table(std::move(t));
}

inline bool is_abelian(const FiniteGroup& g) {
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < a; ++b)
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

inline int element_order(const FiniteGroup& g, int x) {
    int p = x, k = 1;
    while (p != g.identity) {
        p = g.mul(p, x);
        ++k;
    }
    return k;
}

}  // namespace pcoh
