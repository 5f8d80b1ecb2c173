#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcoh/partial_action.hpp"

namespace pcoh {

// A partial n-cochain: a dense table G^n -> A whose value at (x_1,...,x_n)
// is a unit of D_{(x_1,...,x_n)} = D_{x_1} D_{x_1x_2} ... D_{x_1...x_n}.
// Degree 0 is a single unit of A.
struct Cochain {
    int degree = 0;
    std::vector<RingElement> values;  // order^degree entries, row-major

    const RingElement& at(const FiniteGroup& g, const Tuple& xs) const { return values[tuple_index(xs, g.order)]; }
    RingElement& at(const FiniteGroup& g, const Tuple& xs) { return values[tuple_index(xs, g.order)]; }
    bool operator==(const Cochain&) const = default;
};

// A classical n-cochain with values in U(A) (every value a full unit); also
// the storage for global cochains over an envelope ring.
struct UnitCochain {
    int degree = 0;
    std::vector<RingElement> values;

    const RingElement& at(const FiniteGroup& g, const Tuple& xs) const { return values[tuple_index(xs, g.order)]; }
    bool operator==(const UnitCochain&) const = default;
};

// D_{(x_1,...,x_n)}: meet of the domain ideals over prefix products.
inline Ideal cochain_ideal(const PartialAction& pa, const Tuple& xs) {
    Ideal d = pa.ring.full_ideal();
    int p = pa.group.identity;
    for (int x : xs) {
        p = pa.group.mul(p, x);
        d = ideal_meet(d, pa.dom(p));
    }
    return d;
}

inline std::size_t cochain_size(const PartialAction& pa, int n) {
    return pow_sz(static_cast<std::size_t>(pa.group.order), n);
}

// e_n(x_1,...,x_n) = 1_{(x_1,...,x_n)}, the identity of C^n(G,A).
inline Cochain identity_cochain(const PartialAction& pa, int n) {
    if (n < 0) throw InputError("invalid-parameter", "cochain degree must be >= 0");
    Cochain f;
    f.degree = n;
    f.values.reserve(cochain_size(pa, n));
    for (std::size_t idx = 0; idx < cochain_size(pa, n); ++idx)
        f.values.push_back(pa.ring.idempotent(cochain_ideal(pa, index_tuple(idx, n, pa.group.order))));
    return f;
}

inline bool is_cochain(const PartialAction& pa, const Cochain& f, std::string* why = nullptr) {
    if (f.degree < 0 || f.values.size() != cochain_size(pa, f.degree)) {
        if (why) *why = "wrong table size for degree " + std::to_string(f.degree);
        return false;
    }
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, f.degree, pa.group.order);
        const Ideal d = cochain_ideal(pa, xs);
        const RingElement& v = f.values[idx];
        if (v.residues.size() != pa.ring.blocks.size() || !pa.ring.is_unit_of(v, d) ||
            !(pa.ring.support_of(v) == d)) {
            if (why) {
                *why = "value at (";
                for (std::size_t i = 0; i < xs.size(); ++i) *why += (i ? "," : "") + std::to_string(xs[i]);
                *why += ") is not a unit of D_(x⃗) with full support";
            }
            return false;
        }
    }
    return true;
}

inline void check_cochain(const PartialAction& pa, const Cochain& f) {
    std::string why;
    if (!is_cochain(pa, f, &why)) throw MathError("not-a-cochain", why);
}

// pointwise multiplication; the group C^n(G,A) is abelian
inline Cochain cochain_mul(const PartialAction& pa, const Cochain& a, const Cochain& b) {
    if (a.degree != b.degree) throw InputError("shape-error", "cochain degrees differ");
    check_cochain(pa, a);
    check_cochain(pa, b);
    Cochain r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = pa.ring.mul(a.values[i], b.values[i]);
    return r;
}

// pointwise inverse within D_{(x_1,...,x_n)}
inline Cochain cochain_inv(const PartialAction& pa, const Cochain& a) {
    check_cochain(pa, a);
    Cochain r = a;
    for (auto& v : r.values) v = pa.ring.inverse_on_support(v);
    return r;
}

// The partial coboundary. For n > 0:
//   (δ^n f)(x_1,...,x_{n+1}) = alpha_{x_1}(1_{x_1^-1} f(x_2,...,x_{n+1}))
//                              ∏_{i=1}^n f(x_1,...,x_i x_{i+1},...,x_{n+1})^{(-1)^i}
//                              f(x_1,...,x_n)^{(-1)^{n+1}},
// every inverse taken in the factor's own ideal; for n = 0:
//   (δ^0 a)(x) = alpha_x(1_{x^-1} a) a^-1.
// The result's support must come out equal to D_{(x_1,...,x_{n+1})}; this is
// asserted, never forced by projection.
inline Cochain delta(const PartialAction& pa, const Cochain& f) {
    check_cochain(pa, f);
    const FiniteGroup& G = pa.group;
    const int n = f.degree;
    Cochain r;
    r.degree = n + 1;
    r.values.resize(cochain_size(pa, n + 1));
    for (std::size_t idx = 0; idx < r.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, n + 1, G.order);
        RingElement acc = apply(pa, xs[0], f.at(G, Tuple(xs.begin() + 1, xs.end())));
        for (int i = 1; i <= n; ++i) {
            Tuple ys;
            ys.reserve(static_cast<std::size_t>(n));
            for (int k = 0; k < i - 1; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
            ys.push_back(G.mul(xs[static_cast<std::size_t>(i - 1)], xs[static_cast<std::size_t>(i)]));
            for (int k = i + 1; k <= n; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
            const RingElement& v = f.at(G, ys);
            acc = pa.ring.mul(acc, i % 2 ? pa.ring.inverse_on_support(v) : v);
        }
        const RingElement& last = f.at(G, Tuple(xs.begin(), xs.end() - 1));
        acc = pa.ring.mul(acc, (n + 1) % 2 ? pa.ring.inverse_on_support(last) : last);
        if (!(pa.ring.support_of(acc) == cochain_ideal(pa, xs)))
            throw MathError("internal-error", "coboundary value escaped D_(x⃗)");
        r.values[idx] = std::move(acc);
    }
    return r;
}

inline bool is_cocycle(const PartialAction& pa, const Cochain& f) {
    return delta(pa, f) == identity_cochain(pa, f.degree + 1);
}

inline void require_cocycle(const PartialAction& pa, const Cochain& f) {
    if (!is_cocycle(pa, f)) throw MathError("not-a-cocycle", "delta(f) is not the identity cochain");
}

// explicit degree-1 form: alpha_x(1_{x^-1} f(y)) f(x) = 1_x f(xy)
inline bool z1_identity_holds(const PartialAction& pa, const Cochain& f) {
    const FiniteGroup& G = pa.group;
    for (int x = 0; x < G.order; ++x)
        for (int y = 0; y < G.order; ++y) {
            const RingElement lhs = pa.ring.mul(apply(pa, x, f.at(G, {y})), f.at(G, {x}));
            const RingElement rhs = pa.ring.mul(pa.ring.idempotent(pa.dom(x)), f.at(G, {G.mul(x, y)}));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

// explicit degree-2 form: alpha_x(1_{x^-1} f(y,z)) f(x,yz) = f(x,y) f(xy,z)
inline bool z2_identity_holds(const PartialAction& pa, const Cochain& f) {
    const FiniteGroup& G = pa.group;
    for (int x = 0; x < G.order; ++x)
        for (int y = 0; y < G.order; ++y)
            for (int z = 0; z < G.order; ++z) {
                const RingElement lhs =
                    pa.ring.mul(apply(pa, x, f.at(G, {y, z})), f.at(G, {x, G.mul(y, z)}));
                const RingElement rhs = pa.ring.mul(f.at(G, {x, y}), f.at(G, {G.mul(x, y), z}));
                if (!(lhs == rhs)) return false;
            }
    return true;
}

// uniform random unit of D_{(x⃗)} per slot
inline Cochain random_cochain(const PartialAction& pa, int n, Rng& rng) {
    Cochain f = identity_cochain(pa, n);
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        RingElement& v = f.values[idx];
        for (int b = 0; b < pa.ring.nblocks(); ++b) {
            if (v.residues[static_cast<std::size_t>(b)] == 0) continue;
            const int m = pa.ring.blocks[static_cast<std::size_t>(b)];
            int r = 1;
            do {
                r = rng.uniform(1, m - 1);
            } while (gcd_ll(r, m) != 1);
            v.residues[static_cast<std::size_t>(b)] = r;
        }
    }
    return f;
}

inline bool is_unit_cochain(const ProductRing& ring, const UnitCochain& f) {
    for (const auto& v : f.values)
        if (!ring.is_unit_of(v, ring.full_ideal())) return false;
    return true;
}

inline UnitCochain unit_mul(const ProductRing& ring, const UnitCochain& a, const UnitCochain& b) {
    if (a.degree != b.degree || a.values.size() != b.values.size())
        throw InputError("shape-error", "unit cochain degrees differ");
    UnitCochain r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = ring.mul(a.values[i], b.values[i]);
    return r;
}

inline UnitCochain unit_inv(const ProductRing& ring, const UnitCochain& a) {
    UnitCochain r = a;
    for (auto& v : r.values) v = ring.inverse_in_ideal(v, ring.full_ideal());
    return r;
}

// Reinterpret a global cochain as a partial cochain over an action with full
// domains (the envelope view); checked.
inline Cochain as_cochain(const PartialAction& pa, const UnitCochain& u) {
    Cochain f;
    f.degree = u.degree;
    f.values = u.values;
    check_cochain(pa, f);
    return f;
}

inline UnitCochain as_unit_cochain(const ProductRing& ring, const Cochain& f) {
    UnitCochain u;
    u.degree = f.degree;
    u.values = f.values;
    if (!is_unit_cochain(ring, u))
        throw MathError("not-a-cochain", "values are not full units of the ring");
    return u;
}

}  // namespace pcoh
