#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>
#include <vector>

#include "pcoh/common.hpp"

namespace pcoh {

// residue vector, one entry per block
struct RingElement {
    std::vector<int> residues;

    bool operator==(const RingElement&) const = default;
};

// A unital ideal e*A: the set of block indices where the generating central
// idempotent e is 1.
struct Ideal {
    std::vector<int> support;  // sorted, unique

    bool contains(int b) const { return std::binary_search(support.begin(), support.end(), b); }
    std::size_t size() const { return support.size(); }
    bool operator==(const Ideal&) const = default;

    static Ideal full(int nblocks) {
        Ideal i;
        i.support.resize(static_cast<std::size_t>(nblocks));
        std::iota(i.support.begin(), i.support.end(), 0);
        return i;
    }
};

// D_g ∩ D_h = D_g D_h: the lattice meet is support intersection.
inline Ideal ideal_meet(const Ideal& a, const Ideal& b) {
    Ideal r;
    std::set_intersection(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                          std::back_inserter(r.support));
    return r;
}

inline long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// ax + by = gcd(a,b)
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline int mod_inverse(int a, int m) {
    long long x, y;
    long long g = ext_gcd(a, m, x, y);
    if (g != 1) throw MathError("not-a-unit", std::to_string(a) + " has no inverse mod " + std::to_string(m));
    return static_cast<int>(((x % m) + m) % m);
}

inline int pow_mod(int base, long long exp, int m) {
    long long r = 1 % m, b = base % m;
    while (exp > 0) {
        if (exp & 1) r = r * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<int>(r);
}

inline bool is_prime_power(int m, int* prime = nullptr, int* exponent = nullptr) {
    if (m < 2) return false;
    int p = 0;
    for (int d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = m;  // m itself prime
    int k = 0, rest = m;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) return false;
    if (prime) *prime = p;
    if (exponent) *exponent = k;
    return true;
}

inline long long euler_phi_prime_power(int p, int k) {
    long long r = p - 1;
    for (int i = 1; i < k; ++i) r *= p;
    return r;
}

// Structure of U(Z_m) for a prime power m: independent generators plus a
// discrete-log table residue -> exponents. For odd p the group is cyclic of
// order p^(k-1)(p-1); for m = 2 it is trivial, for m = 4 cyclic of order 2,
// and for m = 2^k, k >= 3, it is <-1> x <3> of orders 2 and 2^(k-2).
struct UnitStructure {
    int modulus = 2;
    std::vector<std::pair<int, long long>> gens;  // (residue, order)
    std::vector<std::array<int, 2>> dlog;         // residue -> exponents, {-1,-1} for non-units
};

inline UnitStructure unit_structure_mod(int m) {
    int p = 0, k = 0;
    if (!is_prime_power(m, &p, &k))
        throw InputError("invalid-parameter", "modulus " + std::to_string(m) + " is not a prime power");
    UnitStructure s;
    s.modulus = m;
    if (m == 2) {
        // trivial unit group
    } else if (p == 2 && k >= 3) {
        s.gens.emplace_back(m - 1, 2);
        s.gens.emplace_back(3, 1LL << (k - 2));
    } else {
        // odd p, or m = 4: cyclic; find a generator by exhaustive order test
        const long long phi = euler_phi_prime_power(p, k);
        int gen = -1;
        for (int g = 2; g < m; ++g) {
            if (gcd_ll(g, m) != 1) continue;
            long long ord = 1;
            int x = g;
            while (x != 1) {
                x = static_cast<int>(static_cast<long long>(x) * g % m);
                ++ord;
            }
            if (ord == phi) {
                gen = g;
                break;
            }
        }
        if (gen < 0) throw MathError("internal-error", "no primitive root mod " + std::to_string(m));
        s.gens.emplace_back(gen, phi);
    }
    s.dlog.assign(static_cast<std::size_t>(m), {-1, -1});
    if (s.gens.empty()) {
        s.dlog[1] = {0, 0};
    } else if (s.gens.size() == 1) {
        int x = 1;
        for (long long e = 0; e < s.gens[0].second; ++e) {
            s.dlog[static_cast<std::size_t>(x)] = {static_cast<int>(e), 0};
            x = static_cast<int>(static_cast<long long>(x) * s.gens[0].first % m);
        }
    } else {
        for (long long e0 = 0; e0 < s.gens[0].second; ++e0)
            for (long long e1 = 0; e1 < s.gens[1].second; ++e1) {
                int x = static_cast<int>(static_cast<long long>(pow_mod(s.gens[0].first, e0, m)) *
                                         pow_mod(s.gens[1].first, e1, m) % m);
                s.dlog[static_cast<std::size_t>(x)] = {static_cast<int>(e0), static_cast<int>(e1)};
            }
    }
    return s;
}

struct UnitGenerator {
    RingElement element;
    long long order = 1;
    int block = 0;
};

// A = ∏ A_λ with every block Z_{p^k}. All element operations are
// componentwise and pure.
struct ProductRing {
    std::vector<int> blocks;  // moduli

    int nblocks() const { return static_cast<int>(blocks.size()); }

    RingElement zero() const { return RingElement{std::vector<int>(blocks.size(), 0)}; }

    RingElement one() const { return RingElement{std::vector<int>(blocks.size(), 1)}; }

    Ideal full_ideal() const { return Ideal::full(nblocks()); }

    void check_shape(const RingElement& a) const {
        if (a.residues.size() != blocks.size())
            throw InputError("shape-error", "element has " + std::to_string(a.residues.size()) + " residues, ring has " +
                                                std::to_string(blocks.size()) + " blocks");
    }

    void check_ideal(const Ideal& i) const {
        int prev = -1;
        for (int b : i.support) {
            if (b <= prev) throw InputError("shape-error", "ideal support not sorted/unique");
            if (b < 0 || b >= nblocks()) throw InputError("shape-error", "ideal block index out of range");
            prev = b;
        }
    }

    RingElement add(const RingElement& a, const RingElement& b) const {
        check_shape(a);
        check_shape(b);
        RingElement r = zero();
        for (std::size_t i = 0; i < blocks.size(); ++i)
            r.residues[i] = (a.residues[i] + b.residues[i]) % blocks[i];
        return r;
    }

    RingElement sub(const RingElement& a, const RingElement& b) const {
        check_shape(a);
        check_shape(b);
        RingElement r = zero();
        for (std::size_t i = 0; i < blocks.size(); ++i)
            r.residues[i] = ((a.residues[i] - b.residues[i]) % blocks[i] + blocks[i]) % blocks[i];
        return r;
    }

    RingElement mul(const RingElement& a, const RingElement& b) const {
        check_shape(a);
        check_shape(b);
        RingElement r = zero();
        for (std::size_t i = 0; i < blocks.size(); ++i)
            r.residues[i] = static_cast<int>(static_cast<long long>(a.residues[i]) * b.residues[i] % blocks[i]);
        return r;
    }

    // the central idempotent 1_I generating the ideal
    RingElement idempotent(const Ideal& i) const {
        check_ideal(i);
        RingElement r = zero();
        for (int b : i.support) r.residues[static_cast<std::size_t>(b)] = 1 % blocks[static_cast<std::size_t>(b)];
        return r;
    }

    Ideal support_of(const RingElement& a) const {
        check_shape(a);
        Ideal i;
        for (int b = 0; b < nblocks(); ++b)
            if (a.residues[static_cast<std::size_t>(b)] != 0) i.support.push_back(b);
        return i;
    }

    // true iff a is 0 off the ideal and a unit on every block of it; the zero
    // ideal's only element 0 counts as its unit (the zero ring has 0 = 1)
    bool is_unit_of(const RingElement& a, const Ideal& i) const {
        check_shape(a);
        check_ideal(i);
        for (int b = 0; b < nblocks(); ++b) {
            const int r = a.residues[static_cast<std::size_t>(b)];
            if (i.contains(b)) {
                if (blocks[static_cast<std::size_t>(b)] > 1 && gcd_ll(r, blocks[static_cast<std::size_t>(b)]) != 1)
                    return false;
            } else if (r != 0) {
                return false;
            }
        }
        return true;
    }

    // blockwise inverse on the ideal: mul(a, result) = idempotent(i)
    RingElement inverse_in_ideal(const RingElement& a, const Ideal& i) const {
        check_shape(a);
        check_ideal(i);
        RingElement r = zero();
        for (int b : i.support) {
            const int m = blocks[static_cast<std::size_t>(b)];
            const int v = a.residues[static_cast<std::size_t>(b)];
            if (gcd_ll(v, m) != 1)
                throw MathError("not-a-unit",
                                "residue " + std::to_string(v) + " not invertible mod " + std::to_string(m) +
                                    " at block " + std::to_string(b));
            r.residues[static_cast<std::size_t>(b)] = mod_inverse(v, m);
        }
        for (int b = 0; b < nblocks(); ++b)
            if (!i.contains(b) && a.residues[static_cast<std::size_t>(b)] != 0)
                throw MathError("not-a-unit", "element not supported on the ideal at block " + std::to_string(b));
        return r;
    }

    // inverse within the element's own support
    RingElement inverse_on_support(const RingElement& a) const { return inverse_in_ideal(a, support_of(a)); }

    // Independent generators whose cyclic spans direct-product to U(I*A).
    std::vector<UnitGenerator> unit_group_structure(const Ideal& i) const {
        check_ideal(i);
        std::vector<UnitGenerator> gens;
        const RingElement e = idempotent(i);
        for (int b : i.support) {
            const UnitStructure s = unit_structure_mod(blocks[static_cast<std::size_t>(b)]);
            for (const auto& [res, ord] : s.gens) {
                UnitGenerator g;
                g.element = e;
                g.element.residues[static_cast<std::size_t>(b)] = res;
                g.order = ord;
                g.block = b;
                gens.push_back(std::move(g));
            }
        }
        return gens;
    }
};

inline ProductRing make_product_ring(std::vector<int> moduli) {
    for (int m : moduli)
        if (!is_prime_power(m))
            throw InputError("invalid-parameter", "block modulus " + std::to_string(m) + " is not a prime power >= 2");
    return ProductRing{std::move(moduli)};
}

}  // namespace pcoh
