#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pcoh/cochain.hpp"
#include "pcoh/snf.hpp"

namespace pcoh {

// One cyclic factor of C^n(G,A): a unit-group generator of one block of one
// ideal D_{(x⃗)}.
struct CyclicFactor {
    std::size_t slot = 0;  // row-major index of x⃗ in G^n
    int block = 0;
    int gen_index = 0;     // which generator of U(Z_m), 0 or 1
    int gen_residue = 1;
    i64 order = 1;
};

// C^n(G,A) presented as a product of cyclic groups, with encode/decode
// between cochain tables and exponent vectors.
struct AbelianPresentation {
    int degree = 0;
    std::vector<CyclicFactor> factors;
    std::map<int, UnitStructure> tables;  // modulus -> unit structure (with dlog)

    std::vector<i64> orders() const {
        std::vector<i64> d;
        d.reserve(factors.size());
        for (const auto& f : factors) d.push_back(f.order);
        return d;
    }

    i64 total_order(i64 cap = 0) const {
        i64 n = 1;
        for (const auto& f : factors) {
            n = checked_mul(n, f.order);
            if (cap > 0 && n > cap) return n;
        }
        return n;
    }
};

inline AbelianPresentation present_cochain_group(const PartialAction& pa, int n) {
    if (n < 0) throw InputError("invalid-parameter", "degree must be >= 0");
    AbelianPresentation pres;
    pres.degree = n;
    for (int m : pa.ring.blocks)
        if (!pres.tables.count(m)) pres.tables.emplace(m, unit_structure_mod(m));
    for (std::size_t slot = 0; slot < cochain_size(pa, n); ++slot) {
        const Ideal d = cochain_ideal(pa, index_tuple(slot, n, pa.group.order));
        for (int b : d.support) {
            const UnitStructure& us = pres.tables.at(pa.ring.blocks[static_cast<std::size_t>(b)]);
            for (std::size_t gi = 0; gi < us.gens.size(); ++gi)
                pres.factors.push_back({slot, b, static_cast<int>(gi), us.gens[gi].first, us.gens[gi].second});
        }
    }
    return pres;
}

inline std::vector<i64> encode(const PartialAction& pa, const AbelianPresentation& pres, const Cochain& f) {
    check_cochain(pa, f);
    if (f.degree != pres.degree) throw InputError("shape-error", "cochain degree does not match presentation");
    std::vector<i64> e(pres.factors.size(), 0);
    for (std::size_t i = 0; i < pres.factors.size(); ++i) {
        const CyclicFactor& cf = pres.factors[i];
        const int m = pa.ring.blocks[static_cast<std::size_t>(cf.block)];
        const int residue = f.values[cf.slot].residues[static_cast<std::size_t>(cf.block)];
        const auto& dl = pres.tables.at(m).dlog[static_cast<std::size_t>(residue)];
        if (dl[0] < 0) throw MathError("internal-error", "non-unit residue during encode");
        e[i] = dl[static_cast<std::size_t>(cf.gen_index)];
    }
    return e;
}

inline Cochain decode(const PartialAction& pa, const AbelianPresentation& pres, const std::vector<i64>& e) {
    Cochain f = identity_cochain(pa, pres.degree);
    for (std::size_t i = 0; i < pres.factors.size(); ++i) {
        const CyclicFactor& cf = pres.factors[i];
        const int m = pa.ring.blocks[static_cast<std::size_t>(cf.block)];
        i64 k = e[i] % cf.order;
        if (k < 0) k += cf.order;
        int& r = f.values[cf.slot].residues[static_cast<std::size_t>(cf.block)];
        r = static_cast<int>(static_cast<long long>(r) * pow_mod(cf.gen_residue, k, m) % m);
    }
    return f;
}

// δ^n evaluated on the generators, as an integer matrix between the
// presentations of C^n and C^{n+1}; columns reduced mod target orders.
struct HomMatrix {
    AbelianPresentation source;
    AbelianPresentation target;
    Mat m;
};

inline HomMatrix delta_matrix(const PartialAction& pa, int n) {
    HomMatrix hm;
    hm.source = present_cochain_group(pa, n);
    hm.target = present_cochain_group(pa, n + 1);
    hm.m = Mat(static_cast<int>(hm.target.factors.size()), static_cast<int>(hm.source.factors.size()));
    std::vector<i64> e(hm.source.factors.size(), 0);
    for (std::size_t j = 0; j < hm.source.factors.size(); ++j) {
        e[j] = 1;
        const std::vector<i64> col = encode(pa, hm.target, delta(pa, decode(pa, hm.source, e)));
        e[j] = 0;
        for (std::size_t i = 0; i < col.size(); ++i)
            hm.m.at(static_cast<int>(i), static_cast<int>(j)) = col[i] % hm.target.factors[i].order;
    }
    return hm;
}

inline std::vector<i64> apply_hom(const HomMatrix& hm, const std::vector<i64>& x) {
    const std::vector<i128> raw = mat_vec(hm.m, std::vector<i128>(x.begin(), x.end()));
    std::vector<i64> y(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        i128 v = raw[i] % hm.target.factors[i].order;
        if (v < 0) v += hm.target.factors[i].order;
        y[i] = narrow(v);
    }
    return y;
}

// Generators of the lattice {x : M x ≡ 0 mod target orders}, i.e. the
// preimage of the relation lattice; contains the source relation lattice.
inline Mat cocycle_lattice_generators(const HomMatrix& hm) {
    i64 m = 1;
    const std::vector<i64> d = hm.target.orders();
    for (i64 x : d) m = std::lcm(m, x);
    for (const auto& f : hm.source.factors) m = std::lcm(m, f.order);
    return congruence_kernel_generators(hm.m, d, m);
}

// Invariant factors of H^n(G,A) = ker δ^n / im δ^{n-1}, by Smith normal form
// over the mixed-modulus presentation.
inline std::vector<i64> cohomology(const PartialAction& pa, int n) {
    const HomMatrix dn = delta_matrix(pa, n);
    const int r = dn.m.cols;
    if (r == 0) return {};
    const Mat z_gens = cocycle_lattice_generators(dn);
    Mat b_gens;
    const Mat relations = Mat::diagonal(dn.source.orders());
    if (n == 0) {
        b_gens = relations;
    } else {
        b_gens = Mat::hstack(delta_matrix(pa, n - 1).m, relations);
    }
    return lattice_quotient_invariants(z_gens, b_gens);
}

// |ker δ^n| and |im δ^n| as subgroup orders inside the presented groups.
inline i64 kernel_order(const PartialAction& pa, int n) {
    const HomMatrix dn = delta_matrix(pa, n);
    if (dn.m.cols == 0) return 1;
    i64 o = 1;
    const Mat z_gens = cocycle_lattice_generators(dn);
    for (i64 d : lattice_quotient_invariants(z_gens, Mat::diagonal(dn.source.orders()))) o = checked_mul(o, d);
    return o;
}

inline i64 image_order(const PartialAction& pa, int n) {
    const HomMatrix dn = delta_matrix(pa, n);
    if (dn.m.rows == 0) return 1;
    const Mat relations = Mat::diagonal(dn.target.orders());
    i64 o = 1;
    for (i64 d : lattice_quotient_invariants(Mat::hstack(dn.m, relations), relations)) o = checked_mul(o, d);
    return o;
}

// Witness ξ with δξ = f, when one exists; solved over the presentation.
inline std::optional<Cochain> is_coboundary(const PartialAction& pa, const Cochain& f) {
    if (f.degree < 1) throw InputError("invalid-parameter", "coboundaries have degree >= 1");
    check_cochain(pa, f);
    const HomMatrix hm = delta_matrix(pa, f.degree - 1);
    const std::vector<i64> b = encode(pa, hm.target, f);
    const Mat stacked = Mat::hstack(hm.m, Mat::diagonal(hm.target.orders()));
    const auto sol = solve_linear(stacked, b);
    if (!sol) return std::nullopt;
    const Cochain xi = decode(pa, hm.source, std::vector<i64>(sol->begin(), sol->begin() + hm.m.cols));
    if (!(delta(pa, xi) == f)) throw MathError("internal-error", "solver returned a bad coboundary witness");
    return xi;
}

// Witness ξ with f2 = f1 · δξ, for cocycles of equal degree.
inline std::optional<Cochain> cohomologous(const PartialAction& pa, const Cochain& f1, const Cochain& f2) {
    if (f1.degree != f2.degree) throw InputError("shape-error", "cocycle degrees differ");
    require_cocycle(pa, f1);
    require_cocycle(pa, f2);
    return is_coboundary(pa, cochain_mul(pa, f2, cochain_inv(pa, f1)));
}

// ---- brute-force oracle ------------------------------------------------

namespace detail {

// Invariant factors of the finite abelian group Q presented by element
// lists: Z (exponent vectors, a subgroup of ∏ Z_order) modulo B ⊆ Z. Done
// by element-order counting, independent of the SNF route.
inline std::vector<i64> invariants_by_order_count(const std::vector<std::vector<i64>>& z,
                                                  const std::set<std::vector<i64>>& b,
                                                  const std::vector<i64>& orders) {
    const i64 q = static_cast<i64>(z.size() / b.size());
    std::vector<i64> inv;
    if (q == 1) return inv;
    std::vector<i64> primes;
    i64 rest = q;
    for (i64 p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            primes.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    if (rest > 1) primes.push_back(rest);
    // count, for each prime power p^j, the number of q ∈ Q with q^{p^j} = 1
    std::map<i64, std::vector<int>> per_prime;  // p -> exponents of the cyclic p-factors
    for (i64 p : primes) {
        std::vector<i64> counts{1};  // N(p^0) = 1
        i64 pj = 1;
        while (true) {
            pj = checked_mul(pj, p);
            i64 cnt = 0;
            for (const auto& e : z) {
                std::vector<i64> pe(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) pe[i] = pj * e[i] % orders[i];
                if (b.count(pe)) ++cnt;
            }
            counts.push_back(cnt / static_cast<i64>(b.size()));
            if (counts.back() == counts[counts.size() - 2]) break;  // stabilized
        }
        // m_j = log_p N(p^j); c_j = m_j - m_{j-1} = #{factors with exponent >= j}
        std::vector<int> m;
        for (i64 c : counts) {
            int e = 0;
            while (c > 1) {
                c /= p;
                ++e;
            }
            m.push_back(e);
        }
        std::vector<int>& exps = per_prime[p];
        for (std::size_t j = 1; j + 1 < m.size(); ++j) {
            const int cj = m[j] - m[j - 1];
            const int cj1 = m[j + 1] - m[j];
            for (int k = 0; k < cj - cj1; ++k) exps.push_back(static_cast<int>(j));
        }
    }
    // combine per-prime exponent multisets into a divisibility chain
    std::size_t len = 0;
    for (auto& [p, exps] : per_prime) {
        std::sort(exps.rbegin(), exps.rend());
        len = std::max(len, exps.size());
    }
    inv.assign(len, 1);
    for (auto& [p, exps] : per_prime)
        for (std::size_t i = 0; i < exps.size(); ++i) {
            i64 f = 1;
            for (int k = 0; k < exps[i]; ++k) f = checked_mul(f, p);
            inv[i] = checked_mul(inv[i], f);
        }
    std::sort(inv.begin(), inv.end());
    return inv;
}

}  // namespace detail

// Enumerates every cochain, filters cocycles, quotients by enumerated
// coboundaries. The independent oracle for the SNF route.
inline std::vector<i64> cohomology_bruteforce(const PartialAction& pa, int n, i64 bound = 1 << 20) {
    const AbelianPresentation pres = present_cochain_group(pa, n);
    if (pres.total_order(bound) > bound)
        throw MathError("too-large", "|C^n| exceeds the brute-force bound");
    const std::vector<i64> orders = pres.orders();

    auto enumerate = [](const std::vector<i64>& ords, auto&& fn) {
        std::vector<i64> e(ords.size(), 0);
        while (true) {
            fn(e);
            std::size_t i = 0;
            for (; i < ords.size(); ++i) {
                if (++e[i] < ords[i]) break;
                e[i] = 0;
            }
            if (i == ords.size()) break;
        }
    };

    std::vector<std::vector<i64>> z;
    const Cochain id_next = identity_cochain(pa, n + 1);
    enumerate(orders, [&](const std::vector<i64>& e) {
        if (delta(pa, decode(pa, pres, e)) == id_next) z.push_back(e);
    });

    std::set<std::vector<i64>> b;
    if (n == 0) {
        b.insert(std::vector<i64>(orders.size(), 0));
    } else {
        const AbelianPresentation prev = present_cochain_group(pa, n - 1);
        if (prev.total_order(bound) > bound)
            throw MathError("too-large", "|C^{n-1}| exceeds the brute-force bound");
        enumerate(prev.orders(), [&](const std::vector<i64>& e) {
            b.insert(encode(pa, pres, delta(pa, decode(pa, prev, e))));
        });
    }
    return detail::invariants_by_order_count(z, b, orders);
}

// Random elements of Z^n(G,A): sampled from the cocycle lattice when the
// presentation is small (this reaches every class of H^n), otherwise δ of a
// random (n-1)-cochain. The lattice data is computed once per sampler.
class CocycleSampler {
public:
    CocycleSampler(const PartialAction& pa, int n, std::size_t max_factors = 160) : pa_(&pa), n_(n) {
        if (n == 0) return;
        pres_ = present_cochain_group(pa, n);
        if (pres_.factors.size() <= max_factors) {
            z_gens_ = cocycle_lattice_generators(delta_matrix(pa, n));
            use_lattice_ = true;
        }
    }

    Cochain sample(Rng& rng) const {
        const PartialAction& pa = *pa_;
        if (n_ == 0) {
            for (int tries = 0; tries < 4096; ++tries) {
                const Cochain c = random_cochain(pa, 0, rng);
                if (is_cocycle(pa, c)) return c;
            }
            return identity_cochain(pa, 0);  // always a 0-cocycle
        }
        if (use_lattice_) {
            std::vector<i128> acc(pres_.factors.size(), 0);
            for (int c = 0; c < z_gens_.cols; ++c) {
                const i128 k = rng.uniform(0, 11);
                for (int r = 0; r < z_gens_.rows; ++r)
                    acc[static_cast<std::size_t>(r)] =
                        checked_add(acc[static_cast<std::size_t>(r)], checked_mul(k, z_gens_.at(r, c)));
            }
            std::vector<i64> e(acc.size());
            for (std::size_t i = 0; i < acc.size(); ++i) {
                i128 v = acc[i] % pres_.factors[i].order;
                if (v < 0) v += pres_.factors[i].order;
                e[i] = narrow(v);
            }
            return decode(pa, pres_, e);
        }
        return delta(pa, random_cochain(pa, n_ - 1, rng));
    }

private:
    const PartialAction* pa_;
    int n_;
    AbelianPresentation pres_;
    Mat z_gens_;
    bool use_lattice_ = false;
};

inline Cochain random_cocycle(const PartialAction& pa, int n, Rng& rng) {
    return CocycleSampler(pa, n).sample(rng);
}

}  // namespace pcoh
