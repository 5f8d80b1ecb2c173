#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcoh/group.hpp"
#include "pcoh/ring.hpp"

namespace pcoh {

// A unital partial action of G on a product ring, stored as per-element
// domain ideals D_g plus block bijections alpha_g: D_{g^-1} -> D_g. The
// residue map on each matched block is the identity, which forces matched
// blocks to carry equal moduli.
struct PartialAction {
    FiniteGroup group;
    ProductRing ring;
    std::vector<Ideal> domain;                // g -> D_g
    std::vector<std::vector<int>> blockmap;   // g -> (block b of D_{g^-1} -> image block), -1 elsewhere

    const Ideal& dom(int g) const { return domain[static_cast<std::size_t>(g)]; }
    int map_block(int g, int b) const { return blockmap[static_cast<std::size_t>(g)][static_cast<std::size_t>(b)]; }
};

struct ActionIssue {
    std::string axiom;  // "shape", "(i)", "(ii')", "(iii')", "moduli"
    int g = -1;
    int h = -1;
    std::string detail;
};

struct ActionReport {
    std::vector<ActionIssue> issues;
    bool valid() const { return issues.empty(); }
};

// Exhaustive check of the partial-action axioms over G x G. Failures are
// data in the report, not exceptions.
inline ActionReport validate(const PartialAction& pa) {
    ActionReport rep;
    const FiniteGroup& G = pa.group;
    const int nb = pa.ring.nblocks();

    if (static_cast<int>(pa.domain.size()) != G.order || static_cast<int>(pa.blockmap.size()) != G.order) {
        rep.issues.push_back({"shape", -1, -1, "domain/blockmap tables must have one entry per group element"});
        return rep;
    }
    for (int g = 0; g < G.order; ++g) {
        pa.ring.check_ideal(pa.dom(g));
        if (static_cast<int>(pa.blockmap[static_cast<std::size_t>(g)].size()) != nb) {
            rep.issues.push_back({"shape", g, -1, "blockmap row has wrong length"});
            return rep;
        }
    }

    // blockmap[g] must biject supp D_{g^-1} onto supp D_g, moduli matching;
    // shape issues are recorded but do not stop the pairwise axiom checks
    for (int g = 0; g < G.order; ++g) {
        std::vector<int> hit(static_cast<std::size_t>(nb), 0);
        for (int b = 0; b < nb; ++b) {
            const int img = pa.map_block(g, b);
            if (img < -1 || img >= nb) {
                rep.issues.push_back({"shape", g, -1, "image index out of range at block " + std::to_string(b)});
                return rep;
            }
            const bool in_dom = pa.dom(G.inv(g)).contains(b);
            if (!in_dom) {
                if (img != -1)
                    rep.issues.push_back({"shape", g, -1,
                                          "block " + std::to_string(b) + " mapped but not in D_{g^-1}"});
                continue;
            }
            if (img < 0) {
                rep.issues.push_back({"shape", g, -1, "block " + std::to_string(b) + " of D_{g^-1} has no image"});
                continue;
            }
            if (hit[static_cast<std::size_t>(img)]++)
                rep.issues.push_back({"shape", g, -1, "blockmap not injective at image block " + std::to_string(img)});
            if (pa.ring.blocks[static_cast<std::size_t>(b)] != pa.ring.blocks[static_cast<std::size_t>(img)])
                rep.issues.push_back({"moduli", g, -1,
                                      "blocks " + std::to_string(b) + " -> " + std::to_string(img) +
                                          " have different moduli"});
        }
    }

    // (i) D_1 = A and alpha_1 = id
    if (!(pa.dom(G.identity) == pa.ring.full_ideal()))
        rep.issues.push_back({"(i)", G.identity, -1, "D_1 is not the full ring"});
    for (int b = 0; b < nb; ++b)
        if (pa.map_block(G.identity, b) != b) {
            rep.issues.push_back({"(i)", G.identity, -1, "alpha_1 is not the identity"});
            break;
        }

    for (int g = 0; g < G.order; ++g) {
        for (int h = 0; h < G.order; ++h) {
            const int gh = G.mul(g, h);
            // (ii') alpha_g(D_{g^-1} D_h) = D_g D_{gh}
            const Ideal lhs_src = ideal_meet(pa.dom(G.inv(g)), pa.dom(h));
            Ideal lhs;
            for (int b : lhs_src.support)
                if (pa.map_block(g, b) >= 0) lhs.support.push_back(pa.map_block(g, b));
            std::sort(lhs.support.begin(), lhs.support.end());
            lhs.support.erase(std::unique(lhs.support.begin(), lhs.support.end()), lhs.support.end());
            const Ideal rhs = ideal_meet(pa.dom(g), pa.dom(gh));
            if (!(lhs == rhs))
                rep.issues.push_back({"(ii')", g, h, "alpha_g(D_{g^-1} D_h) differs from D_g D_{gh}"});
            // (iii') alpha_g . alpha_h = alpha_{gh} on D_{h^-1} D_{h^-1 g^-1}
            const Ideal comp_dom = ideal_meet(pa.dom(G.inv(h)), pa.dom(G.inv(gh)));
            for (int b : comp_dom.support) {
                const int via_h = pa.map_block(h, b);
                if (via_h < 0 || !pa.dom(G.inv(g)).contains(via_h)) {
                    rep.issues.push_back({"(iii')", g, h,
                                          "alpha_h image of block " + std::to_string(b) + " leaves D_{g^-1}"});
                    continue;
                }
                if (pa.map_block(g, via_h) != pa.map_block(gh, b))
                    rep.issues.push_back({"(iii')", g, h,
                                          "composition mismatch at block " + std::to_string(b)});
            }
        }
    }
    return rep;
}

inline void require_valid(const PartialAction& pa) {
    const ActionReport rep = validate(pa);
    if (!rep.valid()) {
        const auto& i = rep.issues.front();
        throw MathError("invalid-action", "axiom " + i.axiom + " fails at (g=" + std::to_string(i.g) +
                                              ",h=" + std::to_string(i.h) + "): " + i.detail);
    }
}

inline bool is_global(const PartialAction& pa) {
    for (int g = 0; g < pa.group.order; ++g)
        if (!(pa.dom(g) == pa.ring.full_ideal())) return false;
    return true;
}

// alpha_g(1_{g^-1} a): project onto D_{g^-1}, relabel blocks, zero elsewhere.
inline RingElement apply(const PartialAction& pa, int g, const RingElement& a) {
    pa.ring.check_shape(a);
    RingElement r = pa.ring.zero();
    for (int b : pa.dom(pa.group.inv(g)).support)
        r.residues[static_cast<std::size_t>(pa.map_block(g, b))] = a.residues[static_cast<std::size_t>(b)];
    return r;
}

// Restriction of a global action to the unital ideal I, with blocks
// re-indexed to 0..|I|-1. When sum_g beta_g(I) is everything, the input is
// an enveloping action of the output.
inline PartialAction restrict_global(const PartialAction& global, const Ideal& ideal) {
    if (!is_global(global)) throw MathError("not-a-global-action", "all domains must be the full ring");
    require_valid(global);
    global.ring.check_ideal(ideal);
    if (ideal.support.empty()) throw InputError("invalid-parameter", "restriction ideal must be nonempty");

    const FiniteGroup& G = global.group;
    std::vector<int> new_index(static_cast<std::size_t>(global.ring.nblocks()), -1);
    std::vector<int> moduli;
    for (int b : ideal.support) {
        new_index[static_cast<std::size_t>(b)] = static_cast<int>(moduli.size());
        moduli.push_back(global.ring.blocks[static_cast<std::size_t>(b)]);
    }

    PartialAction pa;
    pa.group = G;
    pa.ring = make_product_ring(moduli);
    pa.domain.resize(static_cast<std::size_t>(G.order));
    pa.blockmap.assign(static_cast<std::size_t>(G.order),
                       std::vector<int>(static_cast<std::size_t>(pa.ring.nblocks()), -1));
    for (int g = 0; g < G.order; ++g) {
        // D_g = I ∩ beta_g(I)
        for (int b : ideal.support) {
            const int img = global.map_block(g, b);
            if (ideal.contains(img)) pa.domain[static_cast<std::size_t>(g)].support.push_back(new_index[static_cast<std::size_t>(img)]);
        }
        std::sort(pa.domain[static_cast<std::size_t>(g)].support.begin(), pa.domain[static_cast<std::size_t>(g)].support.end());
    }
    for (int g = 0; g < G.order; ++g)
        for (int b : pa.dom(G.inv(g)).support) {
            // pull back to old labels, push through beta_g
            const int old_b = ideal.support[static_cast<std::size_t>(b)];
            pa.blockmap[static_cast<std::size_t>(g)][static_cast<std::size_t>(b)] =
                new_index[static_cast<std::size_t>(global.map_block(g, old_b))];
        }
    require_valid(pa);
    return pa;
}

// Finest partition of blocks with λ' ~ λ'' whenever some alpha_x maps one to
// the other; the action is transitive iff there is a single class.
inline std::vector<std::vector<int>> orbits(const PartialAction& pa) {
    const int nb = pa.ring.nblocks();
    std::vector<int> parent(static_cast<std::size_t>(nb));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    for (int g = 0; g < pa.group.order; ++g)
        for (int b : pa.dom(pa.group.inv(g)).support) unite(b, pa.map_block(g, b));
    std::map<int, std::vector<int>> cls;
    for (int b = 0; b < nb; ++b) cls[find(b)].push_back(b);
    std::vector<std::vector<int>> result;
    for (auto& [root, blocks] : cls) result.push_back(std::move(blocks));
    return result;
}

inline bool is_transitive(const PartialAction& pa) { return orbits(pa).size() == 1; }

// Coset data of the stabilizer H of the base block: transversal Λ' (identity
// first), bar map x -> x̄ ∈ Λ' with x ∈ x̄H, η(x) = x^-1 x̄ ∈ H, and the
// identification of Λ ⊆ Λ' with the blocks via g -> alpha_g(A_1).
struct TransitivityData {
    int base = 0;                       // λ0, a ring block index
    std::vector<int> stabilizer;        // H, sorted group elements
    std::vector<int> transversal;       // Λ', identity first
    std::vector<int> bar;               // group element -> representative element
    std::vector<int> eta;               // group element -> x^-1 x̄ ∈ H
    std::vector<int> lambda;            // the g ∈ Λ' with A_1 ⊆ D_{g^-1}, in transversal order
    std::vector<int> block_of;          // group element g ∈ Λ -> ring block alpha_g(base); -1 elsewhere
    std::vector<int> transversal_pos;   // group element -> index in transversal, -1 elsewhere
};

// H = {x ∈ G | A_λ0 ⊆ D_{x^-1} and alpha_x(A_λ0) = A_λ0}
inline std::vector<int> stabilizer_of_block(const PartialAction& pa, int base) {
    std::vector<int> h;
    for (int x = 0; x < pa.group.order; ++x)
        if (pa.dom(pa.group.inv(x)).contains(base) && pa.map_block(x, base) == base) h.push_back(x);
    return h;
}

inline TransitivityData transitivity_data(const PartialAction& pa, int base,
                                          const std::vector<int>& transversal) {
    if (base < 0 || base >= pa.ring.nblocks()) throw InputError("invalid-index", "base block out of range");
    if (!is_transitive(pa)) throw MathError("not-transitive", "the action has more than one block orbit");

    const FiniteGroup& G = pa.group;
    TransitivityData td;
    td.base = base;
    td.stabilizer = stabilizer_of_block(pa, base);

    auto in_h = [&](int x) { return std::binary_search(td.stabilizer.begin(), td.stabilizer.end(), x); };

    td.transversal = transversal;
    if (td.transversal.empty() || td.transversal.front() != G.identity)
        throw InputError("invalid-parameter", "transversal must start with the identity");
    td.transversal_pos.assign(static_cast<std::size_t>(G.order), -1);
    td.bar.assign(static_cast<std::size_t>(G.order), -1);
    for (std::size_t i = 0; i < td.transversal.size(); ++i) {
        const int t = td.transversal[i];
        if (t < 0 || t >= G.order || td.transversal_pos[static_cast<std::size_t>(t)] != -1)
            throw InputError("invalid-parameter", "transversal entries must be distinct group elements");
        td.transversal_pos[static_cast<std::size_t>(t)] = static_cast<int>(i);
    }
    for (int x = 0; x < G.order; ++x)
        for (int t : td.transversal)
            if (in_h(G.mul(G.inv(t), x))) {
                if (td.bar[static_cast<std::size_t>(x)] != -1)
                    throw InputError("invalid-parameter", "transversal meets a coset twice");
                td.bar[static_cast<std::size_t>(x)] = t;
            }
    for (int x = 0; x < G.order; ++x)
        if (td.bar[static_cast<std::size_t>(x)] == -1)
            throw InputError("invalid-parameter", "transversal misses the coset of element " + std::to_string(x));

    td.eta.resize(static_cast<std::size_t>(G.order));
    for (int x = 0; x < G.order; ++x) td.eta[static_cast<std::size_t>(x)] = G.mul(G.inv(x), td.bar[static_cast<std::size_t>(x)]);

    td.block_of.assign(static_cast<std::size_t>(G.order), -1);
    std::vector<int> seen(static_cast<std::size_t>(pa.ring.nblocks()), 0);
    for (int g : td.transversal)
        if (pa.dom(G.inv(g)).contains(base)) {
            td.lambda.push_back(g);
            const int blk = pa.map_block(g, base);
            td.block_of[static_cast<std::size_t>(g)] = blk;
            ++seen[static_cast<std::size_t>(blk)];
        }
    for (int b = 0; b < pa.ring.nblocks(); ++b)
        if (seen[static_cast<std::size_t>(b)] != 1)
            throw MathError("internal-error", "Λ does not enumerate the blocks exactly once");
    return td;
}

// Default transversal: greedy in group-element index order, seeded with 1.
inline TransitivityData transitivity_data(const PartialAction& pa, int base = 0) {
    const std::vector<int> H = stabilizer_of_block(pa, base);
    auto in_h = [&](int x) { return std::binary_search(H.begin(), H.end(), x); };
    const FiniteGroup& G = pa.group;
    std::vector<int> trans{G.identity};
    std::vector<char> covered(static_cast<std::size_t>(G.order), 0);
    for (int h : H) covered[static_cast<std::size_t>(h)] = 1;
    for (int x = 0; x < G.order; ++x) {
        if (covered[static_cast<std::size_t>(x)]) continue;
        trans.push_back(x);
        for (int y = 0; y < G.order; ++y)
            if (in_h(G.mul(G.inv(x), y))) covered[static_cast<std::size_t>(y)] = 1;
    }
    return transitivity_data(pa, base, trans);
}

// A deterministic second choice for uniqueness tests: each non-identity
// coset is represented by its largest element, listed in descending order.
inline TransitivityData alternate_transitivity_data(const PartialAction& pa, int base = 0) {
    const std::vector<int> H = stabilizer_of_block(pa, base);
    auto in_h = [&](int x) { return std::binary_search(H.begin(), H.end(), x); };
    const FiniteGroup& G = pa.group;
    std::vector<int> trans{G.identity};
    std::vector<char> covered(static_cast<std::size_t>(G.order), 0);
    for (int h : H) covered[static_cast<std::size_t>(h)] = 1;
    for (int x = G.order - 1; x >= 0; --x) {
        if (covered[static_cast<std::size_t>(x)]) continue;
        trans.push_back(x);
        for (int y = 0; y < G.order; ++y)
            if (in_h(G.mul(G.inv(x), y))) covered[static_cast<std::size_t>(y)] = 1;
    }
    return transitivity_data(pa, base, trans);
}

// θ_g(a) = alpha_g(pr_1(a)): project to the base block, transport by alpha_g.
inline RingElement theta(const PartialAction& pa, const TransitivityData& td, int g, const RingElement& a) {
    if (g < 0 || g >= pa.group.order || td.block_of[static_cast<std::size_t>(g)] < 0)
        throw InputError("invalid-index", "theta requires g ∈ Λ");
    RingElement r = pa.ring.zero();
    r.residues[static_cast<std::size_t>(td.block_of[static_cast<std::size_t>(g)])] =
        a.residues[static_cast<std::size_t>(td.base)];
    return r;
}

// η_n^g and the re-indexing tuples τ_n^g, σ_{n,i}^g.
struct IndexMaps {
    Tuple tau;                  // (η_1^g(x_1), ..., η_n^g(x_1..x_n)) ∈ H^n
    std::vector<Tuple> sigma;   // σ_{n,i}^g(x⃗) ∈ G^{n+1}, i = 0..n
};

inline IndexMaps index_maps(const FiniteGroup& G, const TransitivityData& td, int g, const Tuple& xs) {
    const int n = static_cast<int>(xs.size());
    IndexMaps im;
    // r_i = x_i^-1 ... x_1^-1 g, with r_0 = g
    std::vector<int> r(static_cast<std::size_t>(n) + 1);
    r[0] = g;
    for (int i = 1; i <= n; ++i)
        r[static_cast<std::size_t>(i)] = G.mul(G.inv(xs[static_cast<std::size_t>(i - 1)]), r[static_cast<std::size_t>(i - 1)]);
    im.tau.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const int barred = td.bar[static_cast<std::size_t>(r[static_cast<std::size_t>(i - 1)])];
        im.tau[static_cast<std::size_t>(i - 1)] = td.eta[static_cast<std::size_t>(G.mul(G.inv(xs[static_cast<std::size_t>(i - 1)]), barred))];
    }
    im.sigma.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        Tuple s;
        if (i == 0) {
            s.push_back(G.inv(g));
            for (int k = 0; k < n; ++k) s.push_back(xs[static_cast<std::size_t>(k)]);
        } else {
            s.assign(im.tau.begin(), im.tau.begin() + i);
            const int rep = td.bar[static_cast<std::size_t>(r[static_cast<std::size_t>(i)])];
            s.push_back(G.inv(rep));
            for (int k = i; k < n; ++k) s.push_back(xs[static_cast<std::size_t>(k)]);
        }
        im.sigma[static_cast<std::size_t>(i)] = std::move(s);
    }
    return im;
}

}  // namespace pcoh
