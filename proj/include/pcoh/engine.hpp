#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcoh/globalize.hpp"

namespace pcoh {

// ----- orbit decomposition ------------------------------------------------

struct OrbitProjection {
    std::vector<int> blocks;  // source block indices, sorted
    PartialAction action;     // the action restricted to those blocks
};

inline std::vector<OrbitProjection> orbit_decomposition(const PartialAction& pa) {
    std::vector<OrbitProjection> out;
    for (const auto& orbit : orbits(pa)) {
        OrbitProjection op;
        op.blocks = orbit;
        std::vector<int> new_index(static_cast<std::size_t>(pa.ring.nblocks()), -1);
        std::vector<int> moduli;
        for (int b : orbit) {
            new_index[static_cast<std::size_t>(b)] = static_cast<int>(moduli.size());
            moduli.push_back(pa.ring.blocks[static_cast<std::size_t>(b)]);
        }
        PartialAction& q = op.action;
        q.group = pa.group;
        q.ring = make_product_ring(moduli);
        q.domain.resize(static_cast<std::size_t>(pa.group.order));
        q.blockmap.assign(static_cast<std::size_t>(pa.group.order),
                          std::vector<int>(moduli.size(), -1));
        for (int g = 0; g < pa.group.order; ++g) {
            for (int b : pa.dom(g).support)
                if (new_index[static_cast<std::size_t>(b)] >= 0)
                    q.domain[static_cast<std::size_t>(g)].support.push_back(new_index[static_cast<std::size_t>(b)]);
            for (int b : pa.dom(pa.group.inv(g)).support)
                if (new_index[static_cast<std::size_t>(b)] >= 0)
                    q.blockmap[static_cast<std::size_t>(g)][static_cast<std::size_t>(new_index[static_cast<std::size_t>(b)])] =
                        new_index[static_cast<std::size_t>(pa.map_block(g, b))];
        }
        out.push_back(std::move(op));
    }
    return out;
}

inline Cochain project_cochain(const PartialAction& pa, const OrbitProjection& op, const Cochain& f) {
    Cochain r;
    r.degree = f.degree;
    r.values.reserve(f.values.size());
    for (const auto& v : f.values) {
        RingElement pv = op.action.ring.zero();
        for (std::size_t i = 0; i < op.blocks.size(); ++i)
            pv.residues[i] = v.residues[static_cast<std::size_t>(op.blocks[i])];
        r.values.push_back(std::move(pv));
    }
    return r;
}

// ----- end-to-end globalization --------------------------------------------

struct OrbitGlobalization {
    std::vector<int> blocks;
    PartialAction action;       // transitive component
    EnvelopingAction env;
    UnitCochain w_tilde;        // degree n >= 1 only
    GlobalCochain u;
    LiftChecks checks;
};

struct GlobalizeResult {
    int degree = 0;
    std::vector<OrbitGlobalization> orbits;
    bool ok() const {
        for (const auto& o : orbits)
            if (!o.checks.ok()) return false;
        return true;
    }
};

// Globalizes a partial n-cocycle: decomposes into transitive components,
// runs the transitive pipeline per component; for n = 0 the globalization is
// the constant multiplier.
inline GlobalizeResult globalize(const PartialAction& pa, const Cochain& w, bool alternate_transversal = false) {
    require_valid(pa);
    require_cocycle(pa, w);
    GlobalizeResult res;
    res.degree = w.degree;
    for (const OrbitProjection& op : orbit_decomposition(pa)) {
        OrbitGlobalization og;
        og.blocks = op.blocks;
        og.action = op.action;
        const TransitivityData td =
            alternate_transversal ? alternate_transitivity_data(op.action) : transitivity_data(op.action);
        og.env = build_enveloping(op.action, td);
        const Cochain wo = project_cochain(pa, op, w);
        if (w.degree == 0) {
            // u|_t = w constant; in the block view every A_g carries pr_1(w)
            og.u.degree = 0;
            og.u.values.assign(1, og.env.envelope.ring.zero());
            for (int j = 0; j < og.env.transversal_size(); ++j)
                og.u.values[0].residues[static_cast<std::size_t>(j)] =
                    wo.values[0].residues[static_cast<std::size_t>(td.base)];
            og.checks.germ = true;
            og.checks.global_cocycle = is_cocycle(og.env.envelope, as_cochain(og.env.envelope, og.u));
            og.checks.restriction = true;
            for (int g : td.lambda) {
                const int blk = td.block_of[static_cast<std::size_t>(g)];
                const int pos = td.transversal_pos[static_cast<std::size_t>(g)];
                if (wo.values[0].residues[static_cast<std::size_t>(blk)] !=
                    og.u.values[0].residues[static_cast<std::size_t>(pos)])
                    og.checks.restriction = false;
            }
            if (!og.checks.ok()) throw MathError("internal-error", "0-cocycle globalization check failed");
        } else {
            og.w_tilde = w_tilde(op.action, td, wo);
            og.u = lift_global(og.env, og.w_tilde, &og.checks);
        }
        res.orbits.push_back(std::move(og));
    }
    return res;
}

// Number of global 0-cochains over the envelope that are β-invariant and
// restrict to w; the uniqueness statement for degree 0 says this is 1.
inline int count_degree0_globalizations(const EnvelopingAction& env, const Cochain& w) {
    const ProductRing& ring = env.envelope.ring;
    const TransitivityData& td = env.td;
    std::vector<UnitGenerator> gens = ring.unit_group_structure(ring.full_ideal());
    std::vector<i64> idx(gens.size(), 0);
    int count = 0;
    while (true) {
        RingElement cand = ring.one();
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (i64 k = 0; k < idx[i]; ++k) cand = ring.mul(cand, gens[i].element);
        Cochain c0;
        c0.degree = 0;
        c0.values = {cand};
        bool ok = is_cocycle(env.envelope, c0);
        for (int g : td.lambda)
            if (ok && cand.residues[static_cast<std::size_t>(td.transversal_pos[static_cast<std::size_t>(g)])] !=
                          w.values[0].residues[static_cast<std::size_t>(td.block_of[static_cast<std::size_t>(g)])])
                ok = false;
        if (ok) ++count;
        std::size_t i = 0;
        for (; i < gens.size(); ++i) {
            if (++idx[i] < gens[i].order) break;
            idx[i] = 0;
        }
        if (i == gens.size()) break;
    }
    return count;
}

// ----- uniqueness of globalizations -----------------------------------------

// Carries a globalization from one envelope presentation to another one of
// the same source action; blocks correspond when their transversal elements
// represent the same H-coset.
inline GlobalCochain reindex_globalization(const EnvelopingAction& to_env, const EnvelopingAction& from_env,
                                           const GlobalCochain& u) {
    if (from_env.transversal_size() != to_env.transversal_size() ||
        from_env.td.stabilizer != to_env.td.stabilizer)
        throw InputError("shape-error", "globalizations live over different envelopes");
    std::vector<int> to_pos(static_cast<std::size_t>(from_env.transversal_size()), -1);
    for (int j = 0; j < from_env.transversal_size(); ++j) {
        const int g = from_env.td.transversal[static_cast<std::size_t>(j)];
        const int rep = to_env.td.bar[static_cast<std::size_t>(g)];  // same coset, target's representative
        to_pos[static_cast<std::size_t>(j)] = to_env.td.transversal_pos[static_cast<std::size_t>(rep)];
    }
    GlobalCochain r;
    r.degree = u.degree;
    r.values.assign(u.values.size(), to_env.envelope.ring.zero());
    for (std::size_t idx = 0; idx < u.values.size(); ++idx)
        for (int j = 0; j < from_env.transversal_size(); ++j)
            r.values[idx].residues[static_cast<std::size_t>(to_pos[static_cast<std::size_t>(j)])] =
                u.values[idx].residues[static_cast<std::size_t>(j)];
    return r;
}

// Constructive witness ζ with u2 = u1 · δζ over the envelope, built from the
// transported cochains u_i' = ∏_{g∈Λ'} ϑ_g ∘ u_i ∘ τ_n^g with ϑ_g = β_g ∘ pr_1
// and ξ'(x⃗') = ∏_{g∈Λ'} ϑ_g ∘ ξ ∘ τ_{n-1}^g. Falls back to a coboundary
// search over the envelope when the constructive witness does not verify.
inline UnitCochain compare_globalizations(const EnvelopingAction& env, const GlobalCochain& u1,
                                          const GlobalCochain& u2,
                                          const std::optional<Cochain>& xi = std::nullopt) {
    const PartialAction& epa = env.envelope;
    const FiniteGroup& G = epa.group;
    const int n = u1.degree;
    if (u2.degree != n) throw InputError("shape-error", "globalization degrees differ");

    const Cochain c1 = as_cochain(epa, u1);
    const Cochain c2 = as_cochain(epa, u2);
    require_cocycle(epa, c1);
    require_cocycle(epa, c2);

    if (n == 0) {
        // degree-0 globalizations of the same cocycle are strictly unique
        if (!(u1 == u2)) throw MathError("not-cohomologous", "distinct degree-0 globalizations");
        UnitCochain triv;
        triv.degree = 0;
        triv.values = {epa.ring.one()};
        return triv;
    }

    // the envelope's own transitivity machinery (global and transitive)
    const TransitivityData etd = transitivity_data(epa);
    {
        const Cochain eps1 = epsilon_cochain(epa, etd, c1);
        const Cochain eps2 = epsilon_cochain(epa, etd, c2);
        Cochain z = cochain_mul(epa, eps2, cochain_inv(epa, eps1));
        if (xi) {
            // ξ' over the envelope: block g gets pr_1 ∘ ξ ∘ τ_{n-1}^g
            const PartialAction& spa = env.source;
            check_cochain(spa, *xi);
            Cochain xi_p;
            xi_p.degree = n - 1;
            xi_p.values.resize(cochain_size(epa, n - 1));
            for (std::size_t idx = 0; idx < xi_p.values.size(); ++idx) {
                const Tuple xs = index_tuple(idx, n - 1, G.order);
                RingElement v = epa.ring.zero();
                for (std::size_t j = 0; j < etd.transversal.size(); ++j) {
                    const int g = etd.transversal[j];
                    const Tuple tau = index_maps(G, etd, g, xs).tau;
                    v.residues[static_cast<std::size_t>(etd.block_of[static_cast<std::size_t>(g)])] =
                        xi->at(spa.group, tau).residues[static_cast<std::size_t>(env.td.base)];
                }
                xi_p.values[idx] = std::move(v);
            }
            z = cochain_mul(epa, z, xi_p);
        }
        const Cochain check = cochain_mul(epa, c1, delta(epa, z));
        if (check == c2) return as_unit_cochain(epa.ring, z);
    }
    // fallback: exhaustive coboundary search over the envelope
    const auto witness = cohomologous(epa, c1, c2);
    if (!witness) throw MathError("not-cohomologous", "the globalizations differ by a non-coboundary");
    return as_unit_cochain(epa.ring, *witness);
}

// ----- partial vs global cohomology ------------------------------------------

struct IsoCheckDegree {
    int n = 0;
    std::vector<i64> partial_factors;
    std::vector<i64> global_factors;
    bool equal = false;
};

struct IsoCheckOrbit {
    std::vector<int> blocks;
    std::vector<IsoCheckDegree> degrees;
    bool functorial = true;  // [w1][w2] -> [u1 u2] respects products, on samples
};

struct IsoCheckReport {
    std::vector<IsoCheckOrbit> orbits;
    bool ok() const {
        for (const auto& o : orbits) {
            if (!o.functorial) return false;
            for (const auto& d : o.degrees)
                if (!d.equal) return false;
        }
        return true;
    }
};

inline IsoCheckReport check_partial_global_iso(const PartialAction& pa, const std::vector<int>& degrees = {0, 1, 2},
                                               int functorial_samples = 3, std::uint64_t seed = 2024) {
    require_valid(pa);
    IsoCheckReport rep;
    Rng rng(seed);
    for (const OrbitProjection& op : orbit_decomposition(pa)) {
        IsoCheckOrbit orb;
        orb.blocks = op.blocks;
        const EnvelopingAction env = build_enveloping(op.action);
        for (int n : degrees) {
            IsoCheckDegree d;
            d.n = n;
            d.partial_factors = cohomology(op.action, n);
            d.global_factors = cohomology(env.envelope, n);
            d.equal = d.partial_factors == d.global_factors;
            orb.degrees.push_back(std::move(d));
        }
        for (int n : degrees) {
            if (n < 1 || n > 2) continue;
            for (int s = 0; s < functorial_samples; ++s) {
                const Cochain w1 = random_cocycle(op.action, n, rng);
                const Cochain w2 = random_cocycle(op.action, n, rng);
                const GlobalCochain u1 = globalize(op.action, w1).orbits.front().u;
                const GlobalCochain u2 = globalize(op.action, w2).orbits.front().u;
                const GlobalCochain u12 = globalize(op.action, cochain_mul(op.action, w1, w2)).orbits.front().u;
                const Cochain ratio = cochain_mul(
                    env.envelope, as_cochain(env.envelope, u12),
                    cochain_inv(env.envelope, as_cochain(env.envelope, unit_mul(env.envelope.ring, u1, u2))));
                if (!is_coboundary(env.envelope, ratio)) orb.functorial = false;
            }
        }
        rep.orbits.push_back(std::move(orb));
    }
    return rep;
}

}  // namespace pcoh
