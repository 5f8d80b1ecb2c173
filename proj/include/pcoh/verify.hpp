#pragma once

#include <string>
#include <vector>

#include "pcoh/engine.hpp"

namespace pcoh {

struct PropertyResult {
    std::string name;
    bool pass = true;
    std::string counterexample;  // first failing tuple / detail, empty when passing
};

struct VerifyReport {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<int> degrees;
    std::vector<PropertyResult> properties;

    bool all_pass() const {
        for (const auto& p : properties)
            if (!p.pass) return false;
        return true;
    }
};

namespace detail {

inline std::string tuple_str(const Tuple& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s + ")";
}

inline Tuple first_mismatch(const FiniteGroup& g, const Cochain& a, const Cochain& b) {
    for (std::size_t idx = 0; idx < a.values.size(); ++idx)
        if (!(a.values[idx] == b.values[idx])) return index_tuple(idx, a.degree, g.order);
    return {};
}

}  // namespace detail

// The theorem suite for one action. Randomness is fully determined by
// the seed; every failure records the first counterexample.
inline VerifyReport run_verify(const PartialAction& pa, std::uint64_t seed, int trials,
                               const std::vector<int>& degrees) {
    const ActionReport ar = validate(pa);
    if (!ar.valid()) throw InputError("invalid-action", "verify requires a valid partial action");

    VerifyReport rep;
    rep.seed = seed;
    rep.trials = trials;
    rep.degrees = degrees;
    Rng rng(seed);
    const FiniteGroup& G = pa.group;

    for (int n : degrees) {
        const std::string tag = "n=" + std::to_string(n);

        PropertyResult dd{"delta-squared-is-identity " + tag};
        for (int t = 0; t < trials && dd.pass; ++t) {
            const Cochain f = random_cochain(pa, n, rng);
            const Cochain ddf = delta(pa, delta(pa, f));
            const Cochain id = identity_cochain(pa, n + 2);
            if (!(ddf == id)) {
                dd.pass = false;
                dd.counterexample = detail::tuple_str(detail::first_mismatch(G, ddf, id));
            }
        }
        rep.properties.push_back(dd);

        if (n < 1) continue;

        PropertyResult thm{"w-equals-delta-epsilon-times-w-prime " + tag};
        PropertyResult wprime_cocycle{"w-prime-is-cocycle " + tag};
        PropertyResult wt_checks{"w-tilde-restriction-and-identities " + tag};
        PropertyResult lift_checks{"lift-global-cocycle-restriction-germ " + tag};
        const CocycleSampler sampler(pa, n);
        for (int t = 0; t < trials; ++t) {
            const Cochain w = sampler.sample(rng);
            for (const OrbitProjection& op : orbit_decomposition(pa)) {
                const PartialAction& q = op.action;
                const Cochain wo = project_cochain(pa, op, w);
                const TransitivityData td = transitivity_data(q);
                const Cochain wp = w_prime(q, td, wo);
                const Cochain eps = epsilon_cochain(q, td, wo);
                const Cochain rhs = cochain_mul(q, delta(q, eps), wp);
                if (thm.pass && !(rhs == wo)) {
                    thm.pass = false;
                    thm.counterexample = detail::tuple_str(detail::first_mismatch(q.group, rhs, wo));
                }
                if (wprime_cocycle.pass && !is_cocycle(q, wp)) {
                    wprime_cocycle.pass = false;
                    wprime_cocycle.counterexample = "w' not in Z^n";
                }
                try {
                    const UnitCochain wt = w_tilde(q, td, wo);
                    const EnvelopingAction env = build_enveloping(q, td);
                    LiftChecks lc;
                    lift_global(env, wt, &lc);
                    if (lift_checks.pass && !lc.ok()) {
                        lift_checks.pass = false;
                        lift_checks.counterexample = lc.global_cocycle ? (lc.restriction ? "germ" : "restriction")
                                                                       : "global-cocycle";
                    }
                } catch (const MathError& e) {
                    if (wt_checks.pass) {
                        wt_checks.pass = false;
                        wt_checks.counterexample = e.what();
                    }
                }
            }
        }
        rep.properties.push_back(thm);
        rep.properties.push_back(wprime_cocycle);
        rep.properties.push_back(wt_checks);
        rep.properties.push_back(lift_checks);

        if (n <= 2) {
            PropertyResult uniq{"uniqueness-across-transversals " + tag};
            const Cochain w = random_cocycle(pa, n, rng);
            try {
                const GlobalizeResult r1 = globalize(pa, w, false);
                const GlobalizeResult r2 = globalize(pa, w, true);
                for (std::size_t i = 0; i < r1.orbits.size(); ++i) {
                    const EnvelopingAction& env = r1.orbits[i].env;
                    const GlobalCochain v2 = reindex_globalization(env, r2.orbits[i].env, r2.orbits[i].u);
                    const UnitCochain zeta = compare_globalizations(env, r1.orbits[i].u, v2);
                    const Cochain check =
                        cochain_mul(env.envelope, as_cochain(env.envelope, r1.orbits[i].u),
                                    delta(env.envelope, as_cochain(env.envelope, zeta)));
                    if (!(check == as_cochain(env.envelope, v2))) {
                        uniq.pass = false;
                        uniq.counterexample = "witness does not verify";
                    }
                }
            } catch (const MathError& e) {
                uniq.pass = false;
                uniq.counterexample = e.what();
            }
            rep.properties.push_back(uniq);
        }
    }

    PropertyResult iso{"partial-vs-global-cohomology n=0,1,2"};
    const IsoCheckReport ir = check_partial_global_iso(pa, {0, 1, 2}, 2, seed ^ 0x9e3779b97f4a7c15ULL);
    if (!ir.ok()) {
        iso.pass = false;
        for (const auto& o : ir.orbits)
            for (const auto& d : o.degrees)
                if (!d.equal && iso.counterexample.empty())
                    iso.counterexample = "factor mismatch at n=" + std::to_string(d.n);
        if (iso.counterexample.empty()) iso.counterexample = "functoriality sample failed";
    }
    rep.properties.push_back(iso);
    return rep;
}

// Seeded random global actions restricted to a random ideal; the instance
// generator behind the randomized acceptance runs.
inline PartialAction random_restricted_action(Rng& rng) {
    static const int kModuli[] = {2, 3, 4, 5, 7, 8, 9};
    const int q = rng.uniform(2, 6);
    const FiniteGroup G = make_cyclic(q);
    const int nb = rng.uniform(1, 4);
    std::vector<int> moduli;
    for (int i = 0; i < nb; ++i) moduli.push_back(kModuli[rng.uniform(0, 6)]);

    // a permutation of the blocks with pi^q = id, preserving moduli:
    // split each same-modulus class into cycles of length dividing q
    std::vector<int> pi(static_cast<std::size_t>(nb), -1);
    std::map<int, std::vector<int>> classes;
    for (int b = 0; b < nb; ++b) classes[moduli[static_cast<std::size_t>(b)]].push_back(b);
    for (auto& [m, blocks] : classes) {
        std::size_t i = 0;
        while (i < blocks.size()) {
            int len = 1;
            for (int d = q; d >= 1; --d)
                if (q % d == 0 && static_cast<std::size_t>(d) <= blocks.size() - i && rng.uniform(0, 1)) {
                    len = d;
                    break;
                }
            for (int k = 0; k < len; ++k)
                pi[static_cast<std::size_t>(blocks[i + static_cast<std::size_t>(k)])] =
                    blocks[i + static_cast<std::size_t>((k + 1) % len)];
            i += static_cast<std::size_t>(len);
        }
    }

    PartialAction global;
    global.group = G;
    global.ring = make_product_ring(moduli);
    global.domain.assign(static_cast<std::size_t>(q), global.ring.full_ideal());
    global.blockmap.assign(static_cast<std::size_t>(q), std::vector<int>(static_cast<std::size_t>(nb)));
    for (int b = 0; b < nb; ++b) global.blockmap[0][static_cast<std::size_t>(b)] = b;
    for (int g = 1; g < q; ++g)
        for (int b = 0; b < nb; ++b)
            global.blockmap[static_cast<std::size_t>(g)][static_cast<std::size_t>(b)] =
                pi[static_cast<std::size_t>(global.blockmap[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(b)])];

    Ideal ideal;
    for (int b = 0; b < nb; ++b)
        if (rng.uniform(0, 1)) ideal.support.push_back(b);
    if (ideal.support.empty()) ideal.support.push_back(rng.uniform(0, nb - 1));
    return restrict_global(global, ideal);
}

}  // namespace pcoh
