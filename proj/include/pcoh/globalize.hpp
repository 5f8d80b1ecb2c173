#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcoh/cohomology.hpp"

namespace pcoh {

// The enveloping action (β, B) of a transitive component, in the
// block-product view: one block A_g per transversal element g ∈ Λ', each a
// copy of the base block, with β_x permuting blocks by g ↦ bar(xg). For
// finite G the envelope ring is unital and equals its own multiplier ring,
// so the multiplier formalism collapses to this product.
struct EnvelopingAction {
    PartialAction source;      // the transitive partial action
    TransitivityData td;
    PartialAction envelope;    // global action on the envelope ring
    std::vector<int> embed;    // source block index -> envelope block index

    int transversal_size() const { return static_cast<int>(td.transversal.size()); }
};

using GlobalCochain = UnitCochain;  // over the envelope ring, all values full units

// φ(a)|_t = alpha_{t^-1}(1_t a): the function-ring view of the embedding
// A -> F(G,A).
inline RingElement phi_at(const PartialAction& pa, const RingElement& a, int t) {
    return apply(pa, pa.group.inv(t), a);
}

inline EnvelopingAction build_enveloping(const PartialAction& pa, const TransitivityData& td) {
    require_valid(pa);
    const FiniteGroup& G = pa.group;
    EnvelopingAction env;
    env.source = pa;
    env.td = td;

    const int base_mod = pa.ring.blocks[static_cast<std::size_t>(td.base)];
    const int nb = static_cast<int>(td.transversal.size());
    PartialAction& e = env.envelope;
    e.group = G;
    e.ring = make_product_ring(std::vector<int>(static_cast<std::size_t>(nb), base_mod));
    e.domain.assign(static_cast<std::size_t>(G.order), e.ring.full_ideal());
    e.blockmap.assign(static_cast<std::size_t>(G.order), std::vector<int>(static_cast<std::size_t>(nb), -1));
    for (int x = 0; x < G.order; ++x)
        for (int j = 0; j < nb; ++j) {
            const int g = td.transversal[static_cast<std::size_t>(j)];
            const int img = td.bar[static_cast<std::size_t>(G.mul(x, g))];
            e.blockmap[static_cast<std::size_t>(x)][static_cast<std::size_t>(j)] =
                td.transversal_pos[static_cast<std::size_t>(img)];
        }
    require_valid(e);  // a valid global action = β is a homomorphism into block permutations

    env.embed.assign(static_cast<std::size_t>(pa.ring.nblocks()), -1);
    for (int g : td.lambda)
        env.embed[static_cast<std::size_t>(td.block_of[static_cast<std::size_t>(g)])] =
            td.transversal_pos[static_cast<std::size_t>(g)];

    // round trip: restricting β to the embedded ideal reproduces the source
    Ideal embedded;
    for (int g : td.lambda) embedded.support.push_back(td.transversal_pos[static_cast<std::size_t>(g)]);
    std::sort(embedded.support.begin(), embedded.support.end());
    const PartialAction back = restrict_global(e, embedded);
    std::vector<int> env_to_back(static_cast<std::size_t>(nb), -1);
    for (std::size_t i = 0; i < embedded.support.size(); ++i)
        env_to_back[static_cast<std::size_t>(embedded.support[i])] = static_cast<int>(i);
    for (int x = 0; x < G.order; ++x) {
        Ideal want;
        for (int b : pa.dom(x).support)
            want.support.push_back(env_to_back[static_cast<std::size_t>(env.embed[static_cast<std::size_t>(b)])]);
        std::sort(want.support.begin(), want.support.end());
        if (!(want == back.dom(x)))
            throw MathError("internal-error", "restriction of the envelope does not reproduce the domains");
        for (int b : pa.dom(G.inv(x)).support) {
            const int src = env_to_back[static_cast<std::size_t>(env.embed[static_cast<std::size_t>(b)])];
            const int img = env_to_back[static_cast<std::size_t>(env.embed[static_cast<std::size_t>(pa.map_block(x, b))])];
            if (back.map_block(x, src) != img)
                throw MathError("internal-error", "restriction of the envelope does not reproduce the maps");
        }
    }
    // φ(1_g) = β_g(φ(1_A)) φ(1_A) in the function-ring view
    for (int g = 0; g < G.order; ++g)
        for (int t = 0; t < G.order; ++t) {
            const RingElement lhs = phi_at(pa, pa.ring.idempotent(pa.dom(g)), t);
            const RingElement rhs = pa.ring.mul(phi_at(pa, pa.ring.one(), G.mul(G.inv(g), t)),
                                                phi_at(pa, pa.ring.one(), t));
            if (!(lhs == rhs)) throw MathError("internal-error", "φ(1_g) identity fails in the function view");
        }
    return env;
}

inline EnvelopingAction build_enveloping(const PartialAction& pa) {
    return build_enveloping(pa, transitivity_data(pa));
}

// assemble ∏_{g∈Λ} θ_g(values(g)): block A_g receives the base-block residue
inline RingElement assemble_over_lambda(const PartialAction& pa, const TransitivityData& td,
                                        const std::vector<RingElement>& per_g) {
    RingElement r = pa.ring.zero();
    for (std::size_t i = 0; i < td.lambda.size(); ++i) {
        const int g = td.lambda[i];
        r.residues[static_cast<std::size_t>(td.block_of[static_cast<std::size_t>(g)])] =
            per_g[i].residues[static_cast<std::size_t>(td.base)];
    }
    return r;
}

// w'(x⃗) = 1_{(x⃗)} ∏_{g∈Λ} θ_g ∘ w ∘ τ_n^g(x⃗)
inline Cochain w_prime(const PartialAction& pa, const TransitivityData& td, const Cochain& w) {
    if (w.degree < 1) throw InputError("invalid-parameter", "w' is defined for degree >= 1");
    check_cochain(pa, w);
    const FiniteGroup& G = pa.group;
    Cochain r;
    r.degree = w.degree;
    r.values.resize(cochain_size(pa, w.degree));
    for (std::size_t idx = 0; idx < r.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, w.degree, G.order);
        std::vector<RingElement> per_g;
        per_g.reserve(td.lambda.size());
        for (int g : td.lambda) per_g.push_back(w.at(G, index_maps(G, td, g, xs).tau));
        r.values[idx] = pa.ring.mul(pa.ring.idempotent(cochain_ideal(pa, xs)),
                                    assemble_over_lambda(pa, td, per_g));
    }
    return r;
}

// ε(x⃗') = 1_{(x⃗')} ∏_{g∈Λ} θ_g( ∏_{i=0}^{n-1} w ∘ σ_{n-1,i}^g(x⃗')^{(-1)^i} )
inline Cochain epsilon_cochain(const PartialAction& pa, const TransitivityData& td, const Cochain& w) {
    if (w.degree < 1) throw InputError("invalid-parameter", "ε is defined for degree >= 1");
    check_cochain(pa, w);
    const FiniteGroup& G = pa.group;
    const int n = w.degree;
    Cochain r;
    r.degree = n - 1;
    r.values.resize(cochain_size(pa, n - 1));
    for (std::size_t idx = 0; idx < r.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, n - 1, G.order);
        std::vector<RingElement> per_g;
        per_g.reserve(td.lambda.size());
        for (int g : td.lambda) {
            const IndexMaps im = index_maps(G, td, g, xs);
            RingElement acc = pa.ring.one();
            for (int i = 0; i < n; ++i) {
                const RingElement& v = w.at(G, im.sigma[static_cast<std::size_t>(i)]);
                acc = pa.ring.mul(acc, i % 2 ? pa.ring.inverse_on_support(v) : v);
            }
            per_g.push_back(std::move(acc));
        }
        r.values[idx] = pa.ring.mul(pa.ring.idempotent(cochain_ideal(pa, xs)),
                                    assemble_over_lambda(pa, td, per_g));
    }
    check_cochain(pa, r);
    return r;
}

// ----- extending a partial cocycle to a unit-valued cochain -----

// ε̃ = ε + 1_A - 1_{(x⃗')}: replace off-support zeros by ones
inline UnitCochain epsilon_tilde(const PartialAction& pa, const Cochain& eps) {
    UnitCochain r;
    r.degree = eps.degree;
    r.values = eps.values;
    for (auto& v : r.values)
        for (std::size_t b = 0; b < v.residues.size(); ++b)
            if (v.residues[b] == 0) v.residues[b] = 1 % pa.ring.blocks[b];
    return r;
}

// α̃_x(a) = alpha_x(1_{x^-1} a) + 1_A - 1_x
inline RingElement alpha_tilde(const PartialAction& pa, int x, const RingElement& a) {
    RingElement r = apply(pa, x, a);
    for (int b = 0; b < pa.ring.nblocks(); ++b)
        if (!pa.dom(x).contains(b)) r.residues[static_cast<std::size_t>(b)] = 1 % pa.ring.blocks[static_cast<std::size_t>(b)];
    return r;
}

// (δ̃^{n-1} ε̃)(x_1..x_n), the coboundary shape with α̃ in place of the action
inline RingElement tilde_delta_at(const PartialAction& pa, const UnitCochain& eps_t, const Tuple& xs) {
    const FiniteGroup& G = pa.group;
    const int n = static_cast<int>(xs.size());
    RingElement acc = alpha_tilde(pa, xs[0], eps_t.at(G, Tuple(xs.begin() + 1, xs.end())));
    for (int i = 1; i <= n - 1; ++i) {
        Tuple ys;
        for (int k = 0; k < i - 1; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
        ys.push_back(G.mul(xs[static_cast<std::size_t>(i - 1)], xs[static_cast<std::size_t>(i)]));
        for (int k = i + 1; k < n; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
        const RingElement& v = eps_t.at(G, ys);
        acc = pa.ring.mul(acc, i % 2 ? pa.ring.inverse_in_ideal(v, pa.ring.full_ideal()) : v);
    }
    const RingElement& last = eps_t.at(G, Tuple(xs.begin(), xs.end() - 1));
    acc = pa.ring.mul(acc, n % 2 ? pa.ring.inverse_in_ideal(last, pa.ring.full_ideal()) : last);
    return acc;
}

// w̃'(x⃗) = ∏_{g∈Λ} θ_g ∘ w ∘ τ_n^g(x⃗), globally invertible
inline UnitCochain w_prime_tilde(const PartialAction& pa, const TransitivityData& td, const Cochain& w) {
    const FiniteGroup& G = pa.group;
    UnitCochain r;
    r.degree = w.degree;
    r.values.resize(cochain_size(pa, w.degree));
    for (std::size_t idx = 0; idx < r.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, w.degree, G.order);
        std::vector<RingElement> per_g;
        per_g.reserve(td.lambda.size());
        for (int g : td.lambda) per_g.push_back(w.at(G, index_maps(G, td, g, xs).tau));
        r.values[idx] = assemble_over_lambda(pa, td, per_g);
    }
    if (!is_unit_cochain(pa.ring, r))
        throw MathError("internal-error", "w̃' is not valued in U(A)");
    return r;
}

// the "more global" n-cocycle identity with right-hand side 1_{x_1}
inline bool quasi_cocycle_identity_holds(const PartialAction& pa, const UnitCochain& wt, Tuple* bad = nullptr) {
    const FiniteGroup& G = pa.group;
    const int n = wt.degree;
    const std::size_t total = cochain_size(pa, n + 1);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const Tuple xs = index_tuple(idx, n + 1, G.order);
        RingElement acc = apply(pa, xs[0], wt.at(G, Tuple(xs.begin() + 1, xs.end())));
        for (int i = 1; i <= n; ++i) {
            Tuple ys;
            for (int k = 0; k < i - 1; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
            ys.push_back(G.mul(xs[static_cast<std::size_t>(i - 1)], xs[static_cast<std::size_t>(i)]));
            for (int k = i + 1; k <= n; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
            const RingElement& v = wt.at(G, ys);
            acc = pa.ring.mul(acc, i % 2 ? pa.ring.inverse_in_ideal(v, pa.ring.full_ideal()) : v);
        }
        const RingElement& lastv = wt.at(G, Tuple(xs.begin(), xs.end() - 1));
        acc = pa.ring.mul(acc, (n + 1) % 2 ? pa.ring.inverse_in_ideal(lastv, pa.ring.full_ideal()) : lastv);
        if (!(acc == pa.ring.idempotent(pa.dom(xs[0])))) {
            if (bad) *bad = xs;
            return false;
        }
    }
    return true;
}

// w(x⃗) = 1_{(x⃗)} w̃(x⃗)
inline bool restriction_law_holds(const PartialAction& pa, const Cochain& w, const UnitCochain& wt,
                                  Tuple* bad = nullptr) {
    const FiniteGroup& G = pa.group;
    for (std::size_t idx = 0; idx < w.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, w.degree, G.order);
        const RingElement lhs = pa.ring.mul(pa.ring.idempotent(cochain_ideal(pa, xs)), wt.values[idx]);
        if (!(lhs == w.values[idx])) {
            if (bad) *bad = xs;
            return false;
        }
    }
    return true;
}

// The extension w̃ = (δ̃^{n-1} ε̃) · w̃' of a partial n-cocycle to a function
// G^n -> U(A); postconditions (restriction law, extended identity, quasi
// identity for w̃' alone) are theorem checks and throw on failure.
inline UnitCochain w_tilde(const PartialAction& pa, const TransitivityData& td, const Cochain& w) {
    if (w.degree < 1) throw InputError("invalid-parameter", "w̃ is defined for degree >= 1");
    require_cocycle(pa, w);
    const FiniteGroup& G = pa.group;
    const int n = w.degree;

    const UnitCochain wpt = w_prime_tilde(pa, td, w);
    Tuple bad;
    if (!quasi_cocycle_identity_holds(pa, wpt, &bad))
        throw MathError("internal-error", "w̃' fails the quasi cocycle identity");

    const UnitCochain eps_t = epsilon_tilde(pa, epsilon_cochain(pa, td, w));
    UnitCochain wt;
    wt.degree = n;
    wt.values.resize(cochain_size(pa, n));
    for (std::size_t idx = 0; idx < wt.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, n, G.order);
        wt.values[idx] = pa.ring.mul(tilde_delta_at(pa, eps_t, xs), wpt.values[idx]);
    }
    if (!is_unit_cochain(pa.ring, wt)) throw MathError("internal-error", "w̃ is not valued in U(A)");
    if (!restriction_law_holds(pa, w, wt, &bad))
        throw MathError("internal-error", "w̃ does not restrict to w");
    if (!quasi_cocycle_identity_holds(pa, wt, &bad))
        throw MathError("internal-error", "w̃ fails the extended cocycle identity");
    return wt;
}

// ----- lifting the extension to the enveloping action -----

// u(x⃗)|_t in the function-ring view, a unit of A:
//   u(x⃗)|_t = w̃(t^-1,x_1,..,x_{n-1})^{(-1)^n} w̃(t^-1 x_1, x_2,..,x_n)
//             ∏_{i=1}^{n-1} w̃(t^-1,x_1,..,x_i x_{i+1},..,x_n)^{(-1)^i}
inline RingElement lift_germ(const PartialAction& pa, const UnitCochain& wt, const Tuple& xs, int t) {
    const FiniteGroup& G = pa.group;
    const int n = static_cast<int>(xs.size());
    const int ti = G.inv(t);
    Tuple first{ti};
    first.insert(first.end(), xs.begin(), xs.end() - 1);
    const RingElement& f = wt.at(G, first);
    RingElement acc = n % 2 ? pa.ring.inverse_in_ideal(f, pa.ring.full_ideal()) : f;
    Tuple second{G.mul(ti, xs[0])};
    second.insert(second.end(), xs.begin() + 1, xs.end());
    acc = pa.ring.mul(acc, wt.at(G, second));
    for (int i = 1; i <= n - 1; ++i) {
        Tuple ys{ti};
        for (int k = 0; k < i - 1; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
        ys.push_back(G.mul(xs[static_cast<std::size_t>(i - 1)], xs[static_cast<std::size_t>(i)]));
        for (int k = i + 1; k < n; ++k) ys.push_back(xs[static_cast<std::size_t>(k)]);
        const RingElement& v = wt.at(G, ys);
        acc = pa.ring.mul(acc, i % 2 ? pa.ring.inverse_in_ideal(v, pa.ring.full_ideal()) : v);
    }
    return acc;
}

struct LiftChecks {
    bool global_cocycle = false;
    bool restriction = false;
    bool germ = false;
    bool ok() const { return global_cocycle && restriction && germ; }
};

// Lifts w̃ to the global n-cocycle u over the envelope. u is computed in the
// function-ring view (germs over all t ∈ G) and converted to the Λ'-block
// view by reading pr_1 of the germ at each transversal point; the two views
// are cross-checked on the embedded blocks, and the theorem checks (strict
// global cocycle, restriction law, germ at t = 1) throw on failure.
inline GlobalCochain lift_global(const EnvelopingAction& env, const UnitCochain& wt,
                                 LiftChecks* out_checks = nullptr) {
    const PartialAction& pa = env.source;
    const FiniteGroup& G = pa.group;
    const TransitivityData& td = env.td;
    const int n = wt.degree;
    if (n < 1) throw InputError("invalid-parameter", "lift_global expects degree >= 1");

    // the partial cocycle w is the restriction of w̃
    Cochain w;
    w.degree = n;
    w.values.resize(wt.values.size());
    for (std::size_t idx = 0; idx < wt.values.size(); ++idx)
        w.values[idx] = pa.ring.mul(
            pa.ring.idempotent(cochain_ideal(pa, index_tuple(idx, n, G.order))), wt.values[idx]);

    GlobalCochain u;
    u.degree = n;
    u.values.assign(cochain_size(pa, n), env.envelope.ring.zero());
    LiftChecks checks;
    checks.global_cocycle = checks.restriction = checks.germ = true;

    for (std::size_t idx = 0; idx < u.values.size(); ++idx) {
        const Tuple xs = index_tuple(idx, n, G.order);
        for (int j = 0; j < env.transversal_size(); ++j) {
            const int t = td.transversal[static_cast<std::size_t>(j)];
            const RingElement germ = lift_germ(pa, wt, xs, t);
            u.values[idx].residues[static_cast<std::size_t>(j)] =
                germ.residues[static_cast<std::size_t>(td.base)];
        }
        // germ at t = 1 is w̃ itself
        if (!(lift_germ(pa, wt, xs, G.identity) == wt.values[idx])) checks.germ = false;
        // φ(w(x⃗)) = φ(1_{(x⃗)}) u(x⃗) in the function view, for every t
        const RingElement e_n = pa.ring.idempotent(cochain_ideal(pa, xs));
        for (int t = 0; t < G.order; ++t) {
            const RingElement lhs = phi_at(pa, w.values[idx], t);
            const RingElement rhs = pa.ring.mul(phi_at(pa, e_n, t), lift_germ(pa, wt, xs, t));
            if (!(lhs == rhs)) checks.restriction = false;
        }
        // block view restriction on the embedded blocks
        for (int g : td.lambda) {
            const int blk = td.block_of[static_cast<std::size_t>(g)];
            const int pos = td.transversal_pos[static_cast<std::size_t>(g)];
            const int m = pa.ring.blocks[static_cast<std::size_t>(blk)];
            const long long want = static_cast<long long>(e_n.residues[static_cast<std::size_t>(blk)]) *
                                   u.values[idx].residues[static_cast<std::size_t>(pos)] % m;
            if (w.values[idx].residues[static_cast<std::size_t>(blk)] != static_cast<int>(want))
                checks.restriction = false;
        }
    }
    if (!is_unit_cochain(env.envelope.ring, u))
        throw MathError("internal-error", "lift is not valued in the envelope's unit group");
    checks.global_cocycle = is_cocycle(env.envelope, as_cochain(env.envelope, u));
    if (out_checks) *out_checks = checks;
    if (!checks.ok()) throw MathError("internal-error", "lift fails a globalization theorem check");
    return u;
}

}  // namespace pcoh
