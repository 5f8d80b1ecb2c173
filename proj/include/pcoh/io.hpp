#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pcoh/engine.hpp"

namespace pcoh {

using json = nlohmann::json;

// Parse errors name the file, the JSON path and the offending key.
class JsonContext {
public:
    JsonContext(std::string file, std::string path) : file_(std::move(file)), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("parse-error", file_ + " at " + path_ + ": " + what);
    }

    JsonContext sub(const std::string& key) const { return JsonContext(file_, path_ + "/" + key); }

    const json& get(const json& j, const std::string& key) const {
        if (!j.is_object()) fail("expected an object with key '" + key + "'");
        auto it = j.find(key);
        if (it == j.end()) fail("missing key '" + key + "'");
        return *it;
    }

    int as_int(const json& j) const {
        if (!j.is_number_integer()) fail("expected an integer");
        return j.get<int>();
    }

    const std::string& file() const { return file_; }

private:
    std::string file_;
    std::string path_;
};

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("parse-error", path + ": cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("parse-error", path + ": " + e.what());
    }
    return j;
}

// ---- group: {"order": n, "table": [[...],...]} ----

inline json to_json(const FiniteGroup& g) {
    return json{{"order", g.order}, {"table", g.table}};
}

inline FiniteGroup group_from_json(const json& j, const JsonContext& ctx) {
    const json& jt = ctx.get(j, "table");
    if (!jt.is_array()) ctx.sub("table").fail("expected an array of rows");
    std::vector<std::vector<int>> table;
    for (const auto& row : jt) {
        if (!row.is_array()) ctx.sub("table").fail("expected rows of integers");
        std::vector<int> r;
        for (const auto& v : row) r.push_back(ctx.sub("table").as_int(v));
        table.push_back(std::move(r));
    }
    const int order = ctx.as_int(ctx.get(j, "order"));
    if (order != static_cast<int>(table.size())) ctx.sub("order").fail("order does not match the table size");
    try {
        return make_from_table(std::move(table));  // identity/inverse recomputed, never trusted
    } catch (const Error& e) {
        ctx.fail(e.what());
    }
}

// ---- ring: {"blocks": [...]}; element: [r0, r1, ...]; ideal: sorted array ----

inline json to_json(const ProductRing& r) { return json{{"blocks", r.blocks}}; }

inline ProductRing ring_from_json(const json& j, const JsonContext& ctx) {
    const json& jb = ctx.get(j, "blocks");
    if (!jb.is_array() || jb.empty()) ctx.sub("blocks").fail("expected a nonempty array of moduli");
    std::vector<int> blocks;
    for (const auto& v : jb) blocks.push_back(ctx.sub("blocks").as_int(v));
    try {
        return make_product_ring(std::move(blocks));
    } catch (const Error& e) {
        ctx.fail(e.what());
    }
}

inline json to_json(const RingElement& a) { return json(a.residues); }

inline RingElement element_from_json(const json& j, const ProductRing& ring, const JsonContext& ctx) {
    if (!j.is_array()) ctx.fail("expected an array of residues");
    RingElement a;
    for (const auto& v : j) a.residues.push_back(ctx.as_int(v));
    if (a.residues.size() != ring.blocks.size()) ctx.fail("residue count does not match the ring");
    for (std::size_t i = 0; i < a.residues.size(); ++i)
        if (a.residues[i] < 0 || a.residues[i] >= ring.blocks[i]) ctx.fail("residue out of range");
    return a;
}

inline json to_json(const Ideal& i) { return json(i.support); }

// ---- action: {"group":.., "ring":.., "domains": {"g":[..]}, "maps": {"g": {"b": b'}}} ----

inline json to_json(const PartialAction& pa) {
    json domains = json::object();
    json maps = json::object();
    for (int g = 0; g < pa.group.order; ++g) {
        domains[std::to_string(g)] = pa.dom(g).support;
        json m = json::object();
        for (int b : pa.dom(pa.group.inv(g)).support) m[std::to_string(b)] = pa.map_block(g, b);
        maps[std::to_string(g)] = std::move(m);
    }
    return json{{"group", to_json(pa.group)}, {"ring", to_json(pa.ring)}, {"domains", domains}, {"maps", maps}};
}

// Identity entries may be omitted; D_1 = A and alpha_1 = id are implied.
inline PartialAction action_from_json(const json& j, const JsonContext& ctx) {
    PartialAction pa;
    pa.group = group_from_json(ctx.get(j, "group"), ctx.sub("group"));
    pa.ring = ring_from_json(ctx.get(j, "ring"), ctx.sub("ring"));
    const int nb = pa.ring.nblocks();
    pa.domain.assign(static_cast<std::size_t>(pa.group.order), Ideal{});
    pa.blockmap.assign(static_cast<std::size_t>(pa.group.order),
                       std::vector<int>(static_cast<std::size_t>(nb), -1));
    pa.domain[static_cast<std::size_t>(pa.group.identity)] = pa.ring.full_ideal();
    for (int b = 0; b < nb; ++b)
        pa.blockmap[static_cast<std::size_t>(pa.group.identity)][static_cast<std::size_t>(b)] = b;

    const json& jd = ctx.get(j, "domains");
    if (!jd.is_object()) ctx.sub("domains").fail("expected an object keyed by group element index");
    for (auto it = jd.begin(); it != jd.end(); ++it) {
        int g = -1;
        try {
            g = std::stoi(it.key());
        } catch (...) {
            ctx.sub("domains").fail("key '" + it.key() + "' is not a group element index");
        }
        if (g < 0 || g >= pa.group.order) ctx.sub("domains").fail("key '" + it.key() + "' out of range");
        Ideal d;
        for (const auto& v : it.value()) d.support.push_back(ctx.sub("domains").sub(it.key()).as_int(v));
        try {
            pa.ring.check_ideal(d);
        } catch (const Error& e) {
            ctx.sub("domains").sub(it.key()).fail(e.what());
        }
        if (g == pa.group.identity && !(d == pa.ring.full_ideal()))
            ctx.sub("domains").sub(it.key()).fail("the identity's domain must be the full ring");
        pa.domain[static_cast<std::size_t>(g)] = std::move(d);
    }
    const json& jm = ctx.get(j, "maps");
    if (!jm.is_object()) ctx.sub("maps").fail("expected an object keyed by group element index");
    for (auto it = jm.begin(); it != jm.end(); ++it) {
        int g = -1;
        try {
            g = std::stoi(it.key());
        } catch (...) {
            ctx.sub("maps").fail("key '" + it.key() + "' is not a group element index");
        }
        if (g < 0 || g >= pa.group.order) ctx.sub("maps").fail("key '" + it.key() + "' out of range");
        if (g == pa.group.identity) continue;  // implied identity map
        if (!it.value().is_object()) ctx.sub("maps").sub(it.key()).fail("expected an object of block pairs");
        for (auto bt = it.value().begin(); bt != it.value().end(); ++bt) {
            int b = -1;
            try {
                b = std::stoi(bt.key());
            } catch (...) {
                ctx.sub("maps").sub(it.key()).fail("block key '" + bt.key() + "' is not an index");
            }
            const int img = ctx.sub("maps").sub(it.key()).as_int(bt.value());
            if (b < 0 || b >= nb || img < 0 || img >= nb)
                ctx.sub("maps").sub(it.key()).fail("block index out of range");
            pa.blockmap[static_cast<std::size_t>(g)][static_cast<std::size_t>(b)] = img;
        }
    }
    return pa;
}

inline PartialAction load_action(const std::string& path) {
    return action_from_json(load_json_file(path), JsonContext(path, ""));
}

// ---- cochain: {"degree": n, "values": {"x1,x2": [..], ...}}, degree 0 key "" ----

inline std::string tuple_key(const Tuple& xs) {
    std::string k;
    for (std::size_t i = 0; i < xs.size(); ++i) k += (i ? "," : "") + std::to_string(xs[i]);
    return k;
}

inline json to_json(const PartialAction& pa, const Cochain& f) {
    json values = json::object();
    for (std::size_t idx = 0; idx < f.values.size(); ++idx)
        values[tuple_key(index_tuple(idx, f.degree, pa.group.order))] = f.values[idx].residues;
    return json{{"degree", f.degree}, {"values", values}};
}

inline json unit_cochain_to_json(const ProductRing& ring, const FiniteGroup& g, const UnitCochain& f) {
    (void)ring;
    json values = json::object();
    for (std::size_t idx = 0; idx < f.values.size(); ++idx)
        values[tuple_key(index_tuple(idx, f.degree, g.order))] = f.values[idx].residues;
    return json{{"degree", f.degree}, {"values", values}};
}

inline Cochain cochain_from_json(const json& j, const PartialAction& pa, const JsonContext& ctx) {
    Cochain f;
    f.degree = ctx.as_int(ctx.get(j, "degree"));
    if (f.degree < 0 || f.degree > 4) ctx.sub("degree").fail("degree must be between 0 and 4");
    const json& jv = ctx.get(j, "values");
    if (!jv.is_object()) ctx.sub("values").fail("expected an object keyed by comma-joined tuples");
    f.values.assign(cochain_size(pa, f.degree), pa.ring.zero());
    std::vector<char> seen(f.values.size(), 0);
    for (auto it = jv.begin(); it != jv.end(); ++it) {
        Tuple xs;
        if (!it.key().empty()) {
            std::stringstream ss(it.key());
            std::string part;
            while (std::getline(ss, part, ',')) {
                try {
                    xs.push_back(std::stoi(part));
                } catch (...) {
                    ctx.sub("values").fail("key '" + it.key() + "' is not a tuple of indices");
                }
            }
        }
        if (static_cast<int>(xs.size()) != f.degree)
            ctx.sub("values").fail("key '" + it.key() + "' has wrong arity for degree " +
                                   std::to_string(f.degree));
        for (int x : xs)
            if (x < 0 || x >= pa.group.order) ctx.sub("values").fail("key '" + it.key() + "' out of range");
        const std::size_t idx = tuple_index(xs, pa.group.order);
        f.values[idx] = element_from_json(it.value(), pa.ring, ctx.sub("values").sub(it.key()));
        seen[idx] = 1;
    }
    for (std::size_t idx = 0; idx < seen.size(); ++idx)
        if (!seen[idx])
            ctx.sub("values").fail("missing value for tuple '" +
                                   tuple_key(index_tuple(idx, f.degree, pa.group.order)) + "'");
    return f;
}

inline Cochain load_cochain(const std::string& path, const PartialAction& pa) {
    return cochain_from_json(load_json_file(path), pa, JsonContext(path, ""));
}

// ---- reports ----

inline json to_json(const ActionReport& rep) {
    json issues = json::array();
    for (const auto& i : rep.issues)
        issues.push_back(json{{"axiom", i.axiom}, {"g", i.g}, {"h", i.h}, {"detail", i.detail}});
    return json{{"valid", rep.valid()}, {"issues", issues}};
}

inline json envelope_to_json(const EnvelopingAction& env) {
    json beta = json::object();
    for (int x = 0; x < env.envelope.group.order; ++x) {
        std::vector<int> perm;
        for (int j = 0; j < env.transversal_size(); ++j) perm.push_back(env.envelope.map_block(x, j));
        beta[std::to_string(x)] = perm;
    }
    return json{{"ring", to_json(env.envelope.ring)},
                {"beta", beta},
                {"transversal", env.td.transversal},
                {"stabilizer", env.td.stabilizer},
                {"embed", env.embed}};
}

inline json to_json(const GlobalizeResult& res) {
    json orbits = json::array();
    for (const auto& o : res.orbits) {
        json jo{{"blocks", o.blocks},
                {"envelope", envelope_to_json(o.env)},
                {"u", unit_cochain_to_json(o.env.envelope.ring, o.env.envelope.group, o.u)},
                {"checks",
                 {{"global_cocycle", o.checks.global_cocycle},
                  {"restriction", o.checks.restriction},
                  {"germ", o.checks.germ}}}};
        orbits.push_back(std::move(jo));
    }
    json rep{{"degree", res.degree},
             {"orbits", orbits},
             {"checks",
              {{"global_cocycle", res.ok()}, {"restriction", res.ok()}, {"germ", res.ok()}}}};
    if (res.orbits.size() == 1) {
        rep["envelope"] = orbits.front()["envelope"];
        rep["u"] = orbits.front()["u"];
        rep["checks"] = orbits.front()["checks"];
    }
    return rep;
}

inline json to_json(const IsoCheckReport& rep) {
    json orbits = json::array();
    for (const auto& o : rep.orbits) {
        json degrees = json::array();
        for (const auto& d : o.degrees)
            degrees.push_back(json{{"n", d.n},
                                   {"partial_factors", d.partial_factors},
                                   {"global_factors", d.global_factors},
                                   {"equal", d.equal}});
        orbits.push_back(json{{"blocks", o.blocks}, {"degrees", degrees}, {"functorial", o.functorial}});
    }
    return json{{"orbits", orbits}, {"ok", rep.ok()}};
}

// Sorted keys and fixed spacing make reports byte-stable for golden tests.
inline std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pcoh
