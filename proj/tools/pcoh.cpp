// Batch command-line surface of the engine: parse JSON inputs, run the
// computation or verification suite, emit a machine-readable report.
//
// Exit codes: 0 = success / property holds, 1 = a checked mathematical
// property fails, 2 = malformed input.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcoh/io.hpp"
#include "pcoh/verify.hpp"

namespace {

using pcoh::json;

void emit(const json& report, const std::string& output) {
    const std::string text = pcoh::dump_report(report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw pcoh::InputError("parse-error", output + ": cannot open for writing");
        out << text;
    }
}

pcoh::PartialAction load_valid_action(const std::string& path) {
    const pcoh::PartialAction pa = pcoh::load_action(path);
    const pcoh::ActionReport rep = pcoh::validate(pa);
    if (!rep.valid())
        throw pcoh::InputError("invalid-action",
                               path + ": not a partial action (" + rep.issues.front().axiom + " fails)");
    return pa;
}

std::vector<int> parse_degrees(const std::string& degrees) {
    std::vector<int> out;
    std::stringstream ss(degrees);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const int n = std::stoi(part);
        if (n < 0 || n > 4) throw pcoh::InputError("invalid-parameter", "degrees must be between 0 and 4");
        out.push_back(n);
    }
    if (out.empty()) throw pcoh::InputError("invalid-parameter", "empty degree list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial group cohomology engine"};
    app.require_subcommand(1);

    std::string action_path, cochain_path, cochain2_path, output;
    std::uint64_t seed = 42;
    int trials = 25;
    int degree = 1;
    long long bound = 1LL << 20;
    bool oracle = false;
    std::string degrees = "1,2";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", output, "write the report to a file instead of stdout");
    };

    CLI::App* c_validate = app.add_subcommand("validate", "check the partial action axioms");
    c_validate->add_option("action", action_path)->required();
    add_common(c_validate);

    CLI::App* c_delta = app.add_subcommand("delta", "apply the coboundary map to a cochain");
    c_delta->add_option("action", action_path)->required();
    c_delta->add_option("cochain", cochain_path)->required();
    add_common(c_delta);

    CLI::App* c_check = app.add_subcommand("check-cocycle", "test whether a cochain is a cocycle");
    c_check->add_option("action", action_path)->required();
    c_check->add_option("cochain", cochain_path)->required();
    add_common(c_check);

    CLI::App* c_wit = app.add_subcommand("coboundary-witness", "find ξ with δξ = f");
    c_wit->add_option("action", action_path)->required();
    c_wit->add_option("cochain", cochain_path)->required();
    add_common(c_wit);

    CLI::App* c_coh = app.add_subcommand("cohomologous", "find ξ with f2 = f1 · δξ");
    c_coh->add_option("action", action_path)->required();
    c_coh->add_option("cochain1", cochain_path)->required();
    c_coh->add_option("cochain2", cochain2_path)->required();
    add_common(c_coh);

    CLI::App* c_glob = app.add_subcommand("globalize", "globalize a partial cocycle over its enveloping action");
    c_glob->add_option("action", action_path)->required();
    c_glob->add_option("cocycle", cochain_path)->required();
    add_common(c_glob);

    CLI::App* c_cohlgy = app.add_subcommand("cohomology", "invariant factors of H^n(G,A)");
    c_cohlgy->add_option("action", action_path)->required();
    c_cohlgy->add_option("--n", degree, "degree")->check(CLI::Range(0, 4));
    c_cohlgy->add_flag("--oracle", oracle, "cross-check against the brute-force enumerator");
    c_cohlgy->add_option("--bound", bound, "brute-force bound on |C^n|");
    add_common(c_cohlgy);

    CLI::App* c_cmp = app.add_subcommand("compare", "globalize twice with distinct transversals and verify the witness");
    c_cmp->add_option("action", action_path)->required();
    c_cmp->add_option("cocycle", cochain_path)->required();
    add_common(c_cmp);

    CLI::App* c_verify = app.add_subcommand("verify", "run the theorem suite");
    c_verify->add_option("action", action_path)->required();
    c_verify->add_option("--seed", seed, "random seed");
    c_verify->add_option("--trials", trials, "random trials per property")->check(CLI::PositiveNumber);
    c_verify->add_option("--degrees", degrees, "comma-separated cochain degrees");
    add_common(c_verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_validate->parsed()) {
            const pcoh::PartialAction pa = pcoh::load_action(action_path);
            const pcoh::ActionReport rep = pcoh::validate(pa);
            json out = pcoh::to_json(rep);
            out["command"] = "validate";
            emit(out, output);
            return rep.valid() ? 0 : 1;
        }
        if (c_delta->parsed()) {
            const pcoh::PartialAction pa = load_valid_action(action_path);
            const pcoh::Cochain f = pcoh::load_cochain(cochain_path, pa);
            emit(pcoh::to_json(pa, pcoh::delta(pa, f)), output);
            return 0;
        }
        if (c_check->parsed()) {
            const pcoh::PartialAction pa = load_valid_action(action_path);
            const pcoh::Cochain f = pcoh::load_cochain(cochain_path, pa);
            pcoh::check_cochain(pa, f);
            const bool ok = pcoh::is_cocycle(pa, f);
            emit(json{{"command", "check-cocycle"}, {"degree", f.degree}, {"is_cocycle", ok}}, output);
            return ok ? 0 : 1;
        }
        if (c_wit->parsed()) {
            const pcoh::PartialAction pa = load_valid_action(action_path);
            const pcoh::Cochain f = pcoh::load_cochain(cochain_path, pa);
            const auto xi = pcoh::is_coboundary(pa, f);
            json out{{"command", "coboundary-witness"}, {"is_coboundary", xi.has_value()}};
            out["witness"] = xi ? pcoh::to_json(pa, *xi) : json(nullptr);
            emit(out, output);
            return xi ? 0 : 1;
        }
        if (c_coh->parsed()) {
            const pcoh::PartialAction pa = load_valid_action(action_path);
            const pcoh::Cochain f1 = pcoh::load_cochain(cochain_path, pa);
            const pcoh::Cochain f2 = pcoh::load_cochain(cochain2_path, pa);
            const auto xi = pcoh::cohomologous(pa, f1, f2);
            json out{{"command", "cohomologous"}, {"cohomologous", xi.has_value()}};
            out["witness"] = xi ? pcoh::to_json(pa, *xi) : json(nullptr);
            emit(out, output);
            return xi ? 0 : 1;
        }
        if (c_glob->parsed()) {
            const pcoh::PartialAction pa = load_valid_action(action_path);
            const pcoh::Cochain w = pcoh::load_cochain(cochain_path, pa);
            const pcoh::GlobalizeResult res = pcoh::globalize(pa, w);
            json out = pcoh::to_json(res);
            out["command"] = "globalize";
            emit(out, output);
            return res.ok() ? 0 : 1;
        }
        if (c_cohlgy->parsed()) {
            const pcoh::PartialAction pa = load_valid_action(action_path);
            const std::vector<pcoh::i64> factors = pcoh::cohomology(pa, degree);
            pcoh::i64 order = 1;
            for (pcoh::i64 d : factors) order *= d;
            json out{{"command", "cohomology"},
                     {"n", degree},
                     {"invariant_factors", factors},
                     {"order", order},
                     {"method", "snf"}};
            if (oracle) {
                const std::vector<pcoh::i64> bf = pcoh::cohomology_bruteforce(pa, degree, bound);
                out["oracle_agrees"] = bf == factors;
                if (bf != factors) {
                    emit(out, output);
                    return 1;
                }
            }
            emit(out, output);
            return 0;
        }
        if (c_cmp->parsed()) {
            const pcoh::PartialAction pa = load_valid_action(action_path);
            const pcoh::Cochain w = pcoh::load_cochain(cochain_path, pa);
            const pcoh::GlobalizeResult r1 = pcoh::globalize(pa, w, false);
            const pcoh::GlobalizeResult r2 = pcoh::globalize(pa, w, true);
            json orbits = json::array();
            bool all_ok = true;
            for (std::size_t i = 0; i < r1.orbits.size(); ++i) {
                const pcoh::EnvelopingAction& env = r1.orbits[i].env;
                const pcoh::GlobalCochain v2 = pcoh::reindex_globalization(env, r2.orbits[i].env, r2.orbits[i].u);
                const pcoh::UnitCochain zeta = pcoh::compare_globalizations(env, r1.orbits[i].u, v2);
                bool verified = true;
                if (w.degree >= 1) {
                    const pcoh::Cochain check = pcoh::cochain_mul(
                        env.envelope, pcoh::as_cochain(env.envelope, r1.orbits[i].u),
                        pcoh::delta(env.envelope, pcoh::as_cochain(env.envelope, zeta)));
                    verified = check == pcoh::as_cochain(env.envelope, v2);
                }
                all_ok = all_ok && verified;
                orbits.push_back(json{{"blocks", r1.orbits[i].blocks},
                                      {"transversals",
                                       {env.td.transversal, r2.orbits[i].env.td.transversal}},
                                      {"witness", pcoh::unit_cochain_to_json(env.envelope.ring,
                                                                             env.envelope.group, zeta)},
                                      {"verified", verified}});
            }
            emit(json{{"command", "compare"}, {"orbits", orbits}, {"verified", all_ok}}, output);
            return all_ok ? 0 : 1;
        }
        if (c_verify->parsed()) {
            const pcoh::PartialAction pa = pcoh::load_action(action_path);
            const pcoh::VerifyReport rep = pcoh::run_verify(pa, seed, trials, parse_degrees(degrees));
            json props = json::array();
            for (const auto& p : rep.properties) {
                json jp{{"name", p.name}, {"pass", p.pass}};
                if (!p.pass) jp["counterexample"] = p.counterexample;
                props.push_back(std::move(jp));
            }
            emit(json{{"command", "verify"},
                      {"seed", rep.seed},
                      {"trials", rep.trials},
                      {"degrees", rep.degrees},
                      {"properties", props},
                      {"all_pass", rep.all_pass()}},
                 output);
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const pcoh::InputError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const pcoh::MathError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
