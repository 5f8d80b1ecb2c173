#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcoh/io.hpp"
#include "testutil.hpp"

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

int g_counter = 0;

std::string temp_file(const std::string& tag) {
    return (std::filesystem::temp_directory_path() /
            ("pcoh_cli_" + tag + "_" + std::to_string(g_counter++) + ".json"))
        .string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    CmdResult r;
    const std::string out_path = temp_file("out");
    const std::string cmd = std::string(PCOH_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

std::string fx(const std::string& name) { return testutil::fixture_path(name); }

}  // namespace

TEST_CASE("shipped fixtures match their programmatic constructions") {
    const auto same = [](const pcoh::PartialAction& a, const pcoh::PartialAction& b) {
        return a.group == b.group && a.ring.blocks == b.ring.blocks && a.domain == b.domain &&
               a.blockmap == b.blockmap;
    };
    CHECK(same(pcoh::load_action(fx("fixture1_action.json")), testutil::fixture1()));
    CHECK(same(pcoh::load_action(fx("fixture2_action.json")), testutil::fixture2()));
    CHECK(same(pcoh::load_action(fx("fixture3_action.json")), testutil::fixture3()));

    // cochain JSON round-trip through the serializer
    const pcoh::PartialAction pa = testutil::fixture1();
    const pcoh::Cochain w = pcoh::load_cochain(fx("fixture1_w1.json"), pa);
    REQUIRE(pcoh::is_cocycle(pa, w));
    const pcoh::json j = pcoh::to_json(pa, w);
    CHECK(pcoh::cochain_from_json(j, pa, pcoh::JsonContext("mem", "")) == w);
}

TEST_CASE("validate") {
    const CmdResult ok = run_cli("validate " + fx("fixture1_action.json"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"valid\": true") != std::string::npos);

    // broken (iii'): g^2 acts as the swap instead of the identity
    const std::string bad = temp_file("bad_action");
    {
        std::ofstream f(bad);
        f << R"({"group": {"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
                 "ring": {"blocks": [3,3]},
                 "domains": {"0":[0,1],"1":[0,1],"2":[0,1],"3":[0,1]},
                 "maps": {"1": {"0":1,"1":0}, "2": {"0":1,"1":0}, "3": {"0":1,"1":0}}})";
    }
    const CmdResult invalid = run_cli("validate " + bad);
    CHECK(invalid.exit_code == 1);
    CHECK(invalid.out.find("\"valid\": false") != std::string::npos);

    // verify refuses the same file as malformed input
    const CmdResult refused = run_cli("verify " + bad + " --trials 2 --degrees 1");
    CHECK(refused.exit_code == 2);
    std::remove(bad.c_str());
}

TEST_CASE("malformed inputs exit 2 and name the file") {
    const std::string junk = temp_file("junk");
    {
        std::ofstream f(junk);
        f << "{ not json";
    }
    CHECK(run_cli("validate " + junk).exit_code == 2);
    std::remove(junk.c_str());

    CHECK(run_cli("validate /nonexistent/action.json").exit_code == 2);

    // a table that is not a group
    const std::string notgroup = temp_file("notgroup");
    {
        std::ofstream f(notgroup);
        f << R"({"group": {"order": 2, "table": [[0,1],[1,1]]}, "ring": {"blocks": [5]},
                 "domains": {}, "maps": {}})";
    }
    CHECK(run_cli("validate " + notgroup).exit_code == 2);
    std::remove(notgroup.c_str());
}

TEST_CASE("check-cocycle and delta pipe") {
    CHECK(run_cli("check-cocycle " + fx("fixture1_action.json") + " " + fx("fixture1_w1.json")).exit_code == 0);

    const std::string df = temp_file("delta_out");
    CHECK(run_cli("delta " + fx("fixture1_action.json") + " " + fx("fixture1_w1.json") +
                  " --output " + df)
              .exit_code == 0);
    // δf is always a cocycle
    CHECK(run_cli("check-cocycle " + fx("fixture1_action.json") + " " + df).exit_code == 0);
    std::remove(df.c_str());
}

TEST_CASE("coboundary-witness and cohomologous") {
    // the nontrivial FIXTURE-3 cocycle f(s) = 4 is not a coboundary
    const std::string f = temp_file("f3_cocycle");
    {
        std::ofstream o(f);
        o << R"({"degree": 1, "values": {"0": [1], "1": [4]}})";
    }
    const CmdResult no = run_cli("coboundary-witness " + fx("fixture3_action.json") + " " + f);
    CHECK(no.exit_code == 1);
    CHECK(no.out.find("\"witness\": null") != std::string::npos);

    const std::string e1 = temp_file("f3_identity");
    {
        std::ofstream o(e1);
        o << R"({"degree": 1, "values": {"0": [1], "1": [1]}})";
    }
    CHECK(run_cli("cohomologous " + fx("fixture3_action.json") + " " + f + " " + e1).exit_code == 1);
    CHECK(run_cli("cohomologous " + fx("fixture3_action.json") + " " + f + " " + f).exit_code == 0);
    std::remove(f.c_str());
    std::remove(e1.c_str());
}

TEST_CASE("cohomology with oracle") {
    const CmdResult r = run_cli("cohomology " + fx("fixture3_action.json") + " --n 1 --oracle");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"invariant_factors\": [\n    2\n  ]") != std::string::npos);
    CHECK(r.out.find("\"oracle_agrees\": true") != std::string::npos);
}

TEST_CASE("globalize and compare") {
    const CmdResult g =
        run_cli("globalize " + fx("fixture1_action.json") + " " + fx("fixture1_w1.json"));
    CHECK(g.exit_code == 0);
    CHECK(g.out.find("\"global_cocycle\": true") != std::string::npos);
    CHECK(g.out.find("\"restriction\": true") != std::string::npos);
    CHECK(g.out.find("\"germ\": true") != std::string::npos);

    const CmdResult c =
        run_cli("compare " + fx("fixture1_action.json") + " " + fx("fixture1_w1.json"));
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("\"verified\": true") != std::string::npos);
}

TEST_CASE("determinism: identical inputs and seed give byte-identical reports") {
    const std::string args = "verify " + fx("fixture1_action.json") + " --seed 42 --trials 5 --degrees 1,2";
    const CmdResult a = run_cli(args);
    const CmdResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("golden reports") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"validate " + fx("fixture1_action.json"), "fixture1_validate.golden.json"},
        {"validate " + fx("fixture2_action.json"), "fixture2_validate.golden.json"},
        {"validate " + fx("fixture3_action.json"), "fixture3_validate.golden.json"},
        {"cohomology " + fx("fixture1_action.json") + " --n 1 --oracle", "fixture1_cohomology_n1.golden.json"},
        {"cohomology " + fx("fixture2_action.json") + " --n 1 --oracle", "fixture2_cohomology_n1.golden.json"},
        {"cohomology " + fx("fixture3_action.json") + " --n 1 --oracle", "fixture3_cohomology_n1.golden.json"},
        {"globalize " + fx("fixture1_action.json") + " " + fx("fixture1_w1.json"),
         "fixture1_globalize_w1.golden.json"},
    };
    for (const auto& [args, golden] : cases) {
        INFO(args);
        const CmdResult r = run_cli(args);
        CHECK(r.exit_code == 0);
        CHECK(r.out == slurp(fx("golden/" + golden)));
    }
}
