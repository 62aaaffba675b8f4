#include "hopfcyc/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace hopfcyc;
using io::json;

namespace {

const std::string bundles = HOPFCYC_BUNDLE_DIR;

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hopfcyc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string bundle(const std::string& name) { return bundles + "/" + name + ".json"; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes text to a fresh file in the temp directory and returns its path.
std::string temp_bundle(const std::string& tag, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("hopfcyc_cli_" + tag + ".json");
    std::ofstream(p) << text;
    return p.string();
}

json load_json(const std::string& name) { return json::parse(read_file(bundle(name))); }

} // namespace

TEST_CASE("verify exits 0 on every shipped bundle")
{
    for (const auto& n : io::example_names()) {
        INFO(n);
        auto r = run({"verify", bundle(n)});
        CHECK(r.code == 0);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
}

TEST_CASE("corrupted associativity exits 1 with a witness")
{
    json doc = load_json("kc4");
    bool changed = false;
    for (auto& e : doc["hopf"]["mult"]) {
        if (e[0] == 1 && e[1] == 1 && e[2] == 2) {
            e[3] = "2";
            changed = true;
        }
    }
    REQUIRE(changed);
    auto r = run({"verify", temp_bundle("assoc", doc.dump())});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  hopf: algebra: associativity [") != std::string::npos);

    auto j = json::parse(run({"verify", temp_bundle("assoc", doc.dump()), "--json"}).out);
    CHECK(j["exit_code"] == 1);
    bool witnessed = false;
    for (const auto& c : j["verification"][0]["checks"]) {
        if (c["name"] == "algebra: associativity") witnessed = !c["passed"].get<bool>() && !c["witness"].get<std::string>().empty();
    }
    CHECK(witnessed);
}

TEST_CASE("parse errors exit 4")
{
    json doc = load_json("kc2");
    doc["hopf"].erase("antipode_inv");
    auto r = run({"verify", temp_bundle("noinv", doc.dump()), "--json"});
    CHECK(r.code == 4);
    CHECK(json::parse(r.out)["error"].get<std::string>().find("hopf: missing section \"antipode_inv\"") != std::string::npos);

    auto bad = run({"verify", temp_bundle("syntax", "{\n  \"hopf\": {\n    \"dim\": 2,,\n  }\n}\n")});
    CHECK(bad.code == 4);
    CHECK(bad.out.find("line 3") != std::string::npos);

    json range = load_json("kc2");
    range["hopf"]["unit"] = json::array({json::array({5, "1"})});
    CHECK(run({"verify", temp_bundle("range", range.dump())}).code == 4);

    json rat = load_json("kc2");
    rat["hopf"]["unit"] = json::array({json::array({0, "1/0"})});
    CHECK(run({"verify", temp_bundle("rat", rat.dump())}).code == 4);

    CHECK(run({"verify", bundles + "/does-not-exist.json"}).code == 4);
    CHECK(run({"homology", bundle("kc2"), "--object", "W"}).code == 4);
    CHECK(run({"frobnicate"}).code == 4);
    CHECK(run({"emit-example", "nope"}).code == 4);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("a bad coideal is an axiom failure")
{
    json doc = load_json("fc4-c2");
    doc["coideal_basis"] = json::array({json::array({json::array({0, "1"})})});
    auto r = run({"verify", temp_bundle("coideal", doc.dump())});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  coideal") != std::string::npos);
}

TEST_CASE("non-Galois bundles exit 2 for the coring objects")
{
    auto r = run({"homology", bundle("s3-points-c2"), "--json"});
    CHECK(r.code == 2);
    auto j = json::parse(r.out);
    CHECK(j["rank_deficit"] == 1);
    CHECK(run({"homology", bundle("s3-points"), "--object", "Yhopf"}).code == 2);
    // Z only needs the invariants, so it is still available.
    auto z = run({"homology", bundle("s3-points"), "--object", "Z", "--json"});
    CHECK(z.code == 0);
    CHECK(json::parse(z.out)["homology"]["objects"][0]["hc"] == json::array({3, 0, 3}));
}

TEST_CASE("degree cap and ambient bound")
{
    CHECK(run({"homology", bundle("kc2"), "--cap", "5"}).code == 3);
    CHECK(run({"homology", bundle("kc2"), "--cap", "0"}).code == 4);
    CHECK(run({"homology", bundle("ks3"), "--cap", "4", "--ambient-bound", "1000"}).code == 3);
    auto r = run({"homology", bundle("kc2"), "--cap", "5", "--ambient-bound", "100000", "--object", "Z", "--json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["homology"]["objects"][0]["hc"] == json::array({2, 0, 2, 0, 2}));
}

TEST_CASE("homology over all objects agrees")
{
    for (const auto& name : {"kc2", "fc4-c2"}) {
        INFO(name);
        auto r = run({"homology", bundle(name), "--json"});
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out)["homology"];
        REQUIRE(j["objects"].size() == 4);
        for (const auto& o : j["objects"]) {
            CHECK(o["hh"] == j["objects"][0]["hh"]);
            CHECK(o["hc"] == j["objects"][0]["hc"]);
            CHECK(o["cyclic_identities"]["ok"] == true);
        }
        CHECK(j["comparison"]["ok"] == true);
    }
    auto j = json::parse(run({"homology", bundle("fc4-c2"), "--json"}).out);
    CHECK(j["homology"]["objects"][0]["hc"] == json::array({4, 0, 4}));
    CHECK(j["homology"]["objects"][3]["hp_even"] == 4);
}

TEST_CASE("reports are deterministic")
{
    for (const auto& cmd : {"verify", "sayd", "homology"}) {
        auto a = run({cmd, bundle("h4"), "--json"});
        auto b = run({cmd, bundle("h4"), "--json"});
        CHECK(a.out == b.out);
        CHECK(run({cmd, bundle("h4")}).out == run({cmd, bundle("h4")}).out);
    }
}

TEST_CASE("sayd command")
{
    auto r = json::parse(run({"sayd", bundle("s3-points"), "--json"}).out)["sayd"];
    CHECK(r["dim_M"] == 6);
    CHECK(r["brylinski"]["fixed_pairs"] == 6);
    CHECK(r["brylinski"]["match"] == true);

    auto c2 = run({"sayd", bundle("kc2"), "--json"});
    CHECK(c2.code == 0);
    CHECK(json::parse(c2.out)["sayd"]["jara_stefan"]["ok"] == true);

    auto h4 = run({"sayd", bundle("h4"), "--json"});
    CHECK(h4.code == 0);
    CHECK(json::parse(h4.out)["sayd"]["report"]["ok"] == true);
}

TEST_CASE("emit-example round trips")
{
    for (const auto& n : io::example_names()) {
        INFO(n);
        auto r = run({"emit-example", n});
        REQUIRE(r.code == 0);
        CHECK(r.out == read_file(bundle(n)));
        auto b = io::parse_bundle(r.out);
        CHECK(io::bundle_to_json(b).dump(2) + "\n" == r.out);
    }
}
