#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "chindex/checks.hpp"
#include "chindex/cli.hpp"

using namespace chindex;

namespace {

struct Argv {
    explicit Argv(std::vector<std::string> args) : storage(std::move(args)) {
        storage.insert(storage.begin(), "chindex");
        for (const auto& s : storage) pointers.push_back(s.c_str());
    }
    int argc() const { return static_cast<int>(pointers.size()); }
    const char* const* argv() const { return pointers.data(); }
    std::vector<std::string> storage;
    std::vector<const char*> pointers;
};

RunConfig parse(std::vector<std::string> args) {
    Argv a(std::move(args));
    return parse_args(a.argc(), a.argv());
}

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    Argv a(std::move(args));
    std::ostringstream out, err;
    const int code = run_cli(a.argc(), a.argv(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_args examples") {
    const auto q = parse({"--field", "Q", "--p", "5", "--r", "3"});
    CHECK(q.p == 5);
    CHECK(q.r == 3);
    CHECK(build_field(q).G().size() == 1);

    const auto f5 = parse({"--conductor", "5", "--subgroup", "4", "--p", "3", "--r", "3"});
    const FieldSpec F = build_field(f5);
    CHECK(F.conductor == 5);
    CHECK(F.G().size() == 2);

    CHECK_THROWS_WITH_AS(parse({"--p", "2", "--r", "3", "--field", "Q"}), "p must be an odd prime", UsageError);
}

TEST_CASE("field shorthands and search flags") {
    const auto rc = parse({"--field", "real-cyclotomic:13", "--p", "3", "--r", "5", "--ell-bound", "50000", "--n-max", "3",
                           "--primes-per-level", "2", "--window", "1", "--char", "2"});
    CHECK(build_field(rc).G().size() == 6);
    CHECK(rc.search.ell_bound == 50000);
    CHECK(rc.search.n_max == 3);
    CHECK(rc.search.primes_per_level == 2);
    CHECK(rc.search.window == 1);
    REQUIRE(rc.character.has_value());
    CHECK(*rc.character == std::vector<u64>{2});
    CHECK(select_classes(build_field(rc), rc).size() == 1);
    CHECK(select_classes(build_field(rc), parse({"--field", "real-cyclotomic:13", "--p", "3", "--r", "5", "--char", "all"})).size() == 4);
}

TEST_CASE("usage errors") {
    const std::vector<std::vector<std::string>> bad{
        {"--p", "3", "--r", "3"},                                          // no field
        {"--p", "3", "--field", "Q"},                                      // no r
        {"--r", "3", "--field", "Q"},                                      // no p
        {"--p", "9", "--r", "3", "--field", "Q"},                          // composite p
        {"--p", "3", "--r", "4", "--field", "Q"},                          // even r
        {"--p", "3", "--r", "1", "--field", "Q"},                          // r too small
        {"--p", "3", "--r", "3", "--field", "Q", "--conductor", "5"},      // conflict
        {"--p", "3", "--r", "3", "--field", "imaginary:5"},                // unknown shorthand
        {"--p", "3", "--r", "3", "--conductor", "7", "--subgroup", "2"},   // not totally real
        {"--p", "3", "--r", "3", "--conductor", "6"},                      // 2 mod 4
        {"--p", "3", "--r", "3", "--conductor", "5", "--subgroup", "x"},   // malformed list
        {"--p", "3", "--r", "3", "--field", "Q", "--char", "1,2"},         // wrong vector length
        {"--p", "3", "--r", "3", "--field", "Q", "--window", "0"},
        {"--p", "3", "--r", "3", "--field", "Q", "--primes-per-level", "0"},
        {"--p", "3", "--r", "3", "--field", "Q", "--bogus"},
    };
    for (const auto& args : bad) {
        CAPTURE(args.back());
        CHECK_THROWS_AS(parse(args), UsageError);
        const auto o = run(args);
        CHECK(o.code == 1);
        CHECK(o.err.find("error: ") == 0);
        CHECK(o.out.empty());
    }
}

TEST_CASE("help exits cleanly") {
    const auto o = run({"--help"});
    CHECK(o.code == 0);
    CHECK(o.out.find("--conductor") != std::string::npos);
}

TEST_CASE("JSON report schema") {
    const auto o = run({"--field", "real-cyclotomic:7", "--p", "3", "--r", "3", "--json", "--n-max", "3"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::ordered_json::parse(o.out);
    CHECK(j.at("p") == 3);
    CHECK(j.at("r") == 3);
    CHECK(j.at("field").at("conductor") == 7);
    CHECK(j.at("field").at("subgroup").is_array());
    REQUIRE(j.at("classes").size() == 2);
    for (const auto& c : j.at("classes")) {
        CHECK(c.at("character").at("order").is_number_unsigned());
        CHECK(c.at("character").at("exponents").is_array());
        CHECK(c.at("character").at("qp_degree").is_number_unsigned());
        CHECK(c.at("stabilized").is_boolean());
        // Everything is recomputable from the trail.
        std::optional<unsigned> best;
        for (const auto& rec : c.at("candidates")) {
            const unsigned ire = rec.at("ire"), imav = rec.at("ima");
            CHECK(rec.at("accepted") == (ire < imav));
            if (ire < imav && (!best || ire < *best)) best = ire;
        }
        if (best) {
            CHECK(c.at("upper_bound_valuation") == *best);
            CHECK(c.at("witness").at("ell").is_number_unsigned());
            CHECK(c.at("witness").at("n").is_number_unsigned());
        } else {
            CHECK(c.at("upper_bound_valuation").is_null());
        }
    }
    const std::vector<std::string> keys{"p", "r", "field", "classes"};
    std::vector<std::string> seen;
    for (auto it = j.begin(); it != j.end(); ++it) seen.push_back(it.key());
    CHECK(seen == keys);
}

TEST_CASE("single-class run has one entry") {
    const auto o = run({"--field", "Q", "--p", "5", "--r", "3", "--json"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    REQUIRE(j.at("classes").size() == 1);
    CHECK(j["classes"][0]["upper_bound_valuation"] == 0);
    CHECK(j["classes"][0]["stabilized"] == true);
}

TEST_CASE("no accepted candidates gives null and unstabilized") {
    const auto o = run({"--field", "Q", "--p", "5", "--r", "3", "--json", "--ell-bound", "10"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j["classes"][0]["upper_bound_valuation"].is_null());
    CHECK(j["classes"][0]["witness"].is_null());
    CHECK(j["classes"][0]["stabilized"] == false);
    CHECK(j["classes"][0]["candidates"].empty());
}

TEST_CASE("field block round-trips") {
    for (auto [f, H] : std::vector<std::pair<u64, std::vector<u64>>>{{1, {}}, {5, {4}}, {13, {12}}, {40, {39, 9}}, {15, {14, 4, 11}}}) {
        const FieldSpec F = quotient_structure(f, H, 3);
        const auto j = report_json(F, 3, {});
        const FieldSpec G = field_from_json(nlohmann::json::parse(j.dump()).at("field"), 3);
        CHECK(G.conductor == F.conductor);
        CHECK(G.subgroup == F.subgroup);
        CHECK(G.G().size() == F.G().size());
        for (u64 t = 1; t < F.conductor; ++t)
            if (std::gcd(t, F.conductor) == 1) CHECK(G.G().class_of(t) == F.G().class_of(t));
    }
}

TEST_CASE("output is byte-deterministic and --out matches stdout") {
    const auto path = (std::filesystem::temp_directory_path() / "chindex_cli_test.json").string();
    const std::vector<std::string> args{"--field", "real-cyclotomic:13", "--p", "3", "--r", "5", "--json", "--out", path};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    std::ifstream in(path, std::ios::binary);
    const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(file == a.out);
    const auto b = run(args);
    CHECK(b.out == a.out);
    std::remove(path.c_str());
}

TEST_CASE("table output and I/O errors") {
    const auto t = run({"--field", "Q", "--p", "3", "--r", "3"});
    REQUIRE(t.code == 0);
    CHECK(t.out.find("stabilized") != std::string::npos);
    CHECK(t.out.find("certified upper bound") != std::string::npos);
    const auto bad = run({"--field", "Q", "--p", "3", "--r", "3", "--out", "/nonexistent-dir/report.json"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("/nonexistent-dir/report.json") != std::string::npos);
}

TEST_CASE("check lines") {
    CHECK(format_check({8, "worked example", true, true, "coord=1"}) == "PASS [8] worked example: coord=1");
    CHECK(format_check({9, "experiment", false, false, "none"}) == "FAIL [9] experiment (non-gating): none");
}
