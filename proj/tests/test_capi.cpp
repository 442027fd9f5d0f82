#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epco/capi.h"

#include <json.hpp>

#include <string>

using nlohmann::json;

namespace {

constexpr const char* kEpk21 = R"(
schema_version = 1

[construct]
builder = "epk"
a = 2
b = 1
)";

constexpr const char* kEpk23 = R"(
schema_version = 1

[construct]
builder = "epk"
a = 2
b = 3
)";

// the bouquet system of epk(2,1) with generating values swapped to (1,0);
// same signature, so cohomology-conjugate to epk(2,1)
constexpr const char* kSwappedXi = R"(
schema_version = 1

[group]
kind = "integers"

[graph]
vertices = ["v"]

[[graph.edges]]
name = "e0"
range = "v"
source = "v"

[[graph.edges]]
name = "e1"
range = "v"
source = "v"

[action]
vertices = [[0]]
edges = [[1, 0]]

[cocycle]
target = "integers"
xi = [["1", "0"]]
)";

// F0 = {s0, s1, omega}, F1 = {s0, s1}, Z2 swapping the strings, tautological
// cocycle phi(g, x) = g
constexpr const char* kStrings = R"(
schema_version = 1

[group]
kind = "cyclic:2"

[graph]
vertices = ["s0", "s1", "omega"]

[[graph.edges]]
name = "s0"
range = "s0"
source = "omega"

[[graph.edges]]
name = "s1"
range = "s1"
source = "omega"

[action]
elements = ["0", "1"]
vertices = [[0, 1, 2], [1, 0, 2]]
edges = [[0, 1], [1, 0]]

[cocycle]
target = "cyclic:2"
table = [["0", "0"], ["1", "1"]]
)";

// like kStrings but with the constant-identity cocycle: the vertex condition
// phi(g,e).s(e) = g.s(e) still holds (omega is fixed), while an action that
// moves sources breaks it -- see the "validate failure" case below
constexpr const char* kMovedSources = R"(
schema_version = 1

[group]
kind = "cyclic:2"

[graph]
vertices = ["a", "b"]

[[graph.edges]]
name = "e"
range = "a"
source = "a"

[[graph.edges]]
name = "f"
range = "b"
source = "b"

[action]
elements = ["0", "1"]
vertices = [[0, 1], [1, 0]]
edges = [[0, 1], [1, 0]]

[cocycle]
target = "cyclic:2"
table = [["0", "0"], ["0", "0"]]
)";

struct Handle {
    epc_system* sys = nullptr;
    json load_report;

    explicit Handle(const char* toml) {
        char* rep = nullptr;
        REQUIRE(epc_system_from_toml(toml, &sys, &rep) == 0);
        load_report = json::parse(rep);
        epc_string_free(rep);
    }
    ~Handle() { epc_system_free(sys); }
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
};

// runs a C API call and returns {status, parsed JSON}
template <typename F>
std::pair<int, json> call(F&& f) {
    char* rep = nullptr;
    int status = f(&rep);
    REQUIRE(rep != nullptr);
    json j = json::parse(rep);
    epc_string_free(rep);
    return {status, j};
}

} // namespace

TEST_CASE("system loading and summaries") {
    Handle epk(kEpk21);
    CHECK(epk.load_report["system"]["vertices"] == 1);
    CHECK(epk.load_report["system"]["edges"] == 2);
    CHECK(epk.load_report["system"]["group"] == "integers");
    CHECK(epk.load_report["system"]["builder"]["name"] == "epk");

    Handle strings(kStrings);
    CHECK(strings.load_report["system"]["vertices"] == 3);
    CHECK(strings.load_report["system"]["group"] == "cyclic:2");
    CHECK_FALSE(strings.load_report["system"].contains("builder"));
}

TEST_CASE("malformed input is a usage error") {
    epc_system* sys = nullptr;
    char* rep = nullptr;

    CHECK(epc_system_from_toml("schema_version = 1\n[construct\n", &sys, &rep) == 2);
    CHECK(json::parse(rep).contains("error"));
    epc_string_free(rep);
    rep = nullptr;

    // schema_version is mandatory
    CHECK(epc_system_from_toml("[construct]\nbuilder = \"epk\"\na = 2\nb = 1\n", &sys,
                               &rep) == 2);
    CHECK(json::parse(rep)["error"].get<std::string>().find("schema_version") !=
          std::string::npos);
    epc_string_free(rep);
    rep = nullptr;

    CHECK(epc_system_from_toml(
              "schema_version = 1\n[construct]\nbuilder = \"nope\"\n", &sys, &rep) == 2);
    epc_string_free(rep);
}

TEST_CASE("validate") {
    Handle epk(kEpk21);
    auto [st, j] = call([&](char** r) { return epc_validate(epk.sys, 0, r); });
    CHECK(st == 0);
    CHECK(j["pass"] == true);
    CHECK(j["violations"].empty());

    // constant-identity cocycle while the action moves edge sources: the
    // vertex condition fails and the violations name a witness
    Handle moved(kMovedSources);
    auto [st2, j2] = call([&](char** r) { return epc_validate(moved.sys, 0, r); });
    CHECK(st2 == 1);
    CHECK(j2["pass"] == false);
    CHECK_FALSE(j2["violations"].empty());

    // the tautological strings cocycle satisfies even the strong condition
    Handle strings(kStrings);
    CHECK(call([&](char** r) { return epc_validate(strings.sys, 0, r); }).first == 0);
    CHECK(call([&](char** r) { return epc_validate(strings.sys, 1, r); }).first == 0);

    // the constant-identity cocycle on the same system: the sources sit at
    // the fixed point omega, so the weak condition holds, while the strong
    // one fails wherever the action moves a vertex
    std::string trivial_phi = kStrings;
    auto pos = trivial_phi.find("[[\"0\", \"0\"], [\"1\", \"1\"]]");
    REQUIRE(pos != std::string::npos);
    trivial_phi.replace(pos, 25, "[[\"0\", \"0\"], [\"0\", \"0\"]]");
    Handle weak_only(trivial_phi.c_str());
    CHECK(call([&](char** r) { return epc_validate(weak_only.sys, 0, r); }).first == 0);
    CHECK(call([&](char** r) { return epc_validate(weak_only.sys, 1, r); }).first == 1);
}

TEST_CASE("classify") {
    Handle epk(kEpk23);
    auto [st, j] = call([&](char** r) { return epc_classify(epk.sys, r); });
    CHECK(st == 0);
    CHECK(j["signature"] == "3");
    CHECK(j["transitive_on_edges"] == true);
    CHECK(j["epk"]["d"] == 1);

    Handle strings(kStrings);
    auto [st2, j2] = call([&](char** r) { return epc_classify(strings.sys, r); });
    CHECK(st2 == 0);
    CHECK(j2["edge_orbits"].size() == 1);
    CHECK_FALSE(j2.contains("epk"));
}

TEST_CASE("decompose") {
    Handle epk42("schema_version = 1\n[construct]\nbuilder = \"epk\"\na = 4\nb = 2\n");
    auto [st, j] = call([&](char** r) { return epc_decompose(epk42.sys, r); });
    CHECK(st == 0);
    CHECK(j["pass"] == true);
    CHECK(j["d"] == 2);
    CHECK(j["component"]["a"] == 2);
    CHECK(j["component"]["b"] == 1);
    REQUIRE(j["orbits"].size() == 2);
    CHECK(j["orbits"][0]["points"] == json::array({0, 2}));
    CHECK(j["orbits"][1]["points"] == json::array({1, 3}));
    for (const auto& orb : j["orbits"]) CHECK(orb["verified"] == true);

    // only builder-created systems carry the decomposition data
    Handle strings(kStrings);
    CHECK(call([&](char** r) { return epc_decompose(strings.sys, r); }).first == 2);
}

TEST_CASE("extend") {
    Handle epk(kEpk21);
    auto [st, j] = call([&](char** r) { return epc_extend(epk.sys, 3, r); });
    CHECK(st == 0);
    CHECK(j["cocycle_identity"] == true);
    CHECK(j["paths"] == 1 + 2 + 4 + 8);

    CHECK(call([&](char** r) { return epc_extend(epk.sys, 99, r); }).first == 2);
}

TEST_CASE("compare") {
    Handle a(kEpk21);
    Handle b(kEpk23);
    auto [st, j] = call([&](char** r) { return epc_compare(a.sys, b.sys, 4, r); });
    CHECK(st == 1);
    CHECK(j["conjugate"] == false);
    CHECK(j["method"] == "transitive_conjugacy");

    // swapped generating values keep the signature: conjugate, with a witness
    Handle c(kSwappedXi);
    auto [st2, j2] = call([&](char** r) { return epc_compare(a.sys, c.sys, 4, r); });
    CHECK(st2 == 0);
    CHECK(j2["conjugate"] == true);
    CHECK(j2["theta"].size() == 2);
    CHECK(j2["psi"].size() == 2);

    Handle strings(kStrings);
    CHECK(call([&](char** r) { return epc_compare(a.sys, strings.sys, 4, r); }).first == 2);

    // identical finite-group systems on the same graph: brute force
    Handle strings2(kStrings);
    auto [st3, j3] =
        call([&](char** r) { return epc_compare(strings.sys, strings2.sys, 2, r); });
    CHECK(st3 == 0);
    CHECK(j3["method"] == "brute_force");
}

TEST_CASE("normalize") {
    Handle epk(kEpk21);
    auto [st, j] = call([&](char** r) { return epc_normalize(epk.sys, "u(1) s(e0)", r); });
    CHECK(st == 0);
    CHECK(j["zero"] == false);
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["mu"] == "e1");
    CHECK(j["terms"][0]["g"] == "0");
    CHECK(j["terms"][0]["coefficient"] == "1");

    auto [st2, j2] = call([&](char** r) { return epc_normalize(epk.sys, "s*(e0) s(e1)", r); });
    CHECK(st2 == 0);
    CHECK(j2["zero"] == true);

    CHECK(call([&](char** r) { return epc_normalize(epk.sys, "s(nope)", r); }).first == 2);
}

TEST_CASE("fock check") {
    Handle epk(kEpk21);
    CHECK(call([&](char** r) {
              return epc_fock_check(epk.sys, "u(1) s(e0)", 6, 3, 2, r);
          }).first == 0);
    CHECK(call([&](char** r) {
              return epc_fock_check(epk.sys, "u(1) s(e0)", 99, 3, 1, r);
          }).first == 2);
}

TEST_CASE("matrix relation check") {
    Handle strings(kStrings);
    // P_v = E_vv, S_x = E_{x,omega}, U swaps the string vertices
    const char* family = R"({
        "dim": 3,
        "P": [[[1,0],[0,0],[0,0], [0,0],[0,0],[0,0], [0,0],[0,0],[0,0]],
              [[0,0],[0,0],[0,0], [0,0],[1,0],[0,0], [0,0],[0,0],[0,0]],
              [[0,0],[0,0],[0,0], [0,0],[0,0],[0,0], [0,0],[0,0],[1,0]]],
        "S": [[[0,0],[0,0],[1,0], [0,0],[0,0],[0,0], [0,0],[0,0],[0,0]],
              [[0,0],[0,0],[0,0], [0,0],[0,0],[1,0], [0,0],[0,0],[0,0]]],
        "U": [[[0,0],[1,0],[0,0], [1,0],[0,0],[0,0], [0,0],[0,0],[1,0]]]
    })";
    auto [st, j] = call(
        [&](char** r) { return epc_check_matrices(strings.sys, family, "ck", 1e-9, r); });
    CHECK(st == 0);
    CHECK(j["pass"] == true);
    CHECK(j["max_deviation"].get<double>() <= 1e-9);
    CHECK(call([&](char** r) {
              return epc_check_matrices(strings.sys, family, "toeplitz", 1e-9, r);
          }).first == 0);

    CHECK(call([&](char** r) {
              return epc_check_matrices(strings.sys, family, "nope", 1e-9, r);
          }).first == 2);
    CHECK(call([&](char** r) {
              return epc_check_matrices(strings.sys, "{\"dim\": 2}", "ck", 1e-9, r);
          }).first == 2);
}

TEST_CASE("selftest") {
    Handle epk(kEpk21);
    auto [st, j] = call([&](char** r) { return epc_selftest(epk.sys, 2, 10, 7, r); });
    CHECK(st == 0);
    CHECK(j["pass"] == true);
    CHECK(j["failures"].empty());

    Handle strings(kStrings);
    CHECK(call([&](char** r) { return epc_selftest(strings.sys, 2, 10, 7, r); }).first == 0);
}

TEST_CASE("TOML round trip") {
    Handle epk(kEpk21);
    char* toml = nullptr;
    REQUIRE(epc_system_to_toml(epk.sys, &toml) == 0);
    std::string text = toml;
    epc_string_free(toml);
    CHECK(text.find("[construct]") == std::string::npos);  // explicit schema

    Handle again(text.c_str());
    CHECK(again.load_report["system"]["edges"] == 2);
    auto [st, j] = call([&](char** r) { return epc_compare(epk.sys, again.sys, 2, r); });
    CHECK(st == 0);

    // a finite-group system round-trips through the table schema
    Handle strings(kStrings);
    REQUIRE(epc_system_to_toml(strings.sys, &toml) == 0);
    Handle strings2(toml);
    epc_string_free(toml);
    CHECK(strings2.load_report["system"]["vertices"] == 3);
    CHECK(call([&](char** r) { return epc_validate(strings2.sys, 0, r); }).first == 0);
}

TEST_CASE("null arguments are usage errors") {
    CHECK(epc_system_from_toml(nullptr, nullptr, nullptr) == 2);
    CHECK(epc_validate(nullptr, 0, nullptr) == 2);
    char* rep = nullptr;
    CHECK(epc_classify(nullptr, &rep) == 2);
    CHECK(json::parse(rep).contains("error"));
    epc_string_free(rep);
}
