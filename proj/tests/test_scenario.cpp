#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "weyl/error.hpp"
#include "weyl/scenario.hpp"

using namespace weyl;
using json = nlohmann::json;

namespace {

const std::string source_dir = WEYL_SOURCE_DIR;

std::vector<std::string> scenario_names() {
    return {"euler_laurent_f5", "euler_laurent_q", "euler_nonsimple", "group_algebra_z2", "mixed_weyl_type",
            "shift_family",     "weyl_f2",         "weyl_f5",         "weyl_laurent",     "weyl_rational"};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json minimal() {
    return json::parse(R"({
        "name": "w", "field": "Q",
        "variables": [{"name": "t", "kind": "polynomial"}],
        "derivations": [{"name": "d1", "images": {"t": "1"}}],
        "window": {"bounds": {"t": [0, 4]}, "max_level": 2}
    })");
}

std::vector<std::string> violations(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const ValidationError& e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<std::string>& list, const std::string& needle) {
    for (const auto& s : list)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("fractions") {
    CHECK(parse_fraction("3") == 3);
    CHECK(parse_fraction("-3/4") == mpq_class(-3, 4));
    CHECK(parse_fraction("6/8") == mpq_class(3, 4));
    CHECK(parse_fraction("0.25") == mpq_class(1, 4));
    CHECK(parse_fraction("1.5") == mpq_class(3, 2));
    CHECK_THROWS(parse_fraction("1/0"));
    CHECK_THROWS_AS(parse_fraction("abc"), UsageError);
    CHECK_THROWS_AS(parse_fraction(""), UsageError);
    CHECK(fraction_string(mpq_class(1, 2)) == "1/2");
    CHECK(fraction_string(mpq_class(3)) == "3/1");
}

TEST_CASE("a minimal scenario parses") {
    Scenario sc = parse_scenario(minimal());
    CHECK(sc.name == "w");
    CHECK(sc.context->variable_count() == 1);
    CHECK(sc.context->derivation_count() == 1);
    CHECK(sc.window.max_level() == 2);
    CHECK(sc.margin == mpq_class(1, 2));
    CHECK(sc.probes.empty());
    CHECK(sc.suites.empty());
}

TEST_CASE("validation collects every violation") {
    json doc = minimal();
    doc["field"] = "R";
    doc["variables"].push_back({{"name", "t"}, {"kind", "polynomial"}});
    doc["colour"] = "blue";
    doc["window"]["max_level"] = -1;
    auto v = violations(doc);
    CHECK(v.size() >= 4);
    CHECK(mentions(v, "field"));
    CHECK(mentions(v, "colour: unknown key"));
    CHECK(mentions(v, "max_level"));
    CHECK(mentions(v, "variables[1]: duplicate variable name t"));
    CHECK(violations(json::array()).size() == 1);
}

TEST_CASE("validation of derivations") {
    json doc = minimal();
    doc["variables"].push_back({{"name", "s"}, {"kind", "polynomial"}});
    doc["derivations"].push_back({{"name", "d2"}, {"images", {{"s", "t"}}}});
    CHECK(mentions(violations(doc), "d1 and d2 do not commute"));

    doc = minimal();
    doc["derivations"][0]["images"]["u"] = "1";
    CHECK(mentions(violations(doc), "unknown variable u"));

    doc = minimal();
    doc["derivations"][0]["shift"] = "x";
    CHECK(mentions(violations(doc), "exactly one"));

    doc = minimal();
    doc["derivations"][0]["name"] = "t";
    CHECK(mentions(violations(doc), "clashes"));

    doc = minimal();
    doc["derivations"][0]["images"]["t"] = "d1";
    CHECK_FALSE(violations(doc).empty());
}

TEST_CASE("validation of lambda derivations") {
    json doc = json::parse(R"({
        "name": "g", "field": "Q",
        "variables": [{"name": "t1", "kind": "laurent"}, {"name": "t2", "kind": "laurent"}],
        "derivations": [{"name": "e1", "lambda": {"t1": "1", "t2": "2"}}],
        "window": {"bounds": {"t1": [-1, 1], "t2": [-1, 1]}, "max_level": 1}
    })");
    CHECK(mentions(violations(doc), "nontrivial integer kernel"));
    doc["derivations"].push_back({{"name", "e2"}, {"lambda", {{"t1", "2"}, {"t2", "4"}}}});
    CHECK(mentions(violations(doc), "nontrivial integer kernel"));
    doc["derivations"][1]["lambda"] = {{"t1", "0"}, {"t2", "1/3"}};
    CHECK(violations(doc).empty());
    Scenario sc = parse_scenario(doc);
    CHECK(test::str(*sc.context, apply_derivation(*sc.context, 1, test::A(*sc.context, "t1*t2^3"))) == "t1*t2^3");
    doc["field"] = "F_5";
    CHECK(mentions(violations(doc), "characteristic 0"));
    doc["field"] = "Q";
    doc["variables"][0]["kind"] = "polynomial";
    CHECK(mentions(violations(doc), "Laurent variables only"));
}

TEST_CASE("validation of probes") {
    json doc = minimal();
    doc["probes"] = json::parse(R"([
        {"kind": "d_simplicity", "seed": "t^9"},
        {"kind": "d_simplicity", "seed": "t - t"},
        {"kind": "lie_closure"},
        {"kind": "spin"},
        {"kind": "p_power", "derivation": "d1"},
        {"kind": "theta_kernel", "expect": "maybe"},
        {"kind": "wronskian", "candidates": []}
    ])");
    doc["verify"] = {{"suites", {"associativity", "nonsense"}}};
    auto v = violations(doc);
    CHECK(mentions(v, "probes[0].seed: seed lies outside the window"));
    CHECK(mentions(v, "probes[1].seed: seed is zero"));
    CHECK(mentions(v, "probes[2]: missing seed"));
    CHECK(mentions(v, "unknown probe kind spin"));
    CHECK(mentions(v, "p_power needs a prime field"));
    CHECK(mentions(v, "unknown verdict"));
    CHECK(mentions(v, "at least as many candidates"));
    CHECK(mentions(v, "unknown suite nonsense"));
}

TEST_CASE("bundled scenarios load and meet their expectations") {
    for (const auto& name : scenario_names()) {
        CAPTURE(name);
        Scenario sc = load_scenario(source_dir + "/scenarios/" + name + ".json");
        CHECK(sc.name == name);
        ProbeReport r = run_probes(sc);
        CHECK(r.expectations_met);
        CHECK(r.json["expectations_met"] == true);
        CHECK(r.json.dump(2) + "\n" == slurp(source_dir + "/tests/golden/" + name + ".probe.json"));
    }
    CHECK_THROWS_AS(load_scenario(source_dir + "/scenarios/missing.json"), UsageError);
}

TEST_CASE("reports do not depend on the execution mode") {
    for (const char* name : {"weyl_f5", "euler_nonsimple", "group_algebra_z2"}) {
        Scenario sc = load_scenario(source_dir + "/scenarios/" + name + ".json");
        CHECK(run_probes(sc, std::nullopt, Exec::serial).json.dump() ==
              run_probes(sc, std::nullopt, Exec::parallel).json.dump());
    }
}

TEST_CASE("expectations that fail are reported") {
    json doc = minimal();
    doc["probes"] = json::parse(R"([
        {"kind": "f1", "expect": ["1", "t"]},
        {"kind": "theta_kernel", "expect": "kernel_zero"}
    ])");
    ProbeReport r = run_probes(parse_scenario(doc));
    CHECK_FALSE(r.expectations_met);
    CHECK(r.json["probes"][0]["matches"] == false);
    CHECK(r.json["probes"][1]["matches"] == true);
    std::string text = report_text(r.json);
    CHECK(text.find("kernel_zero") != std::string::npos);
}

TEST_CASE("margin override reaches the Lie probe") {
    json doc = minimal();
    doc["probes"] = json::parse(R"([{"kind": "lie_closure", "seed": "t*d1"}])");
    Scenario sc = parse_scenario(doc);
    CHECK(run_probes(sc).json["probes"][0]["margin"] == "1/2");
    CHECK(run_probes(sc, mpq_class(1, 4)).json["probes"][0]["margin"] == "1/4");
}
