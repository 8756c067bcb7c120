#include <string>
#include <vector>

#include "doctest.h"
#include "ffabc/jobconfig.hpp"
#include "ffabc/parser.hpp"
#include "ffabc/report.hpp"

using namespace ffabc;

namespace {

const std::vector<FieldSpec> kFields{
    {"g", FieldKind::kString},       {"u", FieldKind::kStringList},
    {"s", FieldKind::kStringList},   {"epsilon", FieldKind::kRational},
    {"m_bound", FieldKind::kInteger}, {"gcd", FieldKind::kBool},
    {"out", FieldKind::kString}};

}  // namespace

TEST_CASE("config trees are schema checked") {
    Json j = Json::parse(R"({
        "subcommand": "verify",
        "g": "x0+x1+x2",
        "u": ["t^3", "(t-1)^3"],
        "s": "t, t-1, inf",
        "epsilon": "1/10",
        "m_bound": 2,
        "gcd": false
    })");
    JobConfig cfg = config_from_json(j, "verify", kFields);
    CHECK(need(cfg, "g") == "x0+x1+x2");
    CHECK(need_list(cfg, "u") == std::vector<std::string>{"t^3", "(t-1)^3"});
    // a comma-separated string is accepted for a list field, entries trimmed
    CHECK(need_list(cfg, "s") == std::vector<std::string>{"t", "t-1", "inf"});
    CHECK(need_rat(cfg, "epsilon") == Rat(1, 10));
    CHECK(need_long(cfg, "m_bound") == 2);
    CHECK(get_bool_or(cfg, "gcd", true) == false);
    CHECK(get(cfg, "out") == std::nullopt);

    CHECK_THROWS_WITH_AS(config_from_json(Json::parse(R"({"bogus": 1})"), "verify", kFields),
                         "config: unknown key 'bogus'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        config_from_json(Json::parse(R"({"subcommand": "count"})"), "verify", kFields),
        "config: subcommand entry does not match 'verify'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(config_from_json(Json::parse(R"({"g": 7})"), "verify", kFields),
                         "config: field 'g' has the wrong type", std::invalid_argument);
    CHECK_THROWS_WITH_AS(config_from_json(Json::parse(R"({"u": [1, 2]})"), "verify", kFields),
                         "config: field 'u' must list strings", std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"([1])"), "verify", kFields),
                    std::invalid_argument);
}

TEST_CASE("flags override the file field by field") {
    Json j = Json::parse(R"({"g": "x0+x1", "epsilon": "1/5", "s": ["t", "inf"]})");
    JobConfig cfg = config_from_json(j, "verify", kFields);
    overlay(cfg, "epsilon", "1/10");
    overlay_list(cfg, "s", "t,t-1,inf");
    CHECK(need(cfg, "g") == "x0+x1");  // untouched
    CHECK(need_rat(cfg, "epsilon") == Rat(1, 10));
    CHECK(need_list(cfg, "s").size() == 3);
}

TEST_CASE("typed access names the offending field") {
    JobConfig cfg;
    overlay(cfg, "m_bound", "two");
    overlay(cfg, "epsilon", "t/2");
    CHECK_THROWS_WITH_AS(need(cfg, "g"), "missing required field 'g'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(need_list(cfg, "u"), "missing required field 'u'",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(need_long(cfg, "m_bound"),
                         "field 'm_bound' is not an integer: 'two'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(need_rat(cfg, "epsilon"),
                         "field 'epsilon' is not a rational number: 't/2'",
                         std::invalid_argument);
    CHECK(get_long_or(cfg, "seed", 42) == 42);
}

TEST_CASE("list splitting") {
    CHECK(split_list("t,t-1,inf") == std::vector<std::string>{"t", "t-1", "inf"});
    CHECK(split_list(" t , t-1 ") == std::vector<std::string>{"t", "t-1"});
    CHECK(split_list("") == std::vector<std::string>{});
    CHECK(split_list("a,,b") == std::vector<std::string>{"a", "", "b"});
}

TEST_CASE("reports render deterministically") {
    Json j = report_envelope("count");
    CHECK(j["schema"] == "ffabc-report/1");
    CHECK(j["command"] == "count");

    CountingBreakdown c;
    c.contributions[parse_place("t-2")] = 3;
    c.contributions[parse_place("t^2+1")] = 1;
    c.total = 5;
    j["n_s"] = to_json(c);
    std::string once = render_report(j);
    std::string twice = render_report(j);
    CHECK(once == twice);
    CHECK(once.back() == '\n');
    // key order is fixed by the serializer, not by input order
    CHECK(once.find("\"schema\"") < once.find("\"command\""));
    CHECK(once.find("\"contributions\"") < once.find("\"total\""));

    GcdCount gc{4, 7};
    Json gj = to_json(gc);
    CHECK(gj["n_s_gcd"] == 4);
    CHECK(gj["h_gcd"] == 7);

    PolyHeight ph{6, 2};
    Json pj = to_json(ph);
    CHECK(pj["h"] == 6);
    CHECK(pj["relevant"] == 2);
}

TEST_CASE("rationals in reports are exact strings") {
    VerificationReport r{ProjectivePoint({RationalFunction(1)})};
    r.margin_a = Rat(3, 10);
    r.margin_b = Rat(-7, 10);
    r.epsilon = Rat(1, 10);
    r.height_threshold = Rat(10);
    Json j = to_json(r);
    CHECK(j["margin_a"] == "3/10");
    CHECK(j["margin_b"] == "-7/10");
    CHECK(j["epsilon"] == "1/10");
    CHECK(j["height_threshold"] == "10");
    CHECK(j["classification"] == "generic");
}
