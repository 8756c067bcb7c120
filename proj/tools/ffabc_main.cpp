#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ffabc/counting.hpp"
#include "ffabc/exceptional.hpp"
#include "ffabc/geometry.hpp"
#include "ffabc/heights.hpp"
#include "ffabc/jobconfig.hpp"
#include "ffabc/logderiv.hpp"
#include "ffabc/parser.hpp"
#include "ffabc/report.hpp"
#include "ffabc/verifier.hpp"

namespace ffabc {
namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kHypothesisFailure = 2;

/* Domain failures that mean "the theorem's hypotheses do not hold here",
 * as opposed to malformed input. */
bool is_hypothesis_message(const char* what) {
    static const char* kPrefixes[] = {
        "point is not S-integral",
        "point lies on the divisor",
        "tuple entry is not an S-unit",
        "summand is not an S-unit",
    };
    for (const char* p : kPrefixes)
        if (std::strncmp(what, p, std::strlen(p)) == 0) return true;
    return false;
}

PlaceSet parse_places(const std::vector<std::string>& entries) {
    std::vector<Place> places;
    places.reserve(entries.size());
    for (const auto& e : entries) places.push_back(parse_place(e));
    return PlaceSet(places);
}

std::vector<RationalFunction> parse_rational_list(const std::vector<std::string>& entries) {
    std::vector<RationalFunction> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(parse_rational(e));
    return out;
}

ProjectivePoint parse_point(const std::vector<std::string>& entries) {
    return ProjectivePoint(parse_rational_list(entries));
}

std::vector<std::string> vars_or(const JobConfig& cfg, std::vector<std::string> fallback) {
    if (auto v = get_list(cfg, "vars")) return *v;
    return fallback;
}

std::vector<std::string> affine_names(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int j = 1; j <= n; ++j) names.push_back("x" + std::to_string(j));
    return names;
}

Json string_array(const std::vector<std::string>& v) {
    Json out = Json::array();
    for (const auto& s : v) out.push_back(s);
    return out;
}

Json rational_array(const std::vector<RationalFunction>& v) {
    Json out = Json::array();
    for (const auto& f : v) out.push_back(ratfunc_str(f));
    return out;
}

// ---- handlers ----------------------------------------------------------

Json run_height(const JobConfig& cfg, int&) {
    Json j = report_envelope("height");
    bool any = false;
    if (auto raw = get(cfg, "f")) {
        RationalFunction f = parse_rational(*raw);
        Json e;
        e["f"] = ratfunc_str(f);
        e["h"] = height(f);
        j["element"] = e;
        any = true;
    } else {
        j["element"] = nullptr;
    }
    if (auto coords = get_list(cfg, "point")) {
        ProjectivePoint x = parse_point(*coords);
        Json e;
        e["coords"] = rational_array(x.coords_rf());
        e["h"] = height_point(x);
        j["point"] = e;
        any = true;
    } else {
        j["point"] = nullptr;
    }
    if (auto raw = get(cfg, "form")) {
        std::vector<std::string> vars = vars_or(cfg, projective_names(3));
        MultiPoly f = parse_form(*raw, vars);
        Json e;
        e["form"] = multipoly_str(f, vars);
        e["vars"] = string_array(vars);
        e["height"] = to_json(poly_height(f));
        j["polynomial"] = e;
        any = true;
    } else {
        j["polynomial"] = nullptr;
    }
    if (!any) throw std::invalid_argument("height: provide f, point, or form");
    return j;
}

Json run_count(const JobConfig& cfg, int&) {
    RationalFunction f = parse_rational(need(cfg, "f"));
    PlaceSet s = parse_places(need_list(cfg, "s"));
    Json j = report_envelope("count");
    j["f"] = ratfunc_str(f);
    j["h_f"] = height(f);
    j["s"] = to_json(s);
    j["chi"] = chi_s(s);
    j["chi_plus"] = chi_s_plus(s);
    j["n_s"] = to_json(count_zeros(f, s));
    if (cfg.has("trunc")) {
        long m = need_long(cfg, "trunc");
        Json tr;
        tr["m"] = m;
        tr["count"] = to_json(count_zeros(f, s, m));
        j["truncated"] = tr;
    } else {
        j["truncated"] = nullptr;
    }
    if (auto raw = get(cfg, "g")) {
        RationalFunction g = parse_rational(*raw);
        Json gc;
        gc["g"] = ratfunc_str(g);
        gc["count"] = to_json(count_gcd(f, g, s));
        j["gcd"] = gc;
    } else {
        j["gcd"] = nullptr;
    }
    return j;
}

Json run_weil(const JobConfig& cfg, int&) {
    std::vector<std::string> vars = vars_or(cfg, projective_names(3));
    MultiPoly f = parse_form(need(cfg, "form"), vars);
    ProjectivePoint x = parse_point(need_list(cfg, "point"));
    PlaceSet s = parse_places(need_list(cfg, "s"));
    Json j = report_envelope("weil");
    j["form"] = multipoly_str(f, vars);
    j["vars"] = string_array(vars);
    j["x"] = x.str();
    j["s"] = to_json(s);
    j["deg_form"] = f.total_degree();
    j["h_x"] = height_point(x);
    j["h_form"] = poly_height(f).h;
    if (auto raw = get(cfg, "place")) {
        Place p = parse_place(*raw);
        Json lam;
        lam["place"] = p.str();
        lam["value"] = weil_lambda(f, x, p);
        j["lambda"] = lam;
    } else {
        j["lambda"] = nullptr;
    }
    std::optional<long> trunc;
    if (cfg.has("trunc")) trunc = need_long(cfg, "trunc");
    DivisorDecomposition d = divisor_decomposition(f, x, s, trunc);
    j["decomposition"] = to_json(d);
    // m + N = deg F * h(x) + h(F), the height identity behind the split
    j["identity_lhs"] = d.proximity + d.counting.total;
    j["identity_rhs"] = f.total_degree() * height_point(x) + poly_height(f).h;
    return j;
}

Json run_dlog(const JobConfig& cfg, int&) {
    Json j = report_envelope("dlog");
    bool any = false;
    if (auto raw = get(cfg, "f")) {
        RationalFunction f = parse_rational(*raw);
        Json e;
        e["f"] = ratfunc_str(f);
        e["derivative"] = ratfunc_str(derive(f));
        j["element"] = e;
        any = true;
    } else {
        j["element"] = nullptr;
    }
    if (auto raw = get(cfg, "form")) {
        std::vector<RationalFunction> entries = parse_rational_list(need_list(cfg, "u"));
        PlaceSet s = parse_places(need_list(cfg, "s"));
        UnitTuple u(entries, s);
        std::vector<std::string> vars =
            vars_or(cfg, affine_names(static_cast<int>(entries.size())));
        MultiPoly f = parse_form(*raw, vars);
        MultiPoly d = d_u(f, u);
        Json e;
        e["form"] = multipoly_str(f, vars);
        e["vars"] = string_array(vars);
        e["u"] = rational_array(entries);
        e["s"] = to_json(s);
        e["d_u"] = multipoly_str(d, vars);
        e["value_at_u"] = ratfunc_str(d.eval(entries));
        j["twist"] = e;
        any = true;
        if (auto raw_factors = get_list(cfg, "factors")) {
            std::vector<MultiPoly> factors;
            for (const auto& fs : *raw_factors) factors.push_back(parse_form(fs, vars));
            auto [a, b] = split_ab(f, factors, u);
            Json sp;
            sp["a"] = multipoly_str(a, vars);
            sp["b"] = multipoly_str(b, vars);
            RationalFunction b_at_u = b.eval(entries);
            sp["b_at_u"] = ratfunc_str(b_at_u);
            sp["b_at_u_is_unit_or_zero"] =
                b_at_u.is_zero_value() || is_s_unit(b_at_u, s);
            sp["relevant_height_f"] = poly_height(f).relevant;
            sp["relevant_height_a"] = poly_height(a).relevant;
            j["split"] = sp;
        } else {
            j["split"] = nullptr;
        }
    } else {
        j["twist"] = nullptr;
        j["split"] = nullptr;
    }
    if (!any) throw std::invalid_argument("dlog: provide f, or form with u and s");
    return j;
}

Json run_units(const JobConfig& cfg, int&) {
    PlaceSet s = parse_places(need_list(cfg, "s"));
    Json j = report_envelope("units");
    j["s"] = to_json(s);
    j["chi"] = chi_s(s);
    j["chi_plus"] = chi_s_plus(s);
    bool any = false;
    if (cfg.has("height_bound")) {
        long bound = need_long(cfg, "height_bound");
        std::vector<RationalFunction> us = enumerate_s_units(s, bound);
        Json e;
        e["height_bound"] = bound;
        e["count"] = static_cast<long>(us.size());
        e["units"] = rational_array(us);
        j["enumeration"] = e;
        any = true;
    } else {
        j["enumeration"] = nullptr;
    }
    if (auto raw = get_list(cfg, "check")) {
        std::vector<RationalFunction> fs = parse_rational_list(*raw);
        Json e;
        e["f"] = rational_array(fs);
        e["result"] = to_json(unit_sum_check(fs, s));
        j["unit_sum"] = e;
        any = true;
    } else {
        j["unit_sum"] = nullptr;
    }
    if (!any) throw std::invalid_argument("units: provide height_bound or check");
    return j;
}

Json run_exceptional(const JobConfig& cfg, int&) {
    MultiPoly g = parse_form(need(cfg, "g"), {"X", "Y"});
    PlaceSet s = parse_places(need_list(cfg, "s"));
    long m_bound = need_long(cfg, "m_bound");
    ExceptionalSetDescription desc = build_exceptional_set(g, m_bound, s);
    Json j = report_envelope("exceptional");
    j["description"] = to_json(desc);
    if (auto coords = get_list(cfg, "point")) {
        ProjectivePoint x = parse_point(*coords);
        Json e;
        e["x"] = x.str();
        e["result"] = to_json(member(x, desc));
        j["membership"] = e;
    } else {
        j["membership"] = nullptr;
    }
    return j;
}

Json run_genpos(const JobConfig& cfg, int&) {
    std::vector<std::string> vars = vars_or(cfg, projective_names(3));
    std::vector<MultiPoly> forms;
    for (const auto& fs : need_list(cfg, "forms")) forms.push_back(parse_form(fs, vars));
    Json j = report_envelope("genpos");
    Json fj = Json::array();
    for (const auto& f : forms) fj.push_back(multipoly_str(f, vars));
    j["forms"] = fj;
    j["vars"] = string_array(vars);
    j["general_position"] = general_position_n2(forms);
    j["transversal"] = transversal_intersections(forms);
    if (auto raw = get(cfg, "place")) {
        Place p = parse_place(*raw);
        j["certificate"] = to_json(general_position_by_specialization(forms, p));
    } else {
        j["certificate"] = nullptr;
    }
    return j;
}

Json run_ram(const JobConfig& cfg, int&) {
    std::vector<std::string> vars = vars_or(cfg, projective_names(3));
    std::vector<MultiPoly> forms;
    for (const auto& fs : need_list(cfg, "forms")) forms.push_back(parse_form(fs, vars));
    PlaceSet s = parse_places(need_list(cfg, "s"));
    Place p = parse_place(need(cfg, "place"));
    ProjectivePoint x = parse_point(need_list(cfg, "point"));
    Rat epsilon = need_rat(cfg, "epsilon");
    FormSystem sys = make_form_system(forms);
    Json j = report_envelope("ram");
    Json fj = Json::array();
    for (const auto& f : sys.forms) fj.push_back(multipoly_str(f, vars));
    j["forms"] = fj;
    j["vars"] = string_array(vars);
    Json degrees = Json::array();
    for (long d : sys.degrees) degrees.push_back(d);
    j["degrees"] = degrees;
    Json euler = Json::array();
    for (const auto& f : sys.forms) euler.push_back(euler_check(f));
    j["euler"] = euler;
    j["jacobian"] = multipoly_str(jacobian_form(sys), vars);
    RamifiedCoverSpec spec = make_ramified_cover_spec(sys, s, p);
    j["report"] = to_json(ramified_cover_report(spec, x, epsilon));
    return j;
}

Json run_verify(const JobConfig& cfg, int& exit_code) {
    std::vector<RationalFunction> entries = parse_rational_list(need_list(cfg, "u"));
    PlaceSet s = parse_places(need_list(cfg, "s"));
    UnitTuple u(entries, s);
    Rat epsilon = need_rat(cfg, "epsilon");
    const int n = static_cast<int>(entries.size());
    Json j = report_envelope("verify");
    if (get_bool_or(cfg, "gcd", false)) {
        std::vector<std::string> vars = vars_or(cfg, affine_names(n));
        MultiPoly f = parse_form(need(cfg, "f"), vars);
        MultiPoly g = parse_form(need(cfg, "g"), vars);
        j["mode"] = "gcd";
        j["f"] = multipoly_str(f, vars);
        j["g"] = multipoly_str(g, vars);
        j["vars"] = string_array(vars);
        j["u"] = rational_array(entries);
        j["s"] = to_json(s);
        j["gcd_conclusion"] = to_json(gcd_conclusion_report(f, g, u, s, epsilon));
        return j;
    }
    std::vector<std::string> vars = vars_or(cfg, projective_names(n + 1));
    MultiPoly g = parse_form(need(cfg, "g"), vars);
    long seed_long = get_long_or(cfg, "seed", 0);
    std::uint64_t seed =
        cfg.has("seed") ? static_cast<std::uint64_t>(seed_long) : UINT64_C(0x5eed);
    std::optional<LogOneForm> one_form;
    if (auto raw = get(cfg, "one_form")) {
        std::size_t colon = raw->find(':');
        LogOneForm w;
        std::string head = colon == std::string::npos ? *raw : raw->substr(0, colon);
        for (const auto& e : split_list(head)) {
            JobConfig tmp;
            tmp.values["m"] = e;
            w.exponents.push_back(need_long(tmp, "m"));
        }
        w.alpha = colon == std::string::npos ? RationalFunction(1)
                                             : parse_rational(raw->substr(colon + 1));
        one_form = std::move(w);
    }
    j["mode"] = "abc";
    j["g"] = multipoly_str(g, vars);
    j["vars"] = string_array(vars);
    j["u"] = rational_array(entries);
    j["s"] = to_json(s);
    j["hypotheses"] = to_json(validate_hypotheses(g, 8, seed));
    VerificationReport rep =
        abc_report(g, u, s, epsilon, get_long_or(cfg, "m_bound", 0), one_form);
    j["verification"] = to_json(rep);
    if (rep.classification == Classification::kHypothesisFailure) exit_code = kHypothesisFailure;
    return j;
}

// ---- wiring ------------------------------------------------------------

struct SubSpec {
    std::string name;
    std::string desc;
    std::vector<FieldSpec> fields;
    std::function<Json(const JobConfig&, int&)> run;
};

const std::vector<SubSpec>& subcommands() {
    static const std::vector<SubSpec> specs = {
        {"height",
         "heights of elements, points, and polynomials",
         {{"f", FieldKind::kString},
          {"point", FieldKind::kStringList},
          {"form", FieldKind::kString},
          {"vars", FieldKind::kStringList},
          {"out", FieldKind::kString}},
         run_height},
        {"count",
         "zero counts N_S, truncations, and gcd counts",
         {{"f", FieldKind::kString},
          {"g", FieldKind::kString},
          {"s", FieldKind::kStringList},
          {"trunc", FieldKind::kInteger},
          {"out", FieldKind::kString}},
         run_count},
        {"weil",
         "Weil functions and height decompositions",
         {{"form", FieldKind::kString},
          {"vars", FieldKind::kStringList},
          {"point", FieldKind::kStringList},
          {"s", FieldKind::kStringList},
          {"place", FieldKind::kString},
          {"trunc", FieldKind::kInteger},
          {"out", FieldKind::kString}},
         run_weil},
        {"dlog",
         "derivatives, twisted operators, and factor splits",
         {{"f", FieldKind::kString},
          {"form", FieldKind::kString},
          {"vars", FieldKind::kStringList},
          {"u", FieldKind::kStringList},
          {"s", FieldKind::kStringList},
          {"factors", FieldKind::kStringList},
          {"out", FieldKind::kString}},
         run_dlog},
        {"units",
         "S-unit enumeration and unit-sum checks",
         {{"s", FieldKind::kStringList},
          {"height_bound", FieldKind::kInteger},
          {"check", FieldKind::kStringList},
          {"out", FieldKind::kString}},
         run_units},
        {"exceptional",
         "exceptional sets of plane unit-point problems",
         {{"g", FieldKind::kString},
          {"s", FieldKind::kStringList},
          {"m_bound", FieldKind::kInteger},
          {"point", FieldKind::kStringList},
          {"out", FieldKind::kString}},
         run_exceptional},
        {"genpos",
         "general position and transversality of plane systems",
         {{"forms", FieldKind::kStringList},
          {"vars", FieldKind::kStringList},
          {"place", FieldKind::kString},
          {"out", FieldKind::kString}},
         run_genpos},
        {"ram",
         "ramified-cover data for a plane divisor system",
         {{"forms", FieldKind::kStringList},
          {"vars", FieldKind::kStringList},
          {"s", FieldKind::kStringList},
          {"place", FieldKind::kString},
          {"point", FieldKind::kStringList},
          {"epsilon", FieldKind::kRational},
          {"out", FieldKind::kString}},
         run_ram},
        {"verify",
         "hypothesis checks and inequality-chain reports on unit points",
         {{"gcd", FieldKind::kBool},
          {"g", FieldKind::kString},
          {"f", FieldKind::kString},
          {"vars", FieldKind::kStringList},
          {"u", FieldKind::kStringList},
          {"s", FieldKind::kStringList},
          {"epsilon", FieldKind::kRational},
          {"m_bound", FieldKind::kInteger},
          {"seed", FieldKind::kInteger},
          {"one_form", FieldKind::kString},
          {"out", FieldKind::kString}},
         run_verify},
    };
    return specs;
}

std::string flag_name(const std::string& key) {
    std::string out = "--";
    for (char c : key) out += c == '_' ? '-' : c;
    return out;
}

struct Invocation {
    const SubSpec* spec = nullptr;
    std::string config_path;
    std::map<std::string, std::string> flag_values;
    std::vector<std::string> bool_flags_set;
};

int run(const Invocation& inv) {
    JobConfig cfg;
    cfg.subcommand = inv.spec->name;
    if (!inv.config_path.empty())
        cfg = load_config_file(inv.config_path, inv.spec->name, inv.spec->fields);
    for (const auto& f : inv.spec->fields) {
        auto it = inv.flag_values.find(f.key);
        if (it == inv.flag_values.end()) continue;
        if (f.kind == FieldKind::kStringList)
            overlay_list(cfg, f.key, it->second);
        else
            overlay(cfg, f.key, it->second);
    }
    for (const auto& key : inv.bool_flags_set) overlay(cfg, key, "true");

    int exit_code = kOk;
    Json report = inv.spec->run(cfg, exit_code);
    std::string rendered = render_report(report);
    if (auto out = get(cfg, "out")) {
        std::ofstream os(*out, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open output file '" + *out + "'");
        os << rendered;
    } else {
        std::cout << rendered;
    }
    return exit_code;
}

}  // namespace
}  // namespace ffabc

int main(int argc, char** argv) {
    using namespace ffabc;
    CLI::App app{"exact Diophantine computations over the rational function field"};
    app.require_subcommand(1);

    std::vector<Invocation> invocations(subcommands().size());
    for (std::size_t i = 0; i < subcommands().size(); ++i) {
        const SubSpec& spec = subcommands()[i];
        Invocation& inv = invocations[i];
        inv.spec = &spec;
        CLI::App* sub = app.add_subcommand(spec.name, spec.desc);
        sub->add_option("--config", inv.config_path, "job parameters as a JSON file");
        for (const auto& f : spec.fields) {
            if (f.kind == FieldKind::kBool) {
                sub->add_flag_callback(
                    flag_name(f.key), [&inv, key = f.key] { inv.bool_flags_set.push_back(key); },
                    "");
            } else {
                sub->add_option_function<std::string>(
                    flag_name(f.key),
                    [&inv, key = f.key](const std::string& v) { inv.flag_values[key] = v; }, "");
            }
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    const Invocation* chosen = nullptr;
    for (const auto& inv : invocations)
        if (app.got_subcommand(inv.spec->name)) chosen = &inv;
    if (chosen == nullptr) {
        std::cerr << "input error: no subcommand selected\n";
        return kInputError;
    }

    try {
        return run(*chosen);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        if (is_hypothesis_message(e.what())) {
            std::cerr << "hypothesis failure: " << e.what() << "\n";
            return kHypothesisFailure;
        }
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
}
