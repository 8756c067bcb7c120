#include "ffabc/report.hpp"

namespace ffabc {

namespace {

Json rat_json(const Rat& a) { return rat_str(a); }

Json long_list(const std::vector<long>& v) {
    Json out = Json::array();
    for (long x : v) out.push_back(x);
    return out;
}

Json bool_list(const std::vector<bool>& v) {
    Json out = Json::array();
    for (bool x : v) out.push_back(x);
    return out;
}

Json string_list(const std::vector<std::string>& v) {
    Json out = Json::array();
    for (const auto& s : v) out.push_back(s);
    return out;
}

}  // namespace

Json report_envelope(const std::string& command) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    return j;
}

Json to_json(const Place& p) { return p.str(); }

Json to_json(const PlaceSet& s) {
    Json out = Json::array();
    for (const Place& p : s.places()) out.push_back(p.str());
    return out;
}

Json to_json(const CountingBreakdown& c) {
    Json j;
    Json contrib = Json::object();
    for (const auto& [place, mult] : c.contributions) contrib[place.str()] = mult;
    j["contributions"] = contrib;
    j["total"] = c.total;
    return j;
}

Json to_json(const GcdCount& c) {
    Json j;
    j["n_s_gcd"] = c.n_s_gcd;
    j["h_gcd"] = c.h_gcd;
    return j;
}

Json to_json(const DivisorDecomposition& d) {
    Json j;
    j["proximity"] = d.proximity;
    j["counting"] = to_json(d.counting);
    j["truncated_total"] = d.truncated_total ? Json(*d.truncated_total) : Json(nullptr);
    return j;
}

Json to_json(const PolyHeight& h) {
    Json j;
    j["h"] = h.h;
    j["relevant"] = h.relevant;
    return j;
}

Json to_json(const UnitSumReport& r) {
    Json j;
    j["subsum_vanishes"] = r.subsum_vanishes;
    j["max_height"] = r.max_height;
    j["bound"] = r.bound;
    j["within_bound"] = r.within_bound;
    return j;
}

Json to_json(const UnitRelation& r) {
    Json j;
    j["exponents"] = long_list(r.exponents);
    j["height"] = r.height;
    j["bound"] = int_str(r.bound);
    return j;
}

Json to_json(const LambdaConstraint& c) {
    Json j;
    if (c.exact) {
        j["kind"] = "value";
        j["value"] = ratfunc_str(c.value);
    } else {
        j["kind"] = "root_of";
        j["poly"] = lambda_poly_str(c.defining);
    }
    return j;
}

Json to_json(const ExceptionalCurve& c) {
    Json j;
    j["m1"] = c.m1;
    j["m2"] = c.m2;
    j["constraint"] = to_json(c.constraint);
    j["curve"] = curve_str(c);
    return j;
}

Json to_json(const ExceptionalSetDescription& d) {
    Json j;
    j["g"] = multipoly_str(d.g, {"X", "Y"});
    j["s"] = to_json(d.s);
    j["m_bound"] = d.m_bound;
    Json curves = Json::array();
    for (const auto& c : d.curves) curves.push_back(to_json(c));
    j["curves"] = curves;
    j["includes_g_zero_locus"] = d.includes_g_zero_locus;
    j["constant_coefficients"] = d.constant_coefficients;
    j["height_threshold_note"] = d.height_threshold_note;
    return j;
}

Json to_json(const MemberResult& m) {
    Json j;
    j["member"] = m.member;
    j["curve"] = m.curve ? to_json(*m.curve) : Json(nullptr);
    j["on_g_zero_locus"] = m.on_g_zero_locus;
    j["witness"] = m.witness;
    return j;
}

Json to_json(const SpecializationCertificate& c) {
    Json j;
    j["place"] = c.place.str();
    Json sp = Json::array();
    for (const auto& f : c.specialized) sp.push_back(multipoly_str(f));
    j["specialized"] = sp;
    j["in_general_position"] = c.in_general_position;
    j["certified"] = c.certified;
    j["inconclusive"] = c.inconclusive;
    return j;
}

Json to_json(const HypothesisReport& r) {
    Json j;
    j["no_monomial_factor"] = r.no_monomial_factor;
    j["squarefree_certified"] = r.squarefree_certified;
    j["coordinate_nonvanishing"] = r.coordinate_nonvanishing;
    j["failures"] = string_list(r.failures);
    j["all_pass"] = r.all_pass;
    return j;
}

Json to_json(const VerificationReport& r) {
    Json j;
    j["point"] = r.point.str();
    j["h_u"] = r.h_u;
    j["vh_g"] = r.vh_g;
    j["chi"] = r.chi;
    j["n_s"] = r.n_s;
    j["n_s_1"] = r.n_s_1;
    j["n_s_gcd"] = r.n_s_gcd;
    j["chain_holds"] = r.chain_holds;
    j["on_divisor"] = r.on_divisor;
    j["du_vanishes"] = r.du_vanishes;
    j["margin_a"] = rat_json(r.margin_a);
    j["margin_b"] = rat_json(r.margin_b);
    j["epsilon"] = rat_json(r.epsilon);
    j["height_threshold"] = rat_json(r.height_threshold);
    j["classification"] = classification_str(r.classification);
    j["witness"] = r.witness;
    return j;
}

Json to_json(const RelationScan& r) {
    Json j;
    j["exponents"] = long_list(r.exponents);
    j["height"] = r.height;
    j["box"] = r.box;
    return j;
}

Json to_json(const GcdConclusionReport& r) {
    Json j;
    j["n_s_gcd"] = r.n_s_gcd;
    j["h_gcd"] = r.h_gcd;
    j["max_height"] = r.max_height;
    j["coeff_height"] = r.coeff_height;
    j["chi_plus"] = r.chi_plus;
    j["height_floor"] = rat_json(r.height_floor);
    j["height_floor_met"] = r.height_floor_met;
    j["conclusion_a"] = r.conclusion_a;
    j["conclusion_b"] = r.conclusion_b;
    j["margin_a"] = rat_json(r.margin_a);
    j["margin_b"] = rat_json(r.margin_b);
    j["origin_condition"] = r.origin_condition;
    j["best_relation"] = r.best_relation ? to_json(*r.best_relation) : Json(nullptr);
    j["escape_bound"] = rat_json(r.escape_bound);
    j["escape_holds"] = r.escape_holds;
    j["f_vanishes"] = r.f_vanishes;
    j["g_vanishes"] = r.g_vanishes;
    j["degenerate"] = r.degenerate;
    j["epsilon"] = rat_json(r.epsilon);
    return j;
}

Json to_json(const RamifiedCoverReport& r) {
    Json j;
    j["x"] = r.x.str();
    j["b"] = long_list(r.b);
    j["b_total"] = r.b_total;
    Json units = Json::array();
    for (const auto& f : r.u) units.push_back(ratfunc_str(f));
    j["u"] = units;
    j["u_is_s_unit"] = bool_list(r.u_is_s_unit);
    j["s_enlarged"] = to_json(r.s_enlarged);
    Json added = Json::array();
    for (const Place& p : r.added_places) added.push_back(p.str());
    j["added_places"] = added;
    j["u_is_enlarged_unit"] = bool_list(r.u_is_enlarged_unit);
    j["divisor_counts"] = long_list(r.divisor_counts);
    j["jacobian"] = multipoly_str(r.jacobian);
    j["jacobian_degree"] = r.jacobian_degree;
    j["jacobian_at_p"] = multipoly_str(r.jacobian_at_p);
    j["transversal_at_p"] = r.transversal_at_p;
    j["position_certificate"] = to_json(r.position_certificate);
    j["ramification_certificate"] =
        r.ramification_certificate ? to_json(*r.ramification_certificate) : Json(nullptr);
    j["h_x"] = r.h_x;
    j["h_one_u"] = r.h_one_u;
    j["deviation"] = r.deviation;
    j["coeff_height"] = r.coeff_height;
    j["c_prime"] = r.c_prime;
    j["within_c_prime"] = r.within_c_prime;
    j["log_derivative_identity"] = r.log_derivative_identity;
    j["epsilon"] = rat_json(r.epsilon);
    return j;
}

std::string render_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ffabc
