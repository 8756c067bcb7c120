#include "ffabc/verifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ffabc/exceptional.hpp"

namespace ffabc {

namespace {

const Rat kRatPool[] = {Rat(1), Rat(-1), Rat(2), Rat(1, 2),
                        Rat(3), Rat(-2), Rat(1, 3), Rat(-1, 2)};

/* Substitute random values for every variable except j.  The result lives in
 * K[x_j]; a degenerate draw can drop the leading term, which the caller
 * detects by comparing degrees. */
UPoly<RationalFunction> specialize_keep(const MultiPoly& g, int j,
                                        const std::vector<RationalFunction>& vals) {
    long d = g.degree_in(j);
    std::vector<RationalFunction> coeffs(static_cast<size_t>(d + 1), RationalFunction());
    for (const auto& [e, c] : g.terms()) {
        RationalFunction term = c;
        for (int k = 0; k < g.arity(); ++k) {
            if (k == j || e[k] == 0) continue;
            term = term * vals[static_cast<size_t>(k)].pow(e[k]);
        }
        coeffs[static_cast<size_t>(e[static_cast<size_t>(j)])] =
            coeffs[static_cast<size_t>(e[static_cast<size_t>(j)])] + term;
    }
    return UPoly<RationalFunction>::from_coeffs(coeffs);
}

std::string coordinate_point_str(int arity, int j) {
    std::string s = "[";
    for (int k = 0; k < arity; ++k) {
        if (k) s += ":";
        s += (k == j) ? "1" : "0";
    }
    return s + "]";
}

MultiPoly mp_pow(const MultiPoly& f, long e) {
    MultiPoly r = MultiPoly::constant(f.arity(), RationalFunction(Rat(1)));
    for (long i = 0; i < e; ++i) r = r * f;
    return r;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

}  // namespace

HypothesisReport validate_hypotheses(const MultiPoly& g, int repetitions, std::uint64_t seed) {
    HypothesisReport rep;
    if (g.is_zero()) {
        rep.failures.push_back("zero polynomial");
        return rep;
    }
    if (!g.is_homogeneous()) rep.failures.push_back("not homogeneous");

    int arity = g.arity();
    rep.no_monomial_factor = true;
    for (int j = 0; j < arity; ++j) {
        if (g.min_exponent(j) >= 1) {
            rep.no_monomial_factor = false;
            rep.failures.push_back("monomial factor: x" + std::to_string(j) +
                                   " divides the polynomial");
        }
    }

    std::mt19937_64 rng(seed);
    auto draw = [&rng]() { return RationalFunction(kRatPool[rng() % 8]); };
    rep.squarefree_certified = true;
    for (int j = 0; j < arity; ++j) {
        if (g.degree_in(j) < 1) continue;
        MultiPoly gj = g.partial(j);
        bool certified = false;
        for (int r = 0; r < repetitions && !certified; ++r) {
            std::vector<RationalFunction> vals;
            for (int k = 0; k < arity; ++k) vals.push_back(draw());
            UPoly<RationalFunction> gs = specialize_keep(g, j, vals);
            if (gs.degree() < g.degree_in(j)) continue;  // leading term lost
            UPoly<RationalFunction> ds = specialize_keep(gj, j, vals);
            if (ds.degree() < 0) continue;
            certified = poly_gcd(gs, ds).degree() == 0;
        }
        if (!certified) {
            rep.squarefree_certified = false;
            rep.failures.push_back("repeated factor indicated in x" + std::to_string(j) +
                                   ": every specialization shares a root with the partial");
        }
    }

    long d = g.total_degree();
    rep.coordinate_nonvanishing = true;
    for (int j = 0; j < arity; ++j) {
        std::vector<int> e(static_cast<size_t>(arity), 0);
        e[static_cast<size_t>(j)] = static_cast<int>(d);
        auto it = g.terms().find(e);
        if (it == g.terms().end()) {
            rep.coordinate_nonvanishing = false;
            rep.failures.push_back("vanishes at " + coordinate_point_str(arity, j));
        }
    }

    rep.all_pass = rep.failures.empty();
    return rep;
}

std::string classification_str(Classification c) {
    switch (c) {
        case Classification::kGeneric: return "generic";
        case Classification::kExceptional: return "exceptional";
        case Classification::kLowHeight: return "low_height";
        case Classification::kHypothesisFailure: return "hypothesis_failure";
    }
    return "unknown";
}

VerificationReport abc_report(const MultiPoly& g, const UnitTuple& u, const PlaceSet& s,
                              const Rat& epsilon, long m_bound,
                              const std::optional<LogOneForm>& one_form) {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    int n = u.size();
    if (g.arity() != n + 1)
        throw std::invalid_argument("abc_report: G must have one more variable than u has entries");

    std::vector<RationalFunction> coords;
    coords.push_back(RationalFunction(Rat(1)));
    for (const auto& e : u.entries()) coords.push_back(e);

    VerificationReport rep{ProjectivePoint(coords)};
    rep.h_u = height_point(rep.point);
    rep.vh_g = poly_height(g).relevant;
    rep.chi = chi_s(s);
    rep.epsilon = epsilon;
    long d = g.total_degree();

    RationalFunction g_val = g.eval(coords);
    // The twist acts on the dehomogenized form; G(1, u)' = D_u(G)(u) either way.
    RationalFunction du_val = d_u(g.dehomogenize(0), u).eval(u.entries());
    rep.on_divisor = g_val.is_zero_value();
    rep.du_vanishes = du_val.is_zero_value();
    if (!rep.on_divisor) {
        rep.n_s = count_zeros(g_val, s).total;
        rep.n_s_1 = count_zeros(g_val, s, 1).total;
        rep.n_s_gcd = rep.du_vanishes ? rep.n_s : count_gcd(g_val, du_val, s).n_s_gcd;
    }
    rep.chain_holds = rep.n_s - rep.n_s_1 <= rep.n_s_gcd;

    Rat h(rep.h_u);
    rep.margin_a = epsilon * h - Rat(rep.n_s - rep.n_s_1);
    rep.margin_b = Rat(rep.n_s_1) - (Rat(d) - epsilon) * h;
    rep.height_threshold = Rat(rep.vh_g + std::max(1L, rep.chi)) / epsilon;

    HypothesisReport hyp = validate_hypotheses(g);
    if (!hyp.all_pass) {
        rep.classification = Classification::kHypothesisFailure;
        rep.witness = join(hyp.failures);
        return rep;
    }

    if (n == 2) {
        long mb = m_bound > 0 ? m_bound : 2 * d;
        ExceptionalSetDescription desc = build_exceptional_set(g.dehomogenize(0), mb, s);
        MemberResult mr = member(rep.point, desc);
        if (mr.member) {
            rep.classification = Classification::kExceptional;
            rep.witness = mr.witness;
            return rep;
        }
        if (rep.on_divisor) {
            rep.classification = Classification::kExceptional;
            rep.witness = "G(x) = 0";
            return rep;
        }
    } else {
        if (rep.on_divisor) {
            rep.classification = Classification::kExceptional;
            rep.witness = "G(x) = 0";
            return rep;
        }
        if (one_form && eval_log_form(*one_form, u).is_zero_value()) {
            std::ostringstream w;
            w << "logarithmic 1-form vanishes: m = (";
            for (size_t i = 0; i < one_form->exponents.size(); ++i) {
                if (i) w << ", ";
                w << one_form->exponents[i];
            }
            w << ")";
            rep.classification = Classification::kExceptional;
            rep.witness = w.str();
            return rep;
        }
    }

    if (h <= rep.height_threshold) {
        rep.classification = Classification::kLowHeight;
        return rep;
    }
    rep.classification = Classification::kGeneric;
    return rep;
}

GcdConclusionReport gcd_conclusion_report(const MultiPoly& f, const MultiPoly& g,
                                          const UnitTuple& tuple, const PlaceSet& s,
                                          const Rat& epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (f.is_constant() || g.is_constant())
        throw std::invalid_argument("gcd_conclusion_report: F and G must be nonconstant");
    int n = tuple.size();
    if (f.arity() != n || g.arity() != n)
        throw std::invalid_argument("gcd_conclusion_report: arity must match the tuple");

    GcdConclusionReport rep;
    rep.epsilon = epsilon;
    for (const auto& gi : tuple.entries()) rep.max_height = std::max(rep.max_height, height(gi));
    rep.degenerate = rep.max_height == 0;
    rep.coeff_height = poly_height(f).relevant + poly_height(g).relevant;
    rep.chi_plus = chi_s_plus(s);

    RationalFunction f_val = f.eval(tuple.entries());
    RationalFunction g_val = g.eval(tuple.entries());
    rep.f_vanishes = f_val.is_zero_value();
    rep.g_vanishes = g_val.is_zero_value();
    if (!rep.f_vanishes && !rep.g_vanishes) {
        GcdCount c = count_gcd(f_val, g_val, s);
        rep.n_s_gcd = c.n_s_gcd;
        rep.h_gcd = c.h_gcd;
    } else if (rep.f_vanishes != rep.g_vanishes) {
        // gcd(w, 0) = w: the count collapses to the surviving side.
        const RationalFunction& w = rep.f_vanishes ? g_val : f_val;
        rep.n_s_gcd = count_zeros(w, s).total;
        rep.h_gcd = height(w);
    }

    rep.height_floor = Rat(kFloorCoeff * rep.coeff_height + kFloorChi * rep.chi_plus);
    rep.height_floor_met = Rat(rep.max_height) >= rep.height_floor;
    Rat bound = epsilon * Rat(rep.max_height);
    rep.margin_a = bound - Rat(rep.n_s_gcd);
    rep.margin_b = bound - Rat(rep.h_gcd);
    rep.conclusion_a = rep.margin_a >= 0;
    rep.conclusion_b = rep.margin_b >= 0;

    std::vector<RationalFunction> origin(static_cast<size_t>(n), RationalFunction());
    rep.origin_condition =
        !(f.eval(origin).is_zero_value() && g.eval(origin).is_zero_value());

    long box = 2 * std::max(f.total_degree(), g.total_degree());
    if (n >= 1 && box >= 1) {
        std::vector<long> m(static_cast<size_t>(n), 0);
        std::vector<long> best;
        long best_h = -1;
        std::function<void(int, long)> walk = [&](int i, long budget) {
            if (i == n) {
                bool zero = std::all_of(m.begin(), m.end(), [](long v) { return v == 0; });
                if (zero) return;
                long h = height(tuple.power(m));
                if (best_h < 0 || h < best_h || (h == best_h && m > best)) {
                    best_h = h;
                    best = m;
                }
                return;
            }
            for (long v = -budget; v <= budget; ++v) {
                m[static_cast<size_t>(i)] = v;
                walk(i + 1, budget - std::abs(v));
            }
            m[static_cast<size_t>(i)] = 0;
        };
        walk(0, box);
        if (best_h >= 0) rep.best_relation = RelationScan{best, best_h, box};
    }
    rep.escape_bound = Rat(kEscapeCoeff * rep.coeff_height + kEscapeChi * rep.chi_plus);
    rep.escape_holds =
        rep.best_relation && Rat(rep.best_relation->height) <= rep.escape_bound;
    return rep;
}

RamifiedCoverSpec make_ramified_cover_spec(FormSystem system, PlaceSet s, Place p) {
    if (system.forms.size() != 3 || (system.forms.empty() ? 0 : system.forms[0].arity()) != 3)
        throw std::invalid_argument("ramified cover needs three plane forms");
    long total = 0;
    for (long d : system.degrees) total += d;
    if (total < 4)
        throw std::invalid_argument("degenerate system: total degree must be at least n + 2");
    if (p.degree() != 1)
        throw std::invalid_argument("specialization place must have degree 1");
    if (jacobian_form(system).is_zero())
        throw std::invalid_argument("degenerate system: the ramification form vanishes");
    return {std::move(system), std::move(s), std::move(p)};
}

RamifiedCoverReport ramified_cover_report(const RamifiedCoverSpec& spec,
                                          const ProjectivePoint& x, const Rat& epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    const auto& forms = spec.system.forms;
    size_t count = forms.size();
    if (x.dimension() + 1 != forms[0].arity())
        throw std::invalid_argument("point dimension does not match the forms");

    std::vector<long> divisor_counts;
    for (size_t i = 0; i < count; ++i) {
        DivisorDecomposition dd = divisor_decomposition(forms[i], x, spec.s);
        divisor_counts.push_back(dd.counting.total);
        if (dd.counting.total != 0)
            throw std::invalid_argument("point is not S-integral: N_{D" + std::to_string(i + 1) +
                                        ",S} = " + std::to_string(dd.counting.total));
    }

    std::vector<long> b = spec.system.lcm_exponents;
    long b_total = spec.system.degrees[0] * b[0];
    std::vector<RationalFunction> xc = x.coords_rf();

    std::vector<MultiPoly> powered;
    for (size_t i = 0; i < count; ++i) powered.push_back(mp_pow(forms[i], b[i]));
    RationalFunction denom = powered.back().eval(xc);
    std::vector<RationalFunction> u;
    for (size_t i = 0; i + 1 < count; ++i) u.push_back(powered[i].eval(xc) / denom);

    std::vector<bool> u_unit, u_enl_unit;
    for (const auto& ui : u) u_unit.push_back(is_s_unit(ui, spec.s));

    PlaceSet s_enl = spec.s;
    std::vector<Place> added;
    for (const auto& form : forms)
        for (const auto& [e, c] : form.terms())
            for (const auto& pl : support(c))
                if (!s_enl.contains(pl)) {
                    s_enl = s_enl.with(pl);
                    added.push_back(pl);
                }
    std::sort(added.begin(), added.end());
    for (const auto& ui : u) u_enl_unit.push_back(is_s_unit(ui, s_enl));

    MultiPoly jac = jacobian_form(spec.system);
    MultiPoly jac_p = specialize(jac, spec.p);
    std::vector<MultiPoly> spec_forms;
    for (const auto& form : forms) spec_forms.push_back(specialize(form, spec.p));
    bool transversal = transversal_intersections(spec_forms);
    SpecializationCertificate position = general_position_by_specialization(forms, spec.p);
    std::vector<MultiPoly> with_jac = forms;
    with_jac.push_back(jac);
    SpecializationCertificate ramification =
        general_position_by_specialization(with_jac, spec.p);

    long h_x = height_point(x);
    std::vector<RationalFunction> one_u;
    one_u.push_back(RationalFunction(Rat(1)));
    for (const auto& ui : u) one_u.push_back(ui);
    long h_one_u = height_point(ProjectivePoint(one_u));
    long deviation = h_one_u - b_total * h_x;

    std::vector<RationalFunction> all_coeffs;
    for (const auto& form : powered)
        for (const auto& [e, c] : form.terms()) all_coeffs.push_back(c);
    long coeff_height = height_point(ProjectivePoint(all_coeffs));
    long c_prime = coeff_height + static_cast<long>(count) * b_total;
    bool within = deviation <= c_prime && -deviation <= c_prime;

    RationalFunction f_last = forms.back().eval(xc);
    bool log_identity = true;
    for (size_t i = 0; i + 1 < count; ++i) {
        RationalFunction fi = forms[i].eval(xc);
        RationalFunction lhs = derive(u[i]) / u[i];
        RationalFunction rhs = RationalFunction(Rat(b[i])) * (derive(fi) / fi) -
                               RationalFunction(Rat(b.back())) * (derive(f_last) / f_last);
        if (!(lhs == rhs)) log_identity = false;
    }

    return RamifiedCoverReport{x,
                               b,
                               b_total,
                               u,
                               u_unit,
                               s_enl,
                               added,
                               u_enl_unit,
                               divisor_counts,
                               jac,
                               jac.total_degree(),
                               jac_p,
                               transversal,
                               position,
                               ramification,
                               h_x,
                               h_one_u,
                               deviation,
                               coeff_height,
                               c_prime,
                               within,
                               log_identity,
                               epsilon};
}

}  // namespace ffabc
