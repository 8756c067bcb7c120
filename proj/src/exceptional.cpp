#include "ffabc/exceptional.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ffabc/factor.hpp"

namespace ffabc {

namespace {

using KPoly = UPoly<RationalFunction>;          // polynomials over K in one indeterminate
using KField = PolyFraction<RationalFunction>;  // its fraction field

UniPoly poly_lcm(const UniPoly& x, const UniPoly& y) {
    return ((x * y) / poly_gcd(x, y)).monic();
}

// Coefficients of the powers of Y, each a polynomial in X.
std::vector<KPoly> y_coefficients(const MultiPoly& f) {
    std::vector<std::vector<RationalFunction>> rows(static_cast<size_t>(f.degree_in(1)) + 1);
    for (const auto& [e, c] : f.terms()) {
        auto& row = rows[static_cast<size_t>(e[1])];
        if (row.size() <= static_cast<size_t>(e[0])) row.resize(static_cast<size_t>(e[0]) + 1);
        row[static_cast<size_t>(e[0])] = c;
    }
    std::vector<KPoly> out;
    out.reserve(rows.size());
    for (auto& row : rows) out.push_back(KPoly::from_coeffs(std::move(row)));
    return out;
}

/* Roots of p in K itself, by the rational-root sieve over Q[t]: a root
 * written in lowest terms divides the outer coefficients, so candidates are
 * scalar multiples of divisor quotients, and the scalar is pinned down as a
 * common rational root across the powers of t.  Returns the roots and the
 * cofactor left after dividing them out; when the divisor lattice is too
 * large the whole input is returned undivided. */
std::pair<std::vector<RationalFunction>, KPoly> k_rational_roots(const KPoly& p0) {
    UniPoly den(Rat(1));
    for (const auto& c : p0.coeffs()) den = poly_lcm(den, c.den());
    std::vector<UniPoly> a;
    a.reserve(p0.coeffs().size());
    for (const auto& c : p0.coeffs()) a.push_back((c * RationalFunction(den)).num());
    UniPoly cont;
    for (const auto& ai : a) cont = poly_gcd(cont, ai);
    if (cont.degree() > 0)
        for (auto& ai : a) ai = ai / cont;
    const int n = static_cast<int>(a.size()) - 1;

    auto divisors = [](const UniPoly& f) {
        std::vector<UniPoly> out{UniPoly(Rat(1))};
        if (f.degree() < 1) return out;
        for (const auto& [irr, mult] : factor_poly(f).factors) {
            size_t base = out.size();
            if (base * static_cast<size_t>(mult + 1) > 64) return std::vector<UniPoly>{};
            UniPoly power = irr;
            for (int e = 1; e <= mult; ++e) {
                for (size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
                power = power * irr;
            }
        }
        return out;
    };
    std::vector<UniPoly> nums = divisors(a.front());
    std::vector<UniPoly> dens = divisors(a.back());
    if (nums.empty() || dens.empty()) return {{}, p0};

    std::set<RationalFunction> roots;
    for (const auto& pn : nums) {
        for (const auto& qn : dens) {
            if (poly_gcd(pn, qn).degree() > 0) continue;
            /* A root c * pn / qn forces sum_i a_i pn^i qn^{n-i} c^i = 0 as a
             * polynomial identity in t; each power of t pins c further. */
            std::vector<UniPoly> scaled(a.size());
            long tdeg = -1;
            for (int i = 0; i <= n; ++i) {
                scaled[static_cast<size_t>(i)] =
                    a[static_cast<size_t>(i)] * pn.pow(static_cast<unsigned long>(i)) *
                    qn.pow(static_cast<unsigned long>(n - i));
                tdeg = std::max<long>(tdeg, scaled[static_cast<size_t>(i)].degree());
            }
            UniPoly pin;
            for (long j = 0; j <= tdeg; ++j) {
                std::vector<Rat> row(a.size());
                for (int i = 0; i <= n; ++i) row[static_cast<size_t>(i)] = scaled[static_cast<size_t>(i)][static_cast<int>(j)];
                pin = poly_gcd(pin, UniPoly::from_coeffs(std::move(row)));
                if (!pin.is_zero_poly() && pin.degree() == 0) break;
            }
            if (pin.degree() < 1) continue;
            for (const auto& [irr, mult] : factor_poly(pin).factors) {
                (void)mult;
                if (irr.degree() != 1) continue;
                Rat c0 = -irr[0];
                if (c0 == 0) continue;
                RationalFunction cand = RationalFunction(UniPoly(c0)) * RationalFunction(pn, qn);
                if (is_zero(p0.eval(cand))) roots.insert(cand);
            }
        }
    }

    KPoly cofactor = p0;
    for (const auto& r : roots) {
        KPoly lin = KPoly::from_coeffs({-r, RationalFunction(1)});
        while (true) {
            auto [q, rem] = cofactor.divmod(lin);
            if (!rem.is_zero_poly()) break;
            cofactor = q;
        }
    }
    return {std::vector<RationalFunction>(roots.begin(), roots.end()), cofactor};
}

// Nonzero-root constraints of p, exact where the roots lie in K.
std::vector<LambdaConstraint> lambda_constraints_of(const KPoly& p) {
    std::vector<LambdaConstraint> out;
    if (p.degree() < 1) return out;
    bool constant_coeffs = true;
    for (const auto& c : p.coeffs())
        if (!c.is_constant()) {
            constant_coeffs = false;
            break;
        }
    if (constant_coeffs) {
        std::vector<Rat> qc;
        qc.reserve(p.coeffs().size());
        for (const auto& c : p.coeffs()) qc.push_back(c.constant_value());
        for (const auto& [irr, mult] : factor_poly(UniPoly::from_coeffs(std::move(qc))).factors) {
            (void)mult;
            if (irr.degree() == 1) {
                Rat root = -irr[0];
                if (root == 0) continue;
                out.push_back(LambdaConstraint::exact_value(RationalFunction(UniPoly(root))));
            } else {
                std::vector<RationalFunction> lift;
                lift.reserve(static_cast<size_t>(irr.degree()) + 1);
                for (int i = 0; i <= irr.degree(); ++i) lift.push_back(RationalFunction(UniPoly(irr[i])));
                out.push_back(LambdaConstraint::root_of(KPoly::from_coeffs(std::move(lift))));
            }
        }
    } else {
        auto [roots, cofactor] = k_rational_roots(p);
        for (const auto& r : roots)
            if (!r.is_zero_value()) out.push_back(LambdaConstraint::exact_value(r));
        if (cofactor.degree() >= 1) out.push_back(LambdaConstraint::root_of(cofactor.monic()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Split off the lowest power of the indeterminate.  p must be nonzero.
std::pair<KPoly, bool> strip_zero_root(const KPoly& p) {
    size_t val = 0;
    while (is_zero(p[static_cast<int>(val)])) ++val;
    if (val == 0) return {p, false};
    std::vector<RationalFunction> tail(p.coeffs().begin() + static_cast<long>(val),
                                       p.coeffs().end());
    return {KPoly::from_coeffs(std::move(tail)), true};
}

LambdaConstraint invert_constraint(const LambdaConstraint& c) {
    if (c.exact) return LambdaConstraint::exact_value(field_inv(c.value));
    // Roots invert via the reciprocal polynomial; no zero roots, so the
    // degree is preserved.
    std::vector<RationalFunction> rev(c.defining.coeffs().rbegin(), c.defining.coeffs().rend());
    return LambdaConstraint::root_of(KPoly::from_coeffs(std::move(rev)).monic());
}

bool curve_less(const ExceptionalCurve& x, const ExceptionalCurve& y) {
    long sx = std::labs(x.m1) + std::labs(x.m2);
    long sy = std::labs(y.m1) + std::labs(y.m2);
    if (sx != sy) return sx < sy;
    if (x.m1 != y.m1) return x.m1 < y.m1;
    if (x.m2 != y.m2) return x.m2 < y.m2;
    return x.constraint < y.constraint;
}

}  // namespace

PairNormalization normalize_pair(long m1, long m2) {
    if (m1 == 0 && m2 == 0) throw std::invalid_argument("pair (0, 0) has no normalization");
    long g = std::gcd(std::labs(m1), std::labs(m2));
    m1 /= g;
    m2 /= g;
    struct Move {
        long p, q;
        bool swapped, negated;
    };
    const Move moves[] = {
        {m1, m2, false, false},
        {m2, m1, true, false},
        {-m1, -m2, false, true},
        {-m2, -m1, true, true},
    };
    PairNormalization n{};
    for (const auto& mv : moves) {
        // The cone: q >= p >= 0 for matching signs, else 0 < q <= -p.
        if (mv.q > 0 && (mv.p >= 0 ? mv.q >= mv.p : mv.q <= -mv.p)) {
            n.m1 = mv.p;
            n.m2 = mv.q;
            n.swapped = mv.swapped;
            n.negated = mv.negated;
            break;
        }
    }
    if (n.m1 == 0) {
        n.a = 0;
        n.b = 1;
    } else {
        for (long b = 1; b <= std::labs(n.m1); ++b) {
            if ((1 - n.m2 * b) % n.m1 == 0) {
                n.b = b;
                n.a = (1 - n.m2 * b) / n.m1;
                break;
            }
        }
    }
    return n;
}

bool bivariate_squarefree(const MultiPoly& f) {
    if (f.arity() != 2) throw std::invalid_argument("squarefree test needs two variables");
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    std::vector<KPoly> rows = y_coefficients(f);
    KPoly content;
    for (const auto& r : rows) content = poly_gcd(content, r);
    if (content.degree() > 0 && poly_gcd(content, content.derivative()).degree() > 0) return false;
    std::vector<KField> pp;
    pp.reserve(rows.size());
    for (const auto& r : rows) pp.push_back(KField(content.degree() > 0 ? r / content : r));
    UPoly<KField> prim = UPoly<KField>::from_coeffs(std::move(pp));
    if (prim.degree() < 1) return true;
    return poly_gcd(prim, prim.derivative()).degree() == 0;
}

std::optional<std::string> hypothesis_violation(const MultiPoly& g) {
    if (g.arity() != 2) return "G must be a polynomial in two variables";
    if (g.is_zero()) return "G is zero";
    if (g.is_constant()) return "G is constant";
    if (g.min_exponent(0) > 0) return "X divides G";
    if (g.min_exponent(1) > 0) return "Y divides G";
    if (!bivariate_squarefree(g)) return "G is not squarefree";
    return std::nullopt;
}

SubstitutionResult substitute_b(const MultiPoly& g, const PairNormalization& norm) {
    if (auto why = hypothesis_violation(g)) throw std::invalid_argument(*why);
    if (norm.m1 * norm.a + norm.m2 * norm.b != 1 || norm.m2 <= 0)
        throw std::invalid_argument("normalization is not unimodular");
    long min_l = 0, min_t = 0;
    bool first = true;
    for (const auto& [e, c] : g.terms()) {
        (void)c;
        long el = norm.a * e[0] + norm.b * e[1];
        long et = norm.m2 * e[0] - norm.m1 * e[1];
        if (first || el < min_l) min_l = el;
        if (first || et < min_t) min_t = et;
        first = false;
    }
    MultiPoly b(2);
    for (const auto& [e, c] : g.terms()) {
        long el = norm.a * e[0] + norm.b * e[1] - min_l;
        long et = norm.m2 * e[0] - norm.m1 * e[1] - min_t;
        b.add_term({static_cast<int>(el), static_cast<int>(et)}, c);
    }
    SubstitutionResult out{std::move(b), min_t, min_l};
    if (out.b.term_count() != g.term_count())
        throw std::logic_error("unimodular substitution changed the term count");
    for (const auto& [e, c] : out.b.terms()) {
        long el = e[0] + out.lambda_power;
        long et = e[1] + out.t_power;
        long i = norm.m1 * el + norm.b * et;
        long j = norm.m2 * el - norm.a * et;
        auto it = g.terms().find({static_cast<int>(i), static_cast<int>(j)});
        if (i < 0 || j < 0 || it == g.terms().end() || it->second != c)
            throw std::logic_error("substitution identity failed to round-trip");
    }
    if (out.b.min_exponent(0) != 0 || out.b.min_exponent(1) != 0)
        throw std::logic_error("minimal powers not extracted");
    if (out.b.is_constant()) throw std::logic_error("B collapsed to a constant");
    if (!bivariate_squarefree(out.b)) throw std::logic_error("B lost squarefreeness");
    return out;
}

ResultantLocus resultant_locus(const SubstitutionResult& sub) {
    const MultiPoly& b = sub.b;
    if (b.arity() != 2 || b.degree_in(1) < 1)
        throw std::invalid_argument("resultant needs B nonconstant in T");
    std::vector<KField> tc(static_cast<size_t>(b.degree_in(1)) + 1, KField(0));
    for (const auto& [e, c] : b.terms())
        tc[static_cast<size_t>(e[1])] = tc[static_cast<size_t>(e[1])] + KField(KPoly::monomial(c, e[0]));
    UPoly<KField> bl = UPoly<KField>::from_coeffs(std::move(tc));
    bl = bl * KField::x().pow(sub.lambda_power);
    KField res = poly_resultant(bl, bl.derivative());
    if (is_zero(res)) throw std::domain_error("resultant vanished: B has a repeated factor in T");
    // The L^{M2} prefactor and clearing only move the result by a power of L.
    const KPoly& rden = res.den();
    for (int i = 0; i < rden.degree(); ++i)
        if (!is_zero(rden[i]))
            throw std::logic_error("resultant denominator is not a power of the coset variable");
    ResultantLocus out;
    auto [stripped, had_zero] = strip_zero_root(res.num());
    out.r = res.num().monic();
    out.zero_root_excluded = had_zero;
    out.alpha = lambda_constraints_of(stripped);
    return out;
}

TopFormRoots top_form_roots(const MultiPoly& g) {
    if (g.arity() != 2) throw std::invalid_argument("top form needs two variables");
    if (g.is_zero() || g.is_constant()) throw std::invalid_argument("G must be nonconstant");
    long d = g.total_degree();
    MultiPoly gd = g.homogeneous_part(d);
    std::vector<RationalFunction> cs(static_cast<size_t>(d) + 1, RationalFunction());
    for (const auto& [e, c] : gd.terms()) cs[static_cast<size_t>(e[1])] = c;
    KPoly phi = KPoly::from_coeffs(std::move(cs));
    TopFormRoots out;
    auto [stripped, had_zero] = strip_zero_root(phi);
    out.g_top = phi.monic();
    out.zero_root_excluded = had_zero;
    out.delta = lambda_constraints_of(stripped);
    return out;
}

ExceptionalSetDescription build_exceptional_set(const MultiPoly& g, long m_bound,
                                                const PlaceSet& s) {
    if (m_bound < 1) throw std::invalid_argument("m_bound must be positive");
    if (auto why = hypothesis_violation(g)) throw std::invalid_argument(*why);
    ExceptionalSetDescription out;
    out.g = g;
    out.s = s;
    out.m_bound = m_bound;
    out.includes_g_zero_locus = true;
    out.constant_coefficients = true;
    for (const auto& [e, c] : g.terms()) {
        (void)e;
        if (!c.is_constant()) {
            out.constant_coefficients = false;
            break;
        }
    }
    const MultiPoly swapped = g.swap_vars(0, 1);
    for (long k1 = -m_bound; k1 <= m_bound; ++k1) {
        for (long k2 = 0; std::labs(k1) + k2 <= m_bound; ++k2) {
            if (k2 == 0 && k1 <= 0) continue;
            if (std::gcd(std::labs(k1), k2) != 1) continue;
            PairNormalization norm = normalize_pair(k1, k2);
            const MultiPoly& gm = norm.swapped ? swapped : g;
            SubstitutionResult sub = substitute_b(gm, norm);
            std::vector<LambdaConstraint> found;
            if (sub.b.degree_in(1) >= 1)
                for (auto& c : resultant_locus(sub).alpha) found.push_back(std::move(c));
            if (norm.m1 == -1 && norm.m2 == 1)
                for (auto& c : top_form_roots(gm).delta) found.push_back(std::move(c));
            for (auto& c : found) {
                LambdaConstraint mapped = norm.negated ? invert_constraint(c) : std::move(c);
                if (mapped.exact && !is_s_unit(mapped.value, s)) continue;
                out.curves.push_back({k1, k2, std::move(mapped)});
            }
        }
    }
    std::sort(out.curves.begin(), out.curves.end(), curve_less);
    out.curves.erase(std::unique(out.curves.begin(), out.curves.end(),
                                 [](const ExceptionalCurve& x, const ExceptionalCurve& y) {
                                     return x.m1 == y.m1 && x.m2 == y.m2 &&
                                            x.constraint == y.constraint;
                                 }),
                     out.curves.end());
    long chi = chi_s(s);
    long floor = poly_height(g).relevant + (chi > 1 ? chi : 1);
    std::ostringstream note;
    note << "degeneracy bound holds above the height threshold (1/eps) * (vh(G) + max(1, chi_S))"
         << " = (1/eps) * " << floor
         << "; points at or below it are classified low_height, not exceptional";
    out.height_threshold_note = note.str();
    return out;
}

std::string lambda_poly_str(const UPoly<RationalFunction>& p, const std::string& var) {
    if (is_zero(p)) return "0";
    std::string out;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        RationalFunction c = p[i];
        if (is_zero(c)) continue;
        bool neg = sgn(c.num().lc()) < 0;
        if (neg) c = -c;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string cs = ratfunc_str(c);
        if (i == 0) {
            out += cs;
            continue;
        }
        if (cs != "1") {
            bool wrap = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
            out += wrap ? "(" + cs + ")" : cs;
            out += "*";
        }
        out += var;
        if (i > 1) {
            out += "^";
            out += std::to_string(i);
        }
    }
    return out;
}

std::string curve_str(const ExceptionalCurve& c) {
    auto piece = [](const char* base, long e) {
        std::string s = base;
        if (e > 1) {
            s += "^";
            s += std::to_string(e);
        }
        return s;
    };
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& p : v) {
            if (!s.empty()) s += "*";
            s += p;
        }
        return s;
    };
    long e0 = c.m1 + c.m2;
    std::vector<std::string> lhs, rhs;
    if (c.m1 > 0)
        lhs.push_back(piece("x1", c.m1));
    else if (c.m1 < 0)
        rhs.push_back(piece("x1", -c.m1));
    if (c.m2 > 0)
        lhs.push_back(piece("x2", c.m2));
    else if (c.m2 < 0)
        rhs.push_back(piece("x2", -c.m2));
    if (e0 < 0)
        lhs.push_back(piece("x0", -e0));
    else if (e0 > 0)
        rhs.push_back(piece("x0", e0));
    std::string left = join(lhs);
    if (!c.constraint.exact)
        return left + " = " + (rhs.empty() ? "lambda" : "lambda*" + join(rhs)) +
               ", lambda a root of " + lambda_poly_str(c.constraint.defining);
    std::string ls = ratfunc_str(c.constraint.value);
    bool wrap = ls.find(' ') != std::string::npos || ls.find('/') != std::string::npos;
    std::string lw = wrap ? "(" + ls + ")" : ls;
    std::string right;
    if (rhs.empty())
        right = lw;
    else if (ls == "1")
        right = join(rhs);
    else if (ls == "-1")
        right = "-" + join(rhs);
    else
        right = lw + "*" + join(rhs);
    return left + " = " + right;
}

MemberResult member(const ProjectivePoint& x, const ExceptionalSetDescription& desc) {
    if (x.dimension() != 2) throw std::invalid_argument("membership needs a point of P^2");
    std::vector<RationalFunction> c = x.coords_rf();
    for (const auto& ci : c)
        if (ci.is_zero_value())
            throw std::invalid_argument("point must avoid the coordinate hyperplanes");
    RationalFunction u1 = c[1] / c[0];
    RationalFunction u2 = c[2] / c[0];
    MemberResult out;
    for (const auto& curve : desc.curves) {
        RationalFunction lam = u1.pow(curve.m1) * u2.pow(curve.m2);
        bool hit = curve.constraint.exact
                       ? lam == curve.constraint.value
                       : lam.is_constant() && is_zero(curve.constraint.defining.eval(lam));
        if (hit) {
            out.member = true;
            out.curve = curve;
            out.witness = curve_str(curve);
            return out;
        }
    }
    if (desc.includes_g_zero_locus && desc.g.eval({u1, u2}).is_zero_value()) {
        out.member = true;
        out.on_g_zero_locus = true;
        out.witness = "G(x) = 0";
    }
    return out;
}

}  // namespace ffabc
