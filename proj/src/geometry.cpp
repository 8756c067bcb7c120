#include "ffabc/geometry.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "ffabc/heights.hpp"

namespace ffabc {

namespace {

using XPoly = UPoly<RationalFunction>;          // K[x], K = Q(t)
using XField = PolyFraction<RationalFunction>;  // K(x)
using BPoly = UPoly<XField>;                    // K(x)[y]

/* Bivariate polynomials over K are stored as their dense list of
 * y-coefficients in K[x], highest coefficient nonzero.  Empty means zero.
 *
 * Gcds at both levels run as primitive pseudo-remainder sequences: plain
 * Euclid over the fraction towers lets the t-degrees of intermediate
 * coefficients double per step, while stripping contents after every
 * pseudo-division keeps them linear. */
using YPoly = std::vector<XPoly>;

void ypoly_trim(YPoly& f) {
    while (!f.empty() && f.back().is_zero_poly()) f.pop_back();
}

long ydeg(const YPoly& f) { return static_cast<long>(f.size()) - 1; }

bool ypoly_nonconstant(const YPoly& f) {
    if (ydeg(f) >= 1) return true;
    return ydeg(f) == 0 && f[0].degree() >= 1;
}

// Rows of y-powers; variables (x, y) are positions 0 and 1.
YPoly ypoly_from(const MultiPoly& f) {
    YPoly rows;
    for (const auto& [e, c] : f.terms()) {
        size_t r = static_cast<size_t>(e[1]);
        if (rows.size() <= r) rows.resize(r + 1);
        rows[r] = rows[r] + XPoly::monomial(c, e[0]);
    }
    ypoly_trim(rows);
    return rows;
}

BPoly to_b(const YPoly& f) {
    std::vector<XField> cs;
    cs.reserve(f.size());
    for (const auto& r : f) cs.emplace_back(r);
    return BPoly::from_coeffs(std::move(cs));
}

/* Elements of K[x] cleared to primitive polynomials in Q[t][x]: a dense
 * list of x-coefficients in Q[t] whose gcd is 1. */
using TXPoly = std::vector<UniPoly>;

void tx_trim(TXPoly& f) {
    while (!f.empty() && f.back().is_zero_poly()) f.pop_back();
}

void tx_make_primitive(TXPoly& f) {
    tx_trim(f);
    if (f.empty()) return;
    UniPoly g;
    for (const auto& c : f) g = poly_gcd(g, c);
    if (g.degree() > 0)
        for (auto& c : f) c = c / g;
}

TXPoly tx_from(const XPoly& f) {
    UniPoly l(Rat(1));
    for (int i = 0; i <= f.degree(); ++i) {
        const RationalFunction& c = f[i];
        if (!is_zero(c)) l = ((l * c.den()) / poly_gcd(l, c.den())).monic();
    }
    TXPoly rows;
    for (int i = 0; i <= f.degree(); ++i) rows.push_back(f[i].num() * (l / f[i].den()));
    tx_make_primitive(rows);
    return rows;
}

XPoly tx_to(const TXPoly& f) {
    std::vector<RationalFunction> cs;
    cs.reserve(f.size());
    for (const auto& c : f) cs.emplace_back(c);
    return XPoly::from_coeffs(std::move(cs));
}

// A := lc(B) * A - lc(A) * x^(dA-dB) * B, one degree-lowering step at a time.
TXPoly tx_pseudo_rem(TXPoly a, const TXPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        UniPoly la = a.back(), lb = b.back();
        size_t sh = a.size() - b.size();
        for (auto& c : a) c = c * lb;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + sh] = a[i + sh] - b[i] * la;
        tx_trim(a);
    }
    return a;
}

// Monic gcd in K[x], computed through the primitive sequence in Q[t][x].
XPoly xgcd(const XPoly& a, const XPoly& b) {
    if (a.is_zero_poly()) return b.monic();
    if (b.is_zero_poly()) return a.monic();
    TXPoly u = tx_from(a), v = tx_from(b);
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        TXPoly r = tx_pseudo_rem(u, v);
        tx_make_primitive(r);
        u = std::move(v);
        v = std::move(r);
    }
    return tx_to(u).monic();
}

XPoly content_of(const YPoly& f) {
    XPoly c;
    for (const auto& r : f) c = xgcd(c, r);
    return c;
}

void ypoly_strip_content(YPoly& f) {
    ypoly_trim(f);
    if (f.empty()) return;
    XPoly c = content_of(f);
    if (c.degree() > 0)
        for (auto& r : f) r = r / c;
    RationalFunction s = field_inv(f.back().lc());
    for (auto& r : f) r = r * s;
}

YPoly y_pseudo_rem(YPoly a, const YPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        XPoly la = a.back(), lb = b.back();
        size_t sh = a.size() - b.size();
        for (auto& r : a) r = r * lb;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + sh] = a[i + sh] - b[i] * la;
        ypoly_trim(a);
    }
    return a;
}

// Gauss: gcd over K[x,y] splits as gcd of contents times gcd of primitive parts.
YPoly bivar_gcd(const YPoly& a, const YPoly& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    XPoly cg = xgcd(content_of(a), content_of(b));
    YPoly u = a, v = b;
    ypoly_strip_content(u);
    ypoly_strip_content(v);
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        YPoly r = y_pseudo_rem(u, v);
        ypoly_strip_content(r);
        u = std::move(v);
        v = std::move(r);
    }
    YPoly out;
    out.reserve(u.size());
    for (const auto& r : u) out.push_back(r * cg);
    if (!out.empty()) {
        RationalFunction s = field_inv(out.back().lc());
        for (auto& r : out) r = r * s;
    }
    return out;
}

YPoly ydivide(const YPoly& f, const YPoly& c) {
    auto [q, rem] = to_b(f).divmod(to_b(c));
    if (!rem.is_zero_poly()) throw std::logic_error("bivariate division not exact");
    YPoly rows;
    for (int i = 0; i <= q.degree(); ++i) {
        if (q[i].den().degree() != 0) throw std::logic_error("bivariate quotient not polynomial");
        rows.push_back(q[i].num() * field_inv(q[i].den().lc()));
    }
    ypoly_trim(rows);
    return rows;
}

/* Sylvester determinant by fraction-free elimination; every intermediate
 * entry is a minor of the original matrix and the divisions are exact, so
 * nothing swells beyond the size of the answer. */
XPoly resultant_y(const YPoly& a, const YPoly& b) {
    size_t da = static_cast<size_t>(ydeg(a)), db = static_cast<size_t>(ydeg(b));
    size_t n = da + db;
    std::vector<std::vector<XPoly>> m(n, std::vector<XPoly>(n));
    for (size_t i = 0; i < db; ++i)
        for (size_t j = 0; j <= da; ++j) m[i][i + j] = a[da - j];
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j <= db; ++j) m[db + i][i + j] = b[db - j];
    XPoly prev{RationalFunction(1)};
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero_poly()) {
            size_t r = k + 1;
            while (r < n && m[r][k].is_zero_poly()) ++r;
            if (r == n) return XPoly();
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

XPoly xsquarefree(const XPoly& f) {
    if (f.degree() <= 0) return XPoly(RationalFunction(1));
    return (f / xgcd(f, f.derivative())).monic();
}

/* Dynamic evaluation over the residue classes of a squarefree modulus m.
 * Each output branch carries a factor of m and the y-degree of the gcd of
 * the input list at every root of that factor: the pivots inverted along
 * the way are invertible on the whole branch, so one run of the Euclidean
 * reduction is valid at all of its roots simultaneously.  A leading
 * coefficient that is a zero divisor splits the branch in two before any
 * division happens.  gcd_ydeg -1 records that every poly vanishes there. */
struct D5Branch {
    XPoly modulus;
    long gcd_ydeg;
};

std::vector<D5Branch> d5_multi_gcd(const XPoly& m0, std::vector<YPoly> polys0) {
    struct Task {
        XPoly m;
        std::vector<YPoly> polys;
    };
    std::vector<D5Branch> out;
    std::vector<Task> work;
    work.push_back({m0.monic(), std::move(polys0)});
    while (!work.empty()) {
        Task task = std::move(work.back());
        work.pop_back();
        const XPoly& m = task.m;
        auto& polys = task.polys;
        for (auto& f : polys) {
            for (auto& c : f) c = c % m;
            ypoly_trim(f);
        }
        // m squarefree: gcd(lc, m) is 1, or a proper factor splitting the branch.
        bool split = false;
        for (const auto& f : polys) {
            if (f.empty()) continue;
            XPoly g = xgcd(f.back(), m);
            if (g.degree() == 0) continue;
            work.push_back({g, polys});
            work.push_back({m / g, polys});
            split = true;
            break;
        }
        if (split) continue;
        std::vector<size_t> nz;
        for (size_t i = 0; i < polys.size(); ++i)
            if (!polys[i].empty()) nz.push_back(i);
        if (nz.empty()) {
            out.push_back({m, -1});
            continue;
        }
        size_t ib = nz[0];
        for (size_t i : nz)
            if (ydeg(polys[i]) < ydeg(polys[ib])) ib = i;
        if (ydeg(polys[ib]) == 0 || nz.size() == 1) {
            out.push_back({m, ydeg(polys[ib])});
            continue;
        }
        size_t ia = (nz[0] == ib) ? nz[1] : nz[0];
        YPoly& a = polys[ia];
        const YPoly& b = polys[ib];
        auto [g, u, v] = poly_extended_gcd(b.back(), m);
        (void)v;
        if (g.degree() != 0) throw std::logic_error("non-invertible pivot on a branch");
        XPoly inv = u % m;
        while (!a.empty() && ydeg(a) >= ydeg(b)) {
            XPoly f = (a.back() * inv) % m;
            long sh = ydeg(a) - ydeg(b);
            for (long i = 0; i <= ydeg(b); ++i) {
                size_t k = static_cast<size_t>(i + sh);
                a[k] = (a[k] - f * b[static_cast<size_t>(i)]) % m;
            }
            ypoly_trim(a);
        }
        work.push_back(std::move(task));
    }
    return out;
}

/* Common zero of a list of bivariate polynomials over an algebraic closure.
 * Zero entries were dropped by the caller or are dropped here; a nonzero
 * constant decides immediately.  Two nonconstant entries either share a
 * nontrivial gcd, which splits the problem into the gcd locus and the
 * cofactor locus, or are coprime, in which case the x-coordinates of any
 * common zero of the whole list are confined to the roots of one resultant
 * (or of the y-free entry) and the finite candidates are checked exactly. */
bool affine_common_zero(std::vector<YPoly> polys) {
    std::erase_if(polys, [](const YPoly& f) { return f.empty(); });
    if (polys.empty()) return true;
    for (const auto& f : polys)
        if (!ypoly_nonconstant(f)) return false;
    if (polys.size() == 1) return true;
    YPoly c = bivar_gcd(polys[0], polys[1]);
    if (ypoly_nonconstant(c)) {
        std::vector<YPoly> on_gcd(polys.begin() + 2, polys.end());
        std::vector<YPoly> off_gcd = on_gcd;
        on_gcd.insert(on_gcd.begin(), c);
        off_gcd.insert(off_gcd.begin(), ydivide(polys[1], c));
        off_gcd.insert(off_gcd.begin(), ydivide(polys[0], c));
        return affine_common_zero(std::move(on_gcd)) || affine_common_zero(std::move(off_gcd));
    }
    long d0 = ydeg(polys[0]), d1 = ydeg(polys[1]);
    if (d0 == 0 && d1 == 0) return false;  // coprime in K[x]
    XPoly m;
    if (d0 == 0) {
        m = polys[0][0];
    } else if (d1 == 0) {
        m = polys[1][0];
    } else {
        m = resultant_y(polys[0], polys[1]);
        if (m.is_zero_poly()) throw std::logic_error("vanishing resultant of coprime polynomials");
    }
    if (m.degree() == 0) return false;
    for (const D5Branch& br : d5_multi_gcd(xsquarefree(m), polys))
        if (br.gcd_ydeg >= 1 || br.gcd_ydeg == -1) return true;
    return false;
}

void check_plane_form(const MultiPoly& f, const char* who) {
    if (f.arity() != 3) throw std::invalid_argument(std::string(who) + ": forms must be ternary");
    if (f.is_zero()) throw std::invalid_argument(std::string(who) + ": zero form");
    if (!f.is_homogeneous()) throw std::invalid_argument(std::string(who) + ": inhomogeneous form");
}

// F(s, 1, 0); identically zero exactly when x2 divides F.
XPoly line_restrict(const MultiPoly& f) {
    XPoly p;
    for (const auto& [e, c] : f.terms())
        if (e[2] == 0) p = p + XPoly::monomial(c, e[0]);
    return p;
}

MultiPoly determinant(const std::vector<std::vector<MultiPoly>>& m, int arity) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    MultiPoly acc(arity);
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<MultiPoly>> minor;
        minor.reserve(n - 1);
        for (size_t r = 1; r < n; ++r) {
            std::vector<MultiPoly> row;
            row.reserve(n - 1);
            for (size_t cidx = 0; cidx < n; ++cidx)
                if (cidx != j) row.push_back(m[r][cidx]);
            minor.push_back(std::move(row));
        }
        MultiPoly term = m[0][j] * determinant(minor, arity);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

MultiPoly mp_pow(const MultiPoly& f, long e) {
    MultiPoly acc = MultiPoly::constant(f.arity(), RationalFunction(1));
    for (long i = 0; i < e; ++i) acc = acc * f;
    return acc;
}

}  // namespace

FormSystem make_form_system(const std::vector<MultiPoly>& forms) {
    if (forms.empty()) throw std::invalid_argument("form system: no forms");
    int ar = forms.front().arity();
    FormSystem sys;
    long l = 1;
    for (const auto& f : forms) {
        if (f.arity() != ar) throw std::invalid_argument("form system: mixed arities");
        if (f.is_zero()) throw std::invalid_argument("form system: zero form");
        if (!f.is_homogeneous()) throw std::invalid_argument("form system: inhomogeneous form");
        long d = f.total_degree();
        if (d == 0) throw std::invalid_argument("form system: constant form");
        l = std::lcm(l, d);
        sys.degrees.push_back(d);
    }
    for (long d : sys.degrees) sys.lcm_exponents.push_back(l / d);
    sys.forms = forms;
    return sys;
}

MultiPoly specialize(const MultiPoly& f, const Place& p) {
    if (f.is_zero()) throw std::invalid_argument("specialize: zero form");
    if (p.degree() != 1) throw std::invalid_argument("specialize: place must have degree 1");
    long v = poly_valuation(f, p);
    MultiPoly out(f.arity());
    if (p.is_infinity()) {
        // t_p = 1/t, so dividing by t_p^v multiplies by t^v.
        RationalFunction t = RationalFunction::x();
        for (const auto& [e, c] : f.terms()) {
            RationalFunction s = c * t.pow(v);
            long dn = s.num().degree(), dd = s.den().degree();
            if (dn == dd) out.add_term(e, RationalFunction(Rat(s.num().lc() / s.den().lc())));
        }
    } else {
        Rat a = -p.poly()[0];
        RationalFunction pi(p.poly());
        for (const auto& [e, c] : f.terms()) {
            RationalFunction s = c * pi.pow(-v);
            // v_p(s) >= 0 and s is in lowest terms, so the denominator
            // cannot vanish at the place.
            Rat val = s.num().eval(a) / s.den().eval(a);
            if (!is_zero(val)) out.add_term(e, RationalFunction(val));
        }
    }
    return out;
}

bool projective_common_zero(const std::vector<MultiPoly>& forms) {
    for (const auto& f : forms) check_plane_form(f, "common zero");
    if (forms.empty()) return true;
    const std::vector<RationalFunction> origin = {RationalFunction(1), RationalFunction(0),
                                                  RationalFunction(0)};
    bool at_origin = true;
    for (const auto& f : forms)
        if (!is_zero(f.eval(origin))) {
            at_origin = false;
            break;
        }
    if (at_origin) return true;  // [1:0:0]
    XPoly line_gcd;
    bool line_inside = true;  // the whole line x2 = 0 inside every form
    for (const auto& f : forms) {
        XPoly p = line_restrict(f);
        if (p.is_zero_poly()) continue;
        line_inside = false;
        line_gcd = xgcd(line_gcd, p);
    }
    if (line_inside || line_gcd.degree() >= 1) return true;  // [s:1:0]
    std::vector<YPoly> affine;
    affine.reserve(forms.size());
    for (const auto& f : forms) affine.push_back(ypoly_from(f.dehomogenize(2)));
    return affine_common_zero(std::move(affine));
}

bool general_position_n2(const std::vector<MultiPoly>& forms) {
    for (const auto& f : forms) check_plane_form(f, "general position");
    size_t n = forms.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                if (projective_common_zero({forms[i], forms[j], forms[k]})) return false;
    return true;
}

bool transversal_intersections(const std::vector<MultiPoly>& forms) {
    for (const auto& f : forms) check_plane_form(f, "transversality");
    size_t n = forms.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                if (projective_common_zero({forms[i], forms[j], forms[k]})) return false;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            std::vector<MultiPoly> gi, gj;
            for (int k = 0; k < 3; ++k) {
                gi.push_back(forms[i].partial(k));
                gj.push_back(forms[j].partial(k));
            }
            /* Rank < 2 of the stacked gradients is the vanishing of all
             * three 2x2 minors.  Identically zero minors impose nothing and
             * are dropped; if all three vanish the rank is deficient
             * everywhere and any intersection point of the pair is bad. */
            std::vector<MultiPoly> sys = {forms[i], forms[j]};
            for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
                MultiPoly minor = gi[a] * gj[b] - gi[b] * gj[a];
                if (!minor.is_zero()) sys.push_back(minor);
            }
            if (projective_common_zero(sys)) return false;
        }
    }
    return true;
}

SpecializationCertificate general_position_by_specialization(const std::vector<MultiPoly>& forms,
                                                             const Place& p) {
    SpecializationCertificate cert{p, {}, false, false, true};
    cert.specialized.reserve(forms.size());
    for (const auto& f : forms) cert.specialized.push_back(specialize(f, p));
    cert.in_general_position = general_position_n2(cert.specialized);
    cert.certified = cert.in_general_position;
    cert.inconclusive = !cert.certified;
    return cert;
}

MultiPoly jacobian_form(const FormSystem& sys) {
    size_t n = sys.forms.size();
    int ar = sys.forms.front().arity();
    if (n != static_cast<size_t>(ar))
        throw std::invalid_argument("jacobian: need as many forms as variables");
    std::vector<std::vector<MultiPoly>> m(n);
    for (size_t i = 0; i < n; ++i)
        for (int j = 0; j < ar; ++j) m[i].push_back(sys.forms[i].partial(j));
    return determinant(m, ar);
}

MultiPoly jacobian_form_exponentiated(const FormSystem& sys) {
    size_t n = sys.forms.size();
    int ar = sys.forms.front().arity();
    if (n != static_cast<size_t>(ar))
        throw std::invalid_argument("jacobian: need as many forms as variables");
    std::vector<std::vector<MultiPoly>> m(n);
    for (size_t i = 0; i < n; ++i) {
        MultiPoly powered = mp_pow(sys.forms[i], sys.lcm_exponents[i]);
        for (int j = 0; j < ar; ++j) m[i].push_back(powered.partial(j));
    }
    return determinant(m, ar);
}

bool euler_check(const MultiPoly& f) {
    long d = f.total_degree();
    if (d < 0) return true;
    MultiPoly s(f.arity());
    for (int j = 0; j < f.arity(); ++j)
        s = s + f.partial(j) * MultiPoly::variable(f.arity(), j);
    return s == f.scaled(RationalFunction(Rat(d)));
}

}  // namespace ffabc
