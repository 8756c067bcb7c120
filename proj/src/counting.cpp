#include "ffabc/counting.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ffabc/factor.hpp"

namespace ffabc {

namespace {

long order_of_zero(const RationalFunction& f, const Place& p) {
    return std::max<long>(0, valuation(f, p));
}

long capped(long v, const std::optional<long>& m) { return m ? std::min(v, *m) : v; }

}  // namespace

CountingBreakdown count_zeros(const RationalFunction& f, const PlaceSet& s,
                              std::optional<long> truncation) {
    if (f.is_zero_value()) throw std::invalid_argument("count_zeros of zero");
    if (truncation && *truncation < 1) throw std::invalid_argument("truncation must be >= 1");
    CountingBreakdown out;
    if (f.num().degree() > 0) {
        for (const auto& fac : factor_poly(f.num()).factors) {
            Place p = Place::from_irreducible_factor(fac.factor);
            if (s.contains(p)) continue;
            long c = capped(fac.multiplicity, truncation);
            out.contributions[p] = c;
            out.total += p.degree() * c;
        }
    }
    Place inf = Place::infinity();
    long vinf = order_of_zero(f, inf);
    if (vinf > 0 && !s.contains(inf)) {
        long c = capped(vinf, truncation);
        out.contributions[inf] = c;
        out.total += c;
    }
    return out;
}

GcdCount count_gcd(const RationalFunction& f, const RationalFunction& g, const PlaceSet& s) {
    if (f.is_zero_value() || g.is_zero_value()) throw std::invalid_argument("count_gcd of zero");
    GcdCount out{0, 0};
    // Coprime canonical form makes v_p^0 the multiplicity in the numerator, so
    // the shared finite zeros are exactly the factors of gcd(num f, num g).
    UniPoly common = poly_gcd(f.num(), g.num());
    if (common.degree() > 0) {
        for (const auto& fac : factor_poly(common).factors) {
            Place p = Place::from_irreducible_factor(fac.factor);
            long w = p.degree() * fac.multiplicity;
            out.h_gcd += w;
            if (!s.contains(p)) out.n_s_gcd += w;
        }
    }
    Place inf = Place::infinity();
    long vinf = std::min(order_of_zero(f, inf), order_of_zero(g, inf));
    if (vinf > 0) {
        out.h_gcd += vinf;
        if (!s.contains(inf)) out.n_s_gcd += vinf;
    }
    return out;
}

long weil_lambda(const MultiPoly& F, const ProjectivePoint& x, const Place& p) {
    if (!F.is_homogeneous() || F.is_zero()) throw std::invalid_argument("weil_lambda needs a nonzero homogeneous form");
    RationalFunction value = F.eval(x.coords_rf());
    if (value.is_zero_value()) throw std::invalid_argument("point lies on the divisor");
    long vx;
    if (p.is_infinity()) {
        vx = -height_point(x);
    } else {
        vx = 0;  // canonical coordinates are coprime polynomials
    }
    return valuation(value, p) - poly_valuation(F, p) - F.total_degree() * vx;
}

DivisorDecomposition divisor_decomposition(const MultiPoly& F, const ProjectivePoint& x,
                                           const PlaceSet& s, std::optional<long> truncation) {
    if (truncation && *truncation < 1) throw std::invalid_argument("truncation must be >= 1");
    if (!F.is_homogeneous() || F.is_zero()) throw std::invalid_argument("decomposition needs a nonzero homogeneous form");
    RationalFunction value = F.eval(x.coords_rf());
    if (value.is_zero_value()) throw std::invalid_argument("point lies on the divisor");

    // lambda vanishes away from the support of F(x), the coefficient support
    // of F, and infinity.
    std::set<Place> where;
    for (const auto& p : support(value)) where.insert(p);
    for (const auto& [e, c] : F.terms())
        for (const auto& p : support(c)) where.insert(p);
    where.insert(Place::infinity());
    for (const auto& p : s.places()) where.insert(p);

    DivisorDecomposition out;
    out.proximity = 0;
    long truncated = 0;
    for (const auto& p : where) {
        long lam = weil_lambda(F, x, p);
        if (s.contains(p)) {
            out.proximity += p.degree() * lam;
            continue;
        }
        if (lam == 0) continue;
        out.counting.contributions[p] = lam;
        out.counting.total += p.degree() * lam;
        truncated += p.degree() * capped(lam, truncation);
    }
    if (truncation) out.truncated_total = truncated;
    return out;
}

}  // namespace ffabc
