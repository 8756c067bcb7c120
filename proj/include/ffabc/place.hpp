#ifndef FFABC_PLACE_HPP
#define FFABC_PLACE_HPP

#include <string>
#include <vector>

#include "ffabc/ratfunc.hpp"
#include "ffabc/unipoly.hpp"

namespace ffabc {

/* Closed point of the projective line over Q: a monic irreducible polynomial
 * in t, or the point at infinity.  A degree-d place stands for d conjugate
 * geometric points, and every weighted sum below counts it with weight d. */
class Place {
public:
    static Place infinity();
    // Certifies monic irreducibility; throws std::invalid_argument otherwise.
    static Place finite(const UniPoly& pi);
    // Trusted constructor for output of factor_poly, skips re-certification.
    static Place from_irreducible_factor(const UniPoly& pi);

    bool is_infinity() const { return infinite_; }
    // Finite places only.
    const UniPoly& poly() const;
    int degree() const { return infinite_ ? 1 : poly_.degree(); }

    // "inf" or the compact polynomial string ("t", "t-1", "t^2+1").
    std::string str() const;

    bool operator==(const Place& o) const;
    bool operator!=(const Place& o) const { return !(*this == o); }
    // Finite places by (degree, coefficients); infinity sorts last.
    bool operator<(const Place& o) const;

private:
    Place() = default;
    bool infinite_ = false;
    UniPoly poly_;
};

/* v_p(f): order of vanishing at p.  At a finite place the multiplicity of its
 * polynomial in the numerator minus the denominator; at infinity the degree
 * drop deg(den) - deg(num).  Additive on products; zero input rejected. */
long valuation(const UniPoly& f, const Place& p);
long valuation(const RationalFunction& f, const Place& p);

// All places where v_p(f) != 0, sorted.  Constants have empty support.
std::vector<Place> support(const RationalFunction& f);

/* Finite set of places; deduplicated and sorted.  Cardinality and geometric
 * size (the degree-weighted count |S| of the closed points' geometric fibers)
 * are distinct notions and both exposed. */
class PlaceSet {
public:
    PlaceSet() = default;
    explicit PlaceSet(std::vector<Place> places);

    bool contains(const Place& p) const;
    const std::vector<Place>& places() const { return places_; }
    size_t card() const { return places_.size(); }
    long geometric_size() const;
    PlaceSet with(const Place& p) const;
    PlaceSet union_with(const PlaceSet& o) const;
    bool operator==(const PlaceSet& o) const { return places_ == o.places_; }

private:
    std::vector<Place> places_;  // sorted, unique
};

// chi_S = 2g - 2 + |S| with g = 0 and |S| geometric.
long chi_s(const PlaceSet& s);
long chi_s_plus(const PlaceSet& s);

bool is_s_unit(const RationalFunction& f, const PlaceSet& s);
bool is_s_integer(const RationalFunction& f, const PlaceSet& s);

/* One representative per constant-multiple class of S-units of height <= H:
 * products of the finite places of S to integer powers, leading coefficient 1,
 * balanced at infinity when infinity is outside S.  Sorted by height, then
 * numerator, then denominator.  Exhaustive: every class has |exponent| <= H
 * at each place, so the search box covers everything. */
std::vector<RationalFunction> enumerate_s_units(const PlaceSet& s, long height_bound);

}  // namespace ffabc

#endif
