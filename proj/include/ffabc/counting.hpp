#pragma once

#include <map>
#include <optional>

#include "ffabc/heights.hpp"
#include "ffabc/multipoly.hpp"
#include "ffabc/place.hpp"

namespace ffabc {

/* Zero counts outside S.  Contributions are per-place multiplicities (not
 * degree-weighted); total is the degree-weighted sum.  Places of S never
 * appear. */
struct CountingBreakdown {
    std::map<Place, long> contributions;
    long total = 0;
};

// N_S(f), or N_S^(m)(f) when a truncation m >= 1 is given.
CountingBreakdown count_zeros(const RationalFunction& f, const PlaceSet& s,
                              std::optional<long> truncation = std::nullopt);

struct GcdCount {
    long n_s_gcd;  // sum outside S of min(v_p^0(f), v_p^0(g)), weighted
    long h_gcd;    // same sum over all places
};

GcdCount count_gcd(const RationalFunction& f, const RationalFunction& g, const PlaceSet& s);

/* Weil function of the divisor cut by a homogeneous F, normalized so that
 * lambda = v_p(F(x)) - v_p(F) - deg F * v_p(x).  Nonnegative; independent of
 * the scaling of x and of F. */
long weil_lambda(const MultiPoly& F, const ProjectivePoint& x, const Place& p);

/* Splitting of the height sum into proximity (places of S) and counting
 * (places outside S).  Exactly m + N = deg F * h(x) + h(F). */
struct DivisorDecomposition {
    long proximity;              // m_{D,S}
    CountingBreakdown counting;  // per-place lambda outside S; total = N_{D,S}
    std::optional<long> truncated_total;
};

DivisorDecomposition divisor_decomposition(const MultiPoly& F, const ProjectivePoint& x,
                                           const PlaceSet& s,
                                           std::optional<long> truncation = std::nullopt);

}  // namespace ffabc
