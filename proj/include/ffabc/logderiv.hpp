#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ffabc/heights.hpp"
#include "ffabc/multipoly.hpp"
#include "ffabc/place.hpp"

namespace ffabc {

// d/dt on Q(t).
RationalFunction derive(const RationalFunction& f);

/* Tuple of S-units; membership is certified at construction.  Entries are
 * 1-indexed in the notation u = (u_1, ..., u_n) but stored 0-based. */
class UnitTuple {
  public:
    UnitTuple(std::vector<RationalFunction> entries, PlaceSet s);

    int size() const { return static_cast<int>(entries_.size()); }
    const std::vector<RationalFunction>& entries() const { return entries_; }
    const PlaceSet& s() const { return s_; }

    // u^m with integer (possibly negative) exponents.
    RationalFunction power(const std::vector<long>& m) const;

  private:
    std::vector<RationalFunction> entries_;
    PlaceSet s_;
};

/* Twisted derivative: the coefficient of x^i in D_u(F) is (a_i u^i)' / u^i,
 * so that F(u)' = D_u(F)(u) and the product rule holds. */
MultiPoly d_u(const MultiPoly& F, const UnitTuple& u);

/* Genus-0 height control for the twisted derivative:
 *   vh(D_u(F)) <= kTwistC1 * vh(F) + kTwistC2 * max(1, chi_S)
 * (relevant heights).  Valuations drop by at most one, and only at poles of
 * the coefficients or at the finite places of S. */
inline constexpr long kTwistC1 = 2;
inline constexpr long kTwistC2 = 3;

/* For irreducible P: true iff P is coprime with D_u(P), which happens exactly
 * when some ratio (a_i u^i)/(a_j u^j) over term pairs of P is nonconstant. */
bool coprime_with_du(const MultiPoly& P, const UnitTuple& u);

/* Splits F = A*B along the supplied irreducible factorization: B collects the
 * factors not coprime with their twisted derivative, normalized to leading
 * coefficient 1; the stripped leading coefficients move into A.  Then A is
 * coprime with D_u(F), B(u) is an S-unit or zero, and the relevant height of
 * A is at most twice that of F. */
std::pair<MultiPoly, MultiPoly> split_ab(const MultiPoly& F,
                                         const std::vector<MultiPoly>& irreducible_factors,
                                         const UnitTuple& u);

/* Probabilistic coprimality certificate: specializes all variables but one at
 * random S-units and checks the univariate resultant, for every variable that
 * both polynomials depend on.  A true verdict can only be wrong on degenerate
 * specializations; a false verdict is a signal to recheck, not a proof. */
bool certify_coprime(const MultiPoly& a, const MultiPoly& b, const PlaceSet& s,
                     int repetitions = 8, std::uint64_t seed = 0x5eed);

struct UnitSumReport {
    bool subsum_vanishes;
    long max_height;
    long bound;  // n(n-1)/2 * chi_S^+
    bool within_bound;
};

// Requires every f_i an S-unit and sum f_i = 1.
UnitSumReport unit_sum_check(const std::vector<RationalFunction>& f, const PlaceSet& s);

struct UnitRelation {
    std::vector<long> exponents;  // m with 0 < sum |m_i| <= 2 deg F
    long height;                  // h(u^m), minimal over the box
    Int bound;                    // guaranteed cap on the minimal height
};

/* Exhaustive search for the multiplicative relation of minimal height among
 * exponent vectors with sum |m_i| <= 2 deg F; requires F(u) = 0.  Ties break
 * toward the lexicographically largest exponent vector.  Returns nothing for
 * the zero polynomial, whose vanishing carries no relation. */
std::optional<UnitRelation> unit_relation_search(const MultiPoly& F, const UnitTuple& u);

/* m_1 dx_1/x_1 + ... + m_n dx_n/x_n - d(alpha)/alpha, evaluated on u. */
struct LogOneForm {
    std::vector<long> exponents;  // not all zero
    RationalFunction alpha;       // an S-unit in context
};

RationalFunction eval_log_form(const LogOneForm& w, const UnitTuple& u);

}  // namespace ffabc
