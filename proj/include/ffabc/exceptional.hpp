#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffabc/heights.hpp"
#include "ffabc/multipoly.hpp"
#include "ffabc/place.hpp"

namespace ffabc {

/* Normalized exponent pair for the coset analysis.  After division by the
 * gcd, the pair is moved into the cone  m2 >= m1 >= 0  (matching signs) or
 * 0 < m2 <= -m1  (mixed signs) by optionally exchanging the two indices and
 * flipping both signs.  swapped / negated record those moves; flipping the
 * signs of the pair inverts the coset parameter lambda. */
struct PairNormalization {
    long m1, m2;  // coprime, inside the cone; m2 > 0 always
    long a, b;    // m1*a + m2*b = 1 with 0 < b <= |m1|, or a = 0, b = 1 for m1 = 0
    bool swapped;
    bool negated;
};

PairNormalization normalize_pair(long m1, long m2);

/* Gate for the curve polynomial: nonconstant, not divisible by a variable,
 * squarefree.  Vanishing at the origin is allowed.  Returns the failure
 * reason, or nothing when G is usable. */
std::optional<std::string> hypothesis_violation(const MultiPoly& g);

bool bivariate_squarefree(const MultiPoly& f);

/* G(L^a T^{m2}, L^b T^{-m1}) = T^{t_power} L^{lambda_power} B(L, T), with B
 * divisible by neither variable.  The exponent substitution is unimodular, so
 * B carries exactly the terms of G; the identity is re-verified term by term
 * on every run.  Variable 0 of B is L (the coset parameter), variable 1 is T. */
struct SubstitutionResult {
    MultiPoly b;
    long t_power;       // M1
    long lambda_power;  // M2
};

SubstitutionResult substitute_b(const MultiPoly& g, const PairNormalization& norm);

/* Constraint on the coset parameter: one exact value of K, or a defining
 * polynomial (indeterminate standing for lambda) whose roots are the
 * admissible values.  Roots are never split into algebraic numbers. */
struct LambdaConstraint {
    bool exact = false;
    RationalFunction value;            // set when exact
    UPoly<RationalFunction> defining;  // set otherwise; nonzero, degree >= 1

    static LambdaConstraint exact_value(RationalFunction v) {
        LambdaConstraint c;
        c.exact = true;
        c.value = std::move(v);
        return c;
    }
    static LambdaConstraint root_of(UPoly<RationalFunction> p) {
        LambdaConstraint c;
        c.defining = std::move(p);
        return c;
    }

    bool operator==(const LambdaConstraint& o) const {
        if (exact != o.exact) return false;
        return exact ? value == o.value : defining == o.defining;
    }
    bool operator!=(const LambdaConstraint& o) const { return !(*this == o); }
    // Exact values sort before defining polynomials.
    bool operator<(const LambdaConstraint& o) const {
        if (exact != o.exact) return exact;
        return exact ? value < o.value : defining < o.defining;
    }
};

std::string lambda_poly_str(const UPoly<RationalFunction>& p, const std::string& var = "s");

struct ResultantLocus {
    // Monic resultant of L^{lambda_power} B and its T-derivative in K[L].
    UPoly<RationalFunction> r;
    std::vector<LambdaConstraint> alpha;  // nonzero roots, sorted
    bool zero_root_excluded;              // a power of L divided the resultant
};

ResultantLocus resultant_locus(const SubstitutionResult& sub);

struct TopFormRoots {
    UPoly<RationalFunction> g_top;        // top form of G evaluated at (1, s), monic
    std::vector<LambdaConstraint> delta;  // nonzero roots, sorted
    bool zero_root_excluded;
};

TopFormRoots top_form_roots(const MultiPoly& g);

/* The coset curve x1^{m1} x2^{m2} = lambda x0^{m1+m2}.  Exponents are in the
 * reporting normal form: primitive with m2 > 0, or m2 = 0 and m1 > 0. */
struct ExceptionalCurve {
    long m1, m2;
    LambdaConstraint constraint;
};

std::string curve_str(const ExceptionalCurve& c);

struct ExceptionalSetDescription {
    MultiPoly g;  // the affine curve polynomial in (X, Y)
    PlaceSet s;
    long m_bound;
    std::vector<ExceptionalCurve> curves;  // deduplicated, sorted
    bool includes_g_zero_locus;
    // True when G has constant coefficients; every constraint is then constant.
    bool constant_coefficients;
    std::string height_threshold_note;
};

/* Collects, over every exponent pair with |m1| + |m2| <= m_bound, the lambda
 * constraints from the resultant locus, plus the top-form roots for the
 * (-1, 1) degeneration, plus the zero locus of G itself.  Exact values that
 * are not S-units are dropped: no S-unit point can reach them. */
ExceptionalSetDescription build_exceptional_set(const MultiPoly& g, long m_bound,
                                                const PlaceSet& s);

struct MemberResult {
    bool member = false;
    std::optional<ExceptionalCurve> curve;
    bool on_g_zero_locus = false;
    std::string witness;  // printable curve or zero-locus tag; empty otherwise
};

// x = [x0 : x1 : x2] with every coordinate nonzero; scaling-invariant.
MemberResult member(const ProjectivePoint& x, const ExceptionalSetDescription& desc);

}  // namespace ffabc
