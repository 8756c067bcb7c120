#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffabc/counting.hpp"
#include "ffabc/geometry.hpp"
#include "ffabc/heights.hpp"
#include "ffabc/logderiv.hpp"
#include "ffabc/multipoly.hpp"
#include "ffabc/place.hpp"

namespace ffabc {

/* Hypothesis gate for the divisor polynomial: (i) no variable divides G,
 * (ii) G squarefree, (iii) G nonzero at every coordinate point.  (ii) is
 * certified probabilistically: along random univariate specializations, a
 * repeated factor involving x_j forces a nontrivial gcd with the j-th
 * partial in every trial, while for squarefree G the common factor is free
 * of x_j and specializes to a constant off a proper closed set.  Degenerate
 * inputs land in failures; nothing throws. */
struct HypothesisReport {
    bool no_monomial_factor = false;
    bool squarefree_certified = false;
    bool coordinate_nonvanishing = false;
    std::vector<std::string> failures;
    bool all_pass = false;
};

HypothesisReport validate_hypotheses(const MultiPoly& g, int repetitions = 8,
                                     std::uint64_t seed = 0x5eed);

enum class Classification { kGeneric, kExceptional, kLowHeight, kHypothesisFailure };

std::string classification_str(Classification c);

/* Everything measurable about one S-unit point against one divisor form.
 * The counts are those of the chain
 *   N_S(G(u)) - N_S^(1)(G(u)) <= N_{S,gcd}(G(u), D_u(G)(u))
 * (genus 0, so no correction term), and the margins are the exact slacks
 * in the two target inequalities at the given epsilon:
 *   (a)  eps * h(u) - (N_S - N_S^(1))
 *   (b)  N_S^(1) - (deg G - eps) * h(u).
 * The unspecified constants of the underlying theorems make a boolean
 * verdict impossible; classification records which regime the point sits
 * in, with low_height cut off at (1/eps) * (vh(G) + max(1, chi_S)). */
struct VerificationReport {
    ProjectivePoint point;  // [1 : u_1 : ... : u_n]
    long h_u = 0;
    long vh_g = 0;  // relevant height of the coefficients of G
    long chi = 0;   // chi_S
    long n_s = 0;
    long n_s_1 = 0;
    long n_s_gcd = 0;
    bool chain_holds = false;
    bool on_divisor = false;   // G(1, u) = 0; counts are then left at zero
    bool du_vanishes = false;  // D_u(G)(u) = 0; the gcd degenerates to N_S(G(u))
    Rat margin_a{};
    Rat margin_b{};
    Rat epsilon{};
    Rat height_threshold{};
    Classification classification = Classification::kGeneric;
    std::string witness{};  // member curve, vanishing 1-form, or failure reasons
};

/* n = 2 consults the exceptional set (box |m1| + |m2| <= m_bound, default
 * 2 deg G); n >= 3 treats a supplied logarithmic 1-form vanishing on u as
 * the exceptional witness.  Hypothesis failures trump everything else. */
VerificationReport abc_report(const MultiPoly& g, const UnitTuple& u, const PlaceSet& s,
                              const Rat& epsilon, long m_bound = 0,
                              const std::optional<LogOneForm>& one_form = std::nullopt);

/* Artifact constants for the height floor and the escape bound of the
 * moving-gcd statement.  The theorem only asserts such constants exist;
 * these choices are conservative bookkeeping, not derived values. */
inline constexpr long kFloorCoeff = 1;
inline constexpr long kFloorChi = 1;
inline constexpr long kEscapeCoeff = 1;
inline constexpr long kEscapeChi = 1;

struct RelationScan {
    std::vector<long> exponents;  // 0 < sum |m_i| <= box, minimal h(g^m)
    long height;
    long box;
};

/* Moving-gcd conclusions for coprime F, G evaluated on an S-unit tuple:
 *   (a)  N_{S,gcd}(F(g), G(g)) <= eps * max h(g_i)
 *   (b)  h_gcd(F(g), G(g))     <= eps * max h(g_i),
 * (b) additionally requiring that F and G do not both vanish at the origin.
 * The height floor is kFloorCoeff * (vh(F) + vh(G)) + kFloorChi * chi_S^+;
 * points below it are outside the theorem's reach and the conclusions are
 * reported as observations.  best_relation is the minimal-height
 * multiplicative relation over the box, against the escape bound
 * kEscapeCoeff * (vh(F) + vh(G)) + kEscapeChi * chi_S^+. */
struct GcdConclusionReport {
    long n_s_gcd = 0;
    long h_gcd = 0;
    long max_height = 0;  // max h(g_i)
    long coeff_height = 0;
    long chi_plus = 0;
    Rat height_floor;
    bool height_floor_met = false;
    bool conclusion_a = false;
    bool conclusion_b = false;
    Rat margin_a;  // eps * max_height - n_s_gcd
    Rat margin_b;  // eps * max_height - h_gcd
    bool origin_condition = false;  // not both F(0) = 0 and G(0) = 0
    std::optional<RelationScan> best_relation;
    Rat escape_bound;
    bool escape_holds = false;
    bool f_vanishes = false;  // F(g) = 0; the gcd degenerates to the other side
    bool g_vanishes = false;
    bool degenerate = false;  // constants-only tuple, every height zero
    Rat epsilon;
};

GcdConclusionReport gcd_conclusion_report(const MultiPoly& f, const MultiPoly& g,
                                          const UnitTuple& tuple, const PlaceSet& s,
                                          const Rat& epsilon);

/* n + 1 forms cutting the divisor D = D_1 + ... + D_{n+1} in P^n, with
 * sum deg F_i >= n + 2 so the ramification form has positive degree, the
 * place set for integrality, and the degree-1 place used to certify the
 * geometry by specialization. */
struct RamifiedCoverSpec {
    FormSystem system;
    PlaceSet s;
    Place p;
};

RamifiedCoverSpec make_ramified_cover_spec(FormSystem system, PlaceSet s, Place p);

/* The unit coordinates of the covering map at an integral point, with the
 * certificates the construction rests on.  b_i = lcm(deg F) / deg F_i and
 *   u_i = F_i^{b_i}(x) / F_{n+1}^{b_{n+1}}(x),  1 <= i <= n.
 * Coefficients of the forms need not be S-units; s_enlarged is the minimal
 * superset of S that makes them so, and unit membership is reported against
 * both sets rather than silently upgraded.  The height relation
 *   b h(x) - c' <= h(1, u) <= b h(x) + c'
 * is checked with the artifact's explicit c' (coefficient height plus
 * (n + 1) b; the upper side needs only the coefficient height, the lower
 * side is conservative).  The logarithmic identity
 *   u_i'/u_i = b_i F_i(x)'/F_i(x) - b_{n+1} F_{n+1}(x)'/F_{n+1}(x)
 * is checked exactly. */
struct RamifiedCoverReport {
    ProjectivePoint x;
    std::vector<long> b;  // lcm exponents, last entry is the denominator's
    long b_total = 0;
    std::vector<RationalFunction> u;
    std::vector<bool> u_is_s_unit;
    PlaceSet s_enlarged;
    std::vector<Place> added_places;
    std::vector<bool> u_is_enlarged_unit;
    std::vector<long> divisor_counts;  // N_{D_i,S}(x), zero for every i
    MultiPoly jacobian;
    long jacobian_degree = 0;
    MultiPoly jacobian_at_p;
    bool transversal_at_p = false;
    SpecializationCertificate position_certificate;  // the forms alone
    // Forms plus the ramification form, when the plane machinery applies.
    std::optional<SpecializationCertificate> ramification_certificate;
    long h_x = 0;
    long h_one_u = 0;
    long deviation = 0;  // h(1, u) - b h(x)
    long coeff_height = 0;
    long c_prime = 0;
    bool within_c_prime = false;
    bool log_derivative_identity = false;
    Rat epsilon;
};

/* Throws on points off the expected dimension, on a divisor, or not
 * S-integral; integrality is established from the Weil counts, never
 * assumed. */
RamifiedCoverReport ramified_cover_report(const RamifiedCoverSpec& spec,
                                          const ProjectivePoint& x, const Rat& epsilon);

}  // namespace ffabc
