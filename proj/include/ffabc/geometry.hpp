#pragma once

#include <vector>

#include "multipoly.hpp"
#include "place.hpp"

namespace ffabc {

/* A system of homogeneous forms F_1, ..., F_m in the same variables, with
 * the exponents b_i = lcm(d_1, ..., d_m) / d_i that equalize their degrees:
 * every F_i^{b_i} has degree lcm(d_1, ..., d_m). */
struct FormSystem {
    std::vector<MultiPoly> forms;
    std::vector<long> degrees;
    std::vector<long> lcm_exponents;
};

// Validates: nonempty, common arity, each form nonzero and homogeneous.
FormSystem make_form_system(const std::vector<MultiPoly>& forms);

/* Reduction of a form at a place of degree 1.  Coefficients are scaled by
 * t_p^{-v} with v the minimum coefficient valuation, then evaluated at p.
 * The result is a nonzero form over Q with the same exponent support
 * contained in the input's.  Multiplicative: the reduction of a product is
 * the product of the reductions. */
MultiPoly specialize(const MultiPoly& f, const Place& p);

/* Whether ternary homogeneous forms share a projective zero over an
 * algebraic closure of the coefficient field.  Exact: the plane splits into
 * the point [1:0:0], the punctured line x2 = 0, and the affine chart x2 = 1,
 * and the affine part is decided by gcd splitting plus evaluation of the
 * remaining finite candidates modulo squarefree moduli. */
bool projective_common_zero(const std::vector<MultiPoly>& forms);

/* Every subsystem of three forms has empty common zero locus in the plane.
 * Fewer than three forms pass vacuously.  Arity must be 3. */
bool general_position_n2(const std::vector<MultiPoly>& forms);

/* No triple meets, and along each pairwise intersection the two gradients
 * have rank 2: the curves are smooth there and cross transversally.  The
 * rank condition is the vanishing locus of the three 2x2 minors of the
 * stacked gradient matrix, intersected with both curves.  Arity must be 3. */
bool transversal_intersections(const std::vector<MultiPoly>& forms);

/* One-sided certificate: if the forms reduced at p are in general position
 * over Q, the original system is in general position over the rational
 * function field.  A failure at p proves nothing and is reported as such. */
struct SpecializationCertificate {
    Place place;
    std::vector<MultiPoly> specialized;
    bool in_general_position;  // of the specialized system, decided exactly
    bool certified;            // lifts to the function field when true
    bool inconclusive;         // !certified: the reduction may be degenerate
};

SpecializationCertificate general_position_by_specialization(
    const std::vector<MultiPoly>& forms, const Place& p);

/* Determinant of the matrix of partial derivatives (dF_i/dx_j).  Requires
 * as many forms as variables. */
MultiPoly jacobian_form(const FormSystem& sys);

/* Same determinant for the degree-equalized system (F_i^{b_i}).  Equals
 * (prod b_i) * (prod F_i^{b_i - 1}) * jacobian_form(sys). */
MultiPoly jacobian_form_exponentiated(const FormSystem& sys);

/* Sum_j x_j * dF/dx_j == deg(F) * F, which characterizes homogeneity in
 * degree total_degree(F).  False exactly when F is inhomogeneous. */
bool euler_check(const MultiPoly& f);

}  // namespace ffabc
