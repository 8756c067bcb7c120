#ifndef FFABC_PARSER_HPP
#define FFABC_PARSER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffabc/multipoly.hpp"
#include "ffabc/place.hpp"
#include "ffabc/ratfunc.hpp"

namespace ffabc {

/* Parse or lowering failure with the offset into the input where it was
 * detected.  what() already includes the position. */
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/* Expression tree for the surface syntax.
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary)*
 *   unary  := '-' unary | power
 *   power  := base ('^' '-'? integer)?
 *   base   := integer | name | '(' expr ')'
 *
 * Juxtaposition is not multiplication; whitespace is insignificant.  Literal
 * nodes hold nonnegative integers: fractions and negatives enter as quotient
 * and negation nodes. */
struct Expr {
    enum class Kind { kRational, kVariable, kNeg, kAdd, kSub, kMul, kDiv, kPow };

    Kind kind = Kind::kRational;
    Rat value{};             // kRational
    std::string name{};      // kVariable
    long exponent = 0;       // kPow
    std::size_t pos = 0;     // source offset, diagnostics only
    std::vector<Expr> children{};

    bool operator==(const Expr& o) const;  // structural; ignores pos
    bool operator!=(const Expr& o) const { return !(*this == o); }
};

/* Parses text against an explicit variable context; any other name is an
 * error.  Throws ParseError with a position on malformed input. */
Expr parse_expression(const std::string& text, const std::vector<std::string>& variables);

/* Prints with the fewest parentheses that keep the shape: the result parses
 * back to an equal tree under the same variable context. */
std::string print_expression(const Expr& e);

/* Lowering.  Only "t" may appear in a rational function; a form admits the
 * supplied names plus "t" in coefficient positions.  Division inside a form
 * must be by a constant (an element of Q(t)); quotients of polynomials exist
 * only at the rational-function level. */
RationalFunction lower_rational(const Expr& e);
MultiPoly lower_form(const Expr& e, const std::vector<std::string>& names);

// parse + lower in one step, sharing the ParseError contract
RationalFunction parse_rational(const std::string& text);
MultiPoly parse_form(const std::string& text, const std::vector<std::string>& names);

/* A place literal: "inf", or a monic irreducible polynomial in t. */
Place parse_place(const std::string& text);

std::vector<std::string> projective_names(int arity);  // x0, x1, ...

}  // namespace ffabc

#endif
