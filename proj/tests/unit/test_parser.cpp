#include <string>
#include <vector>

#include "doctest.h"
#include "ffabc/parser.hpp"

using namespace ffabc;

namespace {

RationalFunction rft() { return RationalFunction::x(); }

RationalFunction rf(long n, long d = 1) { return RationalFunction(Rat(n, d)); }

const std::vector<std::string> kTernary{"x0", "x1", "x2"};
const std::vector<std::string> kAffine{"X", "Y"};

}  // namespace

TEST_CASE("expressions parse into the expected shapes") {
    Expr e = parse_expression("1+2*3", {});
    CHECK(e.kind == Expr::Kind::kAdd);
    CHECK(e.children[1].kind == Expr::Kind::kMul);

    e = parse_expression("1-2-3", {});
    CHECK(e.kind == Expr::Kind::kSub);
    CHECK(e.children[0].kind == Expr::Kind::kSub);
    CHECK(e.children[0].children[0].value == Rat(1));

    e = parse_expression("-t^2", {"t"});
    CHECK(e.kind == Expr::Kind::kNeg);
    CHECK(e.children[0].kind == Expr::Kind::kPow);
    CHECK(e.children[0].exponent == 2);

    e = parse_expression("t^-1", {"t"});
    CHECK(e.kind == Expr::Kind::kPow);
    CHECK(e.exponent == -1);

    e = parse_expression("(X+Y+1)^2", kAffine);
    CHECK(e.kind == Expr::Kind::kPow);
    CHECK(e.exponent == 2);
    CHECK(e.children[0].kind == Expr::Kind::kAdd);

    // whitespace never matters
    CHECK(parse_expression(" t ^ 2 / ( t - 1 ) ", {"t"}) ==
          parse_expression("t^2/(t-1)", {"t"}));
}

TEST_CASE("parse errors carry positions") {
    auto pos_of = [](const std::string& text, const std::vector<std::string>& vars) {
        try {
            parse_expression(text, vars);
        } catch (const ParseError& e) {
            return e.position();
        }
        return static_cast<std::size_t>(-1);
    };

    CHECK(pos_of("t^2-", {"t"}) == 4);         // dangling operator
    CHECK(pos_of("t^", {"t"}) == 2);           // missing exponent
    CHECK(pos_of("(t+1", {"t"}) == 4);         // unclosed paren
    CHECK(pos_of("t$1", {"t"}) == 1);          // bad character
    CHECK(pos_of("t z", {"t"}) == 2);          // juxtaposition is not multiplication
    CHECK(pos_of("2 3", {}) == 2);
    CHECK(pos_of("x0+zz", {"x0"}) == 3);       // unknown variable
    CHECK(pos_of("", {}) == 0);

    CHECK_THROWS_WITH_AS(parse_expression("t^2-", {"t"}), "expected a value at position 4",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_expression("x0+zz", {"x0"}),
                         "unknown variable 'zz' at position 3", ParseError);
}

TEST_CASE("printing round-trips to an equal tree") {
    const std::vector<std::string> vars{"t", "x0", "x1", "x2", "X", "Y", "L", "T"};
    const std::vector<std::string> corpus{
        "t^2/(t-1)",
        "x0+x1+x2",
        "(X+Y+1)^2",
        "-t^2",
        "-(t^2)",
        "--t",
        "1-2-3",
        "1-(2-3)",
        "2*(3+4)",
        "2*3+4",
        "a/b/c",      // placeholder replaced below
        "t/(t*X)",
        "(t+1)*(t-1)",
        "t^-3*X^2",
        "L*T^2-1/4",
        "-(X+Y)*(X-Y)",
        "x0^2+x1^2+x2^2",
        "1/2/3",
        "t*(X/2)",
        "(t^2+1)^3/(t^5-t)",
    };
    for (std::string s : corpus) {
        if (s == "a/b/c") s = "t/X/Y";
        Expr e = parse_expression(s, vars);
        std::string printed = print_expression(e);
        Expr back = parse_expression(printed, vars);
        CAPTURE(s);
        CAPTURE(printed);
        CHECK(back == e);
    }
}

TEST_CASE("lowering to rational functions") {
    RationalFunction f = parse_rational("t^2/(t-1)");
    CHECK(f.num() == UniPoly::monomial(Rat(1), 2));
    CHECK(f.den() == UniPoly::x() - UniPoly(Rat(1)));

    CHECK(parse_rational("(t-1)*(t+1)") == rft() * rft() - rf(1));
    CHECK(parse_rational("t^-2") == field_inv(rft() * rft()));
    CHECK(parse_rational("-3/6") == rf(-1, 2));
    CHECK(parse_rational("2^-3") == rf(1, 8));

    CHECK_THROWS_WITH_AS(parse_rational("1/(t-t)"), "division by zero at position 1", ParseError);
    CHECK_THROWS_WITH_AS(parse_rational("x0+1"), "unknown variable 'x0' at position 0",
                         ParseError);
}

TEST_CASE("lowering to forms") {
    MultiPoly g = parse_form("x0+x1+x2", kTernary);
    MultiPoly expect(3);
    expect.add_term({1, 0, 0}, rf(1));
    expect.add_term({0, 1, 0}, rf(1));
    expect.add_term({0, 0, 1}, rf(1));
    CHECK(g == expect);
    CHECK(g.is_homogeneous());

    MultiPoly q = parse_form("(X+Y+1)^2", kAffine);
    CHECK(q.total_degree() == 2);
    CHECK(q.eval({rf(2), rf(3)}) == rf(36));

    // coefficients live in Q(t), including quotients by constants
    MultiPoly c = parse_form("x0*t^2/(t-1)-x1/4", kTernary);
    CHECK(c.eval({rf(1), rf(0), rf(0)}) == parse_rational("t^2/(t-1)"));
    CHECK(c.eval({rf(0), rf(4), rf(0)}) == rf(-1));

    CHECK_THROWS_WITH_AS(parse_form("x0/x1", kTernary),
                         "division by a polynomial is not allowed here at position 2", ParseError);
    CHECK_THROWS_WITH_AS(parse_form("x0^-1", kTernary),
                         "negative power of a polynomial is not allowed here at position 0",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_form("t/(x0-x0+0)", kTernary), "division by zero at position 1",
                         ParseError);
}

TEST_CASE("place literals") {
    CHECK(parse_place("inf") == Place::infinity());
    CHECK(parse_place(" inf ") == Place::infinity());
    CHECK(parse_place("t").str() == "t");
    CHECK(parse_place("t-1").str() == "t-1");
    CHECK(parse_place("t^2+1").degree() == 2);

    CHECK_THROWS_WITH_AS(parse_place("t^2-"), "expected a value at position 4", ParseError);
    CHECK_THROWS_AS(parse_place("1/(t-1)"), ParseError);
    CHECK_THROWS_AS(parse_place("t^2-1"), std::invalid_argument);  // reducible
}
