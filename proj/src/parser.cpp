#include "ffabc/parser.hpp"

#include <algorithm>
#include <cctype>

namespace ffabc {

namespace {

struct Token {
    enum class Type { kInteger, kName, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kEnd };
    Type type;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Type::kInteger, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Type::kName, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        Token::Type type;
        switch (c) {
            case '+': type = Token::Type::kPlus; break;
            case '-': type = Token::Type::kMinus; break;
            case '*': type = Token::Type::kStar; break;
            case '/': type = Token::Type::kSlash; break;
            case '^': type = Token::Type::kCaret; break;
            case '(': type = Token::Type::kLParen; break;
            case ')': type = Token::Type::kRParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({type, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::Type::kEnd, "", text.size()});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, const std::vector<std::string>& variables)
        : tokens_(std::move(tokens)), variables_(variables) {}

    Expr run() {
        Expr e = expr();
        if (peek().type != Token::Type::kEnd)
            throw ParseError("expected end of input", peek().pos);
        return e;
    }

  private:
    std::vector<Token> tokens_;
    const std::vector<std::string>& variables_;
    std::size_t at_ = 0;

    const Token& peek() const { return tokens_[at_]; }
    const Token& advance() { return tokens_[at_++]; }
    bool accept(Token::Type t) {
        if (peek().type != t) return false;
        ++at_;
        return true;
    }

    Expr expr() {
        Expr left = term();
        while (peek().type == Token::Type::kPlus || peek().type == Token::Type::kMinus) {
            const Token op = advance();
            Expr node;
            node.kind = op.type == Token::Type::kPlus ? Expr::Kind::kAdd : Expr::Kind::kSub;
            node.pos = op.pos;
            node.children.push_back(std::move(left));
            node.children.push_back(term());
            left = std::move(node);
        }
        return left;
    }

    Expr term() {
        Expr left = unary();
        while (peek().type == Token::Type::kStar || peek().type == Token::Type::kSlash) {
            const Token op = advance();
            Expr node;
            node.kind = op.type == Token::Type::kStar ? Expr::Kind::kMul : Expr::Kind::kDiv;
            node.pos = op.pos;
            node.children.push_back(std::move(left));
            node.children.push_back(unary());
            left = std::move(node);
        }
        return left;
    }

    Expr unary() {
        if (peek().type == Token::Type::kMinus) {
            const Token op = advance();
            Expr node;
            node.kind = Expr::Kind::kNeg;
            node.pos = op.pos;
            node.children.push_back(unary());
            return node;
        }
        return power();
    }

    Expr power() {
        Expr b = base();
        if (!accept(Token::Type::kCaret)) return b;
        bool negative = false;
        if (peek().type == Token::Type::kMinus) {
            advance();
            negative = true;
        }
        if (peek().type != Token::Type::kInteger)
            throw ParseError("expected an integer exponent", peek().pos);
        const Token t = advance();
        long e = 0;
        try {
            e = std::stol(t.text);
        } catch (const std::out_of_range&) {
            throw ParseError("exponent out of range", t.pos);
        }
        Expr node;
        node.kind = Expr::Kind::kPow;
        node.exponent = negative ? -e : e;
        node.pos = b.pos;
        node.children.push_back(std::move(b));
        return node;
    }

    Expr base() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::kInteger: {
                advance();
                Expr node;
                node.kind = Expr::Kind::kRational;
                node.value = Rat(Int(t.text));
                node.pos = t.pos;
                return node;
            }
            case Token::Type::kName: {
                if (std::find(variables_.begin(), variables_.end(), t.text) == variables_.end())
                    throw ParseError("unknown variable '" + t.text + "'", t.pos);
                advance();
                Expr node;
                node.kind = Expr::Kind::kVariable;
                node.name = t.text;
                node.pos = t.pos;
                return node;
            }
            case Token::Type::kLParen: {
                advance();
                Expr inner = expr();
                if (!accept(Token::Type::kRParen))
                    throw ParseError("expected ')'", peek().pos);
                return inner;
            }
            default:
                throw ParseError("expected a value", t.pos);
        }
    }
};

bool needs_parens_as_base(const Expr& e) {
    return e.kind != Expr::Kind::kRational && e.kind != Expr::Kind::kVariable;
}

// true when e, printed bare on the given side, would re-associate
bool needs_parens(const Expr& e, Expr::Kind parent, bool right_side) {
    switch (parent) {
        case Expr::Kind::kAdd:
        case Expr::Kind::kSub:
            return right_side && (e.kind == Expr::Kind::kAdd || e.kind == Expr::Kind::kSub);
        case Expr::Kind::kMul:
        case Expr::Kind::kDiv:
            if (e.kind == Expr::Kind::kAdd || e.kind == Expr::Kind::kSub) return true;
            if (right_side)
                return e.kind == Expr::Kind::kMul || e.kind == Expr::Kind::kDiv ||
                       e.kind == Expr::Kind::kNeg;
            return false;
        case Expr::Kind::kNeg:
            return e.kind == Expr::Kind::kAdd || e.kind == Expr::Kind::kSub;
        default:
            return false;
    }
}

std::string print_child(const Expr& child, Expr::Kind parent, bool right_side) {
    std::string s = print_expression(child);
    if (needs_parens(child, parent, right_side)) return "(" + s + ")";
    return s;
}

MultiPoly mp_power(const MultiPoly& b, long e) {
    MultiPoly acc = MultiPoly::constant(b.arity(), RationalFunction(1));
    for (long k = 0; k < e; ++k) acc = acc * b;
    return acc;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

bool Expr::operator==(const Expr& o) const {
    if (kind != o.kind || children.size() != o.children.size()) return false;
    switch (kind) {
        case Kind::kRational:
            if (value != o.value) return false;
            break;
        case Kind::kVariable:
            if (name != o.name) return false;
            break;
        case Kind::kPow:
            if (exponent != o.exponent) return false;
            break;
        default:
            break;
    }
    for (std::size_t i = 0; i < children.size(); ++i)
        if (!(children[i] == o.children[i])) return false;
    return true;
}

Expr parse_expression(const std::string& text, const std::vector<std::string>& variables) {
    return Parser(tokenize(text), variables).run();
}

std::string print_expression(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::kRational:
            return e.value.get_num().get_str();
        case Expr::Kind::kVariable:
            return e.name;
        case Expr::Kind::kNeg:
            return "-" + print_child(e.children[0], Expr::Kind::kNeg, false);
        case Expr::Kind::kAdd:
            return print_child(e.children[0], Expr::Kind::kAdd, false) + "+" +
                   print_child(e.children[1], Expr::Kind::kAdd, true);
        case Expr::Kind::kSub:
            return print_child(e.children[0], Expr::Kind::kSub, false) + "-" +
                   print_child(e.children[1], Expr::Kind::kSub, true);
        case Expr::Kind::kMul:
            return print_child(e.children[0], Expr::Kind::kMul, false) + "*" +
                   print_child(e.children[1], Expr::Kind::kMul, true);
        case Expr::Kind::kDiv:
            return print_child(e.children[0], Expr::Kind::kDiv, false) + "/" +
                   print_child(e.children[1], Expr::Kind::kDiv, true);
        case Expr::Kind::kPow: {
            const Expr& b = e.children[0];
            std::string s = print_expression(b);
            if (needs_parens_as_base(b)) s = "(" + s + ")";
            return s + "^" + std::to_string(e.exponent);
        }
    }
    return {};  // unreachable
}

RationalFunction lower_rational(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::kRational:
            return RationalFunction(e.value);
        case Expr::Kind::kVariable:
            if (e.name != "t")
                throw ParseError("variable '" + e.name + "' is not allowed in a rational function",
                                 e.pos);
            return RationalFunction::x();
        case Expr::Kind::kNeg:
            return RationalFunction(0) - lower_rational(e.children[0]);
        case Expr::Kind::kAdd:
            return lower_rational(e.children[0]) + lower_rational(e.children[1]);
        case Expr::Kind::kSub:
            return lower_rational(e.children[0]) - lower_rational(e.children[1]);
        case Expr::Kind::kMul:
            return lower_rational(e.children[0]) * lower_rational(e.children[1]);
        case Expr::Kind::kDiv: {
            RationalFunction d = lower_rational(e.children[1]);
            if (d.is_zero_value()) throw ParseError("division by zero", e.pos);
            return lower_rational(e.children[0]) / d;
        }
        case Expr::Kind::kPow: {
            RationalFunction b = lower_rational(e.children[0]);
            if (b.is_zero_value() && e.exponent < 0)
                throw ParseError("division by zero", e.pos);
            return b.pow(e.exponent);
        }
    }
    throw ParseError("malformed expression", e.pos);  // unreachable
}

MultiPoly lower_form(const Expr& e, const std::vector<std::string>& names) {
    const int arity = static_cast<int>(names.size());
    switch (e.kind) {
        case Expr::Kind::kRational:
            return MultiPoly::constant(arity, RationalFunction(e.value));
        case Expr::Kind::kVariable: {
            if (e.name == "t") return MultiPoly::constant(arity, RationalFunction::x());
            auto it = std::find(names.begin(), names.end(), e.name);
            if (it == names.end())
                throw ParseError("variable '" + e.name + "' is not allowed here", e.pos);
            return MultiPoly::variable(arity, static_cast<int>(it - names.begin()));
        }
        case Expr::Kind::kNeg:
            return -lower_form(e.children[0], names);
        case Expr::Kind::kAdd:
            return lower_form(e.children[0], names) + lower_form(e.children[1], names);
        case Expr::Kind::kSub:
            return lower_form(e.children[0], names) - lower_form(e.children[1], names);
        case Expr::Kind::kMul:
            return lower_form(e.children[0], names) * lower_form(e.children[1], names);
        case Expr::Kind::kDiv: {
            MultiPoly d = lower_form(e.children[1], names);
            if (!d.is_constant())
                throw ParseError("division by a polynomial is not allowed here", e.pos);
            RationalFunction c = d.constant_value();
            if (c.is_zero_value()) throw ParseError("division by zero", e.pos);
            return lower_form(e.children[0], names).scaled(field_inv(c));
        }
        case Expr::Kind::kPow: {
            MultiPoly b = lower_form(e.children[0], names);
            if (e.exponent >= 0 && !b.is_constant()) return mp_power(b, e.exponent);
            // negative exponents and constant bases stay in the coefficient field
            if (!b.is_constant())
                throw ParseError("negative power of a polynomial is not allowed here", e.pos);
            RationalFunction c = b.constant_value();
            if (c.is_zero_value() && e.exponent < 0)
                throw ParseError("division by zero", e.pos);
            return MultiPoly::constant(arity, c.pow(e.exponent));
        }
    }
    throw ParseError("malformed expression", e.pos);  // unreachable
}

RationalFunction parse_rational(const std::string& text) {
    return lower_rational(parse_expression(text, {"t"}));
}

MultiPoly parse_form(const std::string& text, const std::vector<std::string>& names) {
    std::vector<std::string> context = names;
    context.push_back("t");
    return lower_form(parse_expression(text, context), names);
}

Place parse_place(const std::string& text) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "inf") return Place::infinity();
    RationalFunction f = parse_rational(text);
    if (!f.is_polynomial())
        throw ParseError("a finite place must be a polynomial in t", 0);
    return Place::finite(f.num());
}

std::vector<std::string> projective_names(int arity) {
    std::vector<std::string> names;
    names.reserve(arity);
    for (int j = 0; j < arity; ++j) names.push_back("x" + std::to_string(j));
    return names;
}

}  // namespace ffabc
