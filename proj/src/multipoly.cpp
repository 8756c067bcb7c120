#include "ffabc/multipoly.hpp"

#include <stdexcept>

namespace ffabc {

MultiPoly MultiPoly::constant(int arity, const RationalFunction& c) {
    MultiPoly f(arity);
    f.add_term(std::vector<int>(static_cast<size_t>(arity), 0), c);
    return f;
}

MultiPoly MultiPoly::variable(int arity, int j) {
    std::vector<int> e(static_cast<size_t>(arity), 0);
    e.at(static_cast<size_t>(j)) = 1;
    return monomial(arity, std::move(e), RationalFunction(1));
}

MultiPoly MultiPoly::monomial(int arity, std::vector<int> e, const RationalFunction& c) {
    if (static_cast<int>(e.size()) != arity) throw std::invalid_argument("monomial: exponent arity mismatch");
    MultiPoly f(arity);
    f.add_term(e, c);
    return f;
}

void MultiPoly::add_term(const std::vector<int>& e, const RationalFunction& c) {
    if (static_cast<int>(e.size()) != arity_) throw std::invalid_argument("term arity mismatch");
    for (int v : e)
        if (v < 0) throw std::invalid_argument("negative exponent");
    if (c.is_zero_value()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero_value()) terms_.erase(it);
}

long MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    long d = 0;
    for (int v : terms_.rbegin()->first) d += v;
    return d;
}

long MultiPoly::degree_in(int j) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e.at(static_cast<size_t>(j))));
    return terms_.empty() ? -1 : d;
}

long MultiPoly::min_exponent(int j) const {
    if (terms_.empty()) return 0;
    long m = -1;
    for (const auto& [e, c] : terms_) {
        long v = e.at(static_cast<size_t>(j));
        m = (m < 0) ? v : std::min(m, v);
    }
    return m;
}

bool MultiPoly::is_homogeneous() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
        long s = 0;
        for (int v : e) s += v;
        if (d < 0) d = s;
        if (s != d) return false;
    }
    return true;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

RationalFunction MultiPoly::constant_value() const {
    if (terms_.empty()) return RationalFunction(0);
    if (!is_constant()) throw std::logic_error("constant_value of nonconstant polynomial");
    return terms_.begin()->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("arity mismatch");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::scaled(const RationalFunction& c) const {
    MultiPoly r(arity_);
    if (c.is_zero_value()) return r;
    for (const auto& [e, a] : terms_) r.terms_.emplace(e, a * c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("arity mismatch");
    MultiPoly r(arity_);
    std::vector<int> e(static_cast<size_t>(arity_));
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

RationalFunction MultiPoly::eval(const std::vector<RationalFunction>& vals) const {
    if (static_cast<int>(vals.size()) != arity_) throw std::invalid_argument("eval arity mismatch");
    RationalFunction acc(0);
    for (const auto& [e, c] : terms_) {
        RationalFunction term = c;
        for (size_t j = 0; j < vals.size(); ++j)
            if (e[j] != 0) term = term * vals[j].pow(e[j]);
        acc = acc + term;
    }
    return acc;
}

MultiPoly MultiPoly::partial(int j) const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) {
        int k = e.at(static_cast<size_t>(j));
        if (k == 0) continue;
        auto e2 = e;
        e2[static_cast<size_t>(j)] = k - 1;
        r.add_term(e2, c * RationalFunction(k));
    }
    return r;
}

MultiPoly MultiPoly::coeff_derivative() const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.derivative());
    return r;
}

MultiPoly MultiPoly::homogeneous_part(long d) const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) {
        long s = 0;
        for (int v : e) s += v;
        if (s == d) r.add_term(e, c);
    }
    return r;
}

MultiPoly MultiPoly::dehomogenize(int j) const {
    MultiPoly r(arity_ - 1);
    std::vector<int> e2(static_cast<size_t>(arity_ - 1));
    for (const auto& [e, c] : terms_) {
        size_t k = 0;
        for (size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != j) e2[k++] = e[i];
        r.add_term(e2, c);
    }
    return r;
}

MultiPoly MultiPoly::homogenize(int j, long d) const {
    MultiPoly r(arity_ + 1);
    std::vector<int> e2(static_cast<size_t>(arity_ + 1));
    for (const auto& [e, c] : terms_) {
        long s = 0;
        for (int v : e) s += v;
        if (s > d) throw std::invalid_argument("homogenize: degree below a term");
        size_t k = 0;
        for (size_t i = 0; i < e2.size(); ++i) {
            if (static_cast<int>(i) == j)
                e2[i] = static_cast<int>(d - s);
            else
                e2[i] = e[k++];
        }
        r.add_term(e2, c);
    }
    return r;
}

MultiPoly MultiPoly::swap_vars(int i, int j) const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) {
        auto e2 = e;
        std::swap(e2.at(static_cast<size_t>(i)), e2.at(static_cast<size_t>(j)));
        r.add_term(e2, c);
    }
    return r;
}

std::string multipoly_str(const MultiPoly& f, const std::vector<std::string>& vars) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    // leading term first
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        bool is_const_term = true;
        for (int v : e)
            if (v) is_const_term = false;
        RationalFunction cc = c;
        bool neg = sgn(cc.num().lc()) < 0;
        if (neg) cc = -cc;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string cs = ratfunc_str(cc);
        bool coeff_needed = is_const_term || cs != "1";
        bool wrap = cs.find(' ') != std::string::npos ||
                    (!is_const_term && cs.find('/') != std::string::npos);
        std::string piece;
        if (coeff_needed) piece += wrap ? "(" + cs + ")" : cs;
        for (size_t j = 0; j < e.size(); ++j) {
            if (!e[j]) continue;
            if (!piece.empty()) piece += "*";
            piece += vars.at(j);
            if (e[j] > 1) piece += "^" + std::to_string(e[j]);
        }
        out += piece;
    }
    return out;
}

std::string multipoly_str(const MultiPoly& f) {
    std::vector<std::string> vars;
    for (int j = 0; j < f.arity(); ++j) vars.push_back("x" + std::to_string(j));
    return multipoly_str(f, vars);
}

std::uint64_t hash_multipoly(const MultiPoly& f) {
    std::uint64_t h = 0x1bd11bdaa9fc1a22ULL ^ static_cast<std::uint64_t>(f.arity());
    for (const auto& [e, c] : f.terms()) {
        for (int v : e) h = hash_mix(h, static_cast<std::uint64_t>(v));
        h = hash_ratfunc(h, c);
    }
    return h;
}

}  // namespace ffabc
