#ifndef FFABC_UNIPOLY_HPP
#define FFABC_UNIPOLY_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ffabc/rat.hpp"

namespace ffabc {

/* Dense univariate polynomial over a field K.  K must provide +, -, *, ==,
 * construction from int, and ADL-visible is_zero(K) / field_inv(K).
 *
 * Invariant: coefficients are stored ascending by power and the top stored
 * coefficient is nonzero.  The zero polynomial stores nothing and reports
 * degree() == -1; that value is a sentinel and never enters arithmetic. */
template <class K>
class UPoly {
    std::vector<K> c_;

    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }

  public:
    UPoly() = default;
    UPoly(const K& constant) {
        if (!is_zero(constant)) c_.push_back(constant);
    }
    UPoly(int constant) : UPoly(K(constant)) {}

    static UPoly from_coeffs(std::vector<K> coeffs) {
        UPoly p;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    /* The monomial c * x^e. */
    static UPoly monomial(const K& coeff, int e) {
        UPoly p;
        if (is_zero(coeff)) return p;
        p.c_.assign(static_cast<size_t>(e) + 1, K(0));
        p.c_.back() = coeff;
        return p;
    }

    static UPoly x() { return monomial(K(1), 1); }

    bool is_zero_poly() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const K& operator[](int i) const {
        static const K zero = K(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }

    const K& lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    const std::vector<K>& coeffs() const { return c_; }

    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& a : r.c_) a = K(-1) * a;
        return r;
    }

    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.c_.resize(std::max(c_.size(), o.c_.size()), K(0));
        for (size_t i = 0; i < r.c_.size(); ++i) {
            K v = K((*this)[static_cast<int>(i)] + o[static_cast<int>(i)]);
            r.c_[i] = v;
        }
        r.trim();
        return r;
    }

    UPoly operator-(const UPoly& o) const { return *this + (-o); }

    UPoly operator*(const UPoly& o) const {
        UPoly r;
        if (c_.empty() || o.c_.empty()) return r;
        r.c_.assign(c_.size() + o.c_.size() - 1, K(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (is_zero(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                r.c_[i + j] = K(r.c_[i + j] + c_[i] * o.c_[j]);
            }
        }
        r.trim();
        return r;
    }

    UPoly operator*(const K& s) const {
        UPoly r;
        if (is_zero(s)) return r;
        r.c_ = c_;
        for (auto& a : r.c_) a = K(a * s);
        r.trim();
        return r;
    }

    /* Multiply by x^e. */
    UPoly shifted(int e) const {
        if (c_.empty() || e == 0) return *this;
        UPoly r;
        r.c_.assign(c_.size() + static_cast<size_t>(e), K(0));
        std::copy(c_.begin(), c_.end(), r.c_.begin() + e);
        return r;
    }

    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero_poly()) throw std::domain_error("polynomial division by zero");
        UPoly q, r = *this;
        if (degree() < d.degree()) return {q, r};
        q.c_.assign(static_cast<size_t>(degree() - d.degree()) + 1, K(0));
        K inv = field_inv(d.lc());
        while (!r.is_zero_poly() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            K f = K(r.lc() * inv);
            q.c_[static_cast<size_t>(k)] = f;
            r = r - d.shifted(k) * f;
        }
        q.trim();
        return {q, r};
    }

    UPoly operator/(const UPoly& d) const { return divmod(d).first; }
    UPoly operator%(const UPoly& d) const { return divmod(d).second; }

    UPoly derivative() const {
        UPoly r;
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = K(c_[i] * K(static_cast<int>(i)));
        r.trim();
        return r;
    }

    K eval(const K& v) const {
        K acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = K(acc * v + c_[i]);
        return acc;
    }

    UPoly monic() const {
        if (c_.empty()) return *this;
        return *this * field_inv(lc());
    }

    UPoly pow(unsigned long e) const {
        UPoly acc(K(1)), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    /* Total ordering for containers: by degree, then coefficients from the top.
     * Requires K to be ordered (used with K = Rat). */
    bool operator<(const UPoly& o) const {
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        }
        return false;
    }
};

template <class K>
bool is_zero(const UPoly<K>& p) {
    return p.is_zero_poly();
}

/* Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0. */
template <class K>
UPoly<K> poly_gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero_poly()) {
        UPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/* Extended gcd: returns (g, s, t) with g monic (or zero) and s*a + t*b = g. */
template <class K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> poly_extended_gcd(const UPoly<K>& a, const UPoly<K>& b) {
    UPoly<K> r0 = a, r1 = b;
    UPoly<K> s0(K(1)), s1(K(0)), t0(K(0)), t1(K(1));
    while (!r1.is_zero_poly()) {
        auto [q, r2] = r0.divmod(r1);
        UPoly<K> s2 = s0 - q * s1;
        UPoly<K> t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero_poly()) return {r0, s0, t0};
    K inv = field_inv(r0.lc());
    return {r0 * inv, s0 * inv, t0 * inv};
}

/* Resultant normalized so Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the
 * roots of a with multiplicity.  Res against a nonzero constant c is
 * c^deg(other); the resultant is 0 exactly when a common root exists. */
template <class K>
K poly_resultant(UPoly<K> a, UPoly<K> b) {
    if (a.is_zero_poly() || b.is_zero_poly()) return K(0);
    if (a.degree() == 0) {
        K acc(1);
        for (int i = 0; i < b.degree(); ++i) acc = K(acc * a.lc());
        return acc;
    }
    K acc(1);
    bool negate = false;
    while (true) {
        if (b.degree() == 0) {
            for (int i = 0; i < a.degree(); ++i) acc = K(acc * b.lc());
            break;
        }
        UPoly<K> r = a % b;
        if (r.is_zero_poly()) return K(0);
        /* Res(a,b) = (-1)^(da*db) * lc(b)^(da - dr) * Res(b, r) */
        if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
        for (int i = 0; i < a.degree() - r.degree(); ++i) acc = K(acc * b.lc());
        a = std::move(b);
        b = std::move(r);
    }
    if (negate) acc = K(K(-1) * acc);
    return acc;
}

using UniPoly = UPoly<Rat>;

/* Radical: f / gcd(f, f'), monic.  Shares the roots of f, each once. */
inline UniPoly squarefree_part(const UniPoly& f) {
    if (f.is_zero_poly()) throw std::invalid_argument("squarefree_part of zero polynomial");
    if (f.degree() == 0) return UniPoly(Rat(1));
    UniPoly g = poly_gcd(f, f.derivative());
    return (f / g).monic();
}

inline std::uint64_t hash_unipoly(std::uint64_t h, const UniPoly& f) {
    h = hash_mix(h, static_cast<std::uint64_t>(f.degree() + 1));
    for (const auto& c : f.coeffs()) h = hash_rat(h, c);
    return h;
}

/* Rendering.  compact omits spaces around +/- ("t^2+1"); used for place names.
 * The output always re-parses under the expression grammar. */
/* Human-readable form, highest degree first, round-trippable through the
 * expression parser.  compact drops the spaces around + and -, the form used
 * for place keys. */
inline std::string unipoly_str(const UniPoly& f, const std::string& var = "t", bool compact = false) {
    if (is_zero(f)) return "0";
    const std::string plus = compact ? "+" : " + ";
    const std::string minus = compact ? "-" : " - ";
    std::string out;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        Rat c = f[i];
        if (is_zero(c)) continue;
        bool neg = sgn(c) < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? minus : plus;
        }
        Rat a = abs(c);
        std::string mag = rat_str(a);
        if (i == 0) {
            out += mag;
            continue;
        }
        if (mag != "1") {
            out += mag;
            out += "*";
        }
        out += var;
        if (i > 1) {
            out += "^";
            out += std::to_string(i);
        }
    }
    return out;
}

}  // namespace ffabc

#endif
