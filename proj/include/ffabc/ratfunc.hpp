#ifndef FFABC_RATFUNC_HPP
#define FFABC_RATFUNC_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "ffabc/unipoly.hpp"

namespace ffabc {

/* Fraction field of UPoly<K>.  Canonical form: denominator monic, numerator
 * and denominator coprime, zero stored as 0/1.  Canonicity makes equality
 * structural, which everything downstream (maps, reports, goldens) relies on. */
template <class K>
class PolyFraction {
    UPoly<K> num_, den_;

    void normalize() {
        if (den_.is_zero_poly()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero_poly()) {
            den_ = UPoly<K>(K(1));
            return;
        }
        UPoly<K> g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        K inv = field_inv(den_.lc());
        num_ = num_ * inv;
        den_ = den_ * inv;
    }

  public:
    PolyFraction() : num_(), den_(K(1)) {}
    PolyFraction(const UPoly<K>& n) : num_(n), den_(K(1)) {}
    PolyFraction(const K& c) : num_(c), den_(K(1)) {}
    PolyFraction(int c) : num_(K(c)), den_(K(1)) {}
    PolyFraction(UPoly<K> n, UPoly<K> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static PolyFraction x() { return PolyFraction(UPoly<K>::x()); }

    const UPoly<K>& num() const { return num_; }
    const UPoly<K>& den() const { return den_; }

    bool is_zero_value() const { return num_.is_zero_poly(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    /* Value of a constant fraction as an element of K. */
    K constant_value() const {
        if (!is_constant()) throw std::domain_error("constant_value of non-constant fraction");
        return num_.is_zero_poly() ? K(0) : num_.lc();
    }

    bool operator==(const PolyFraction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const PolyFraction& o) const { return !(*this == o); }
    bool operator<(const PolyFraction& o) const {
        if (!(den_ == o.den_)) return den_ < o.den_;
        return num_ < o.num_;
    }

    PolyFraction operator-() const {
        PolyFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    PolyFraction operator+(const PolyFraction& o) const {
        return PolyFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    PolyFraction operator-(const PolyFraction& o) const { return *this + (-o); }
    PolyFraction operator*(const PolyFraction& o) const {
        return PolyFraction(num_ * o.num_, den_ * o.den_);
    }
    PolyFraction operator/(const PolyFraction& o) const {
        if (o.is_zero_value()) throw std::domain_error("division by zero rational function");
        return PolyFraction(num_ * o.den_, den_ * o.num_);
    }

    /* d/dx by the quotient rule. */
    PolyFraction derivative() const {
        return PolyFraction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    PolyFraction pow(long e) const {
        if (e < 0) {
            if (is_zero_value()) throw std::domain_error("negative power of zero");
            return PolyFraction(den_, num_).pow(-e);
        }
        PolyFraction acc(1), base = *this;
        unsigned long n = static_cast<unsigned long>(e);
        while (n) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }
};

template <class K>
bool is_zero(const PolyFraction<K>& f) {
    return f.is_zero_value();
}

template <class K>
PolyFraction<K> field_inv(const PolyFraction<K>& f) {
    if (f.is_zero_value()) throw std::domain_error("inverse of zero rational function");
    return PolyFraction<K>(f.den(), f.num());
}

/* The base field of the whole artifact: K = Q(t) on the projective line. */
using RationalFunction = PolyFraction<Rat>;

inline RationalFunction rf_t() { return RationalFunction::x(); }

inline bool is_rat_constant(const RationalFunction& f) { return f.is_constant(); }

inline Rat rf_constant_value(const RationalFunction& f) { return f.constant_value(); }

inline std::uint64_t hash_ratfunc(std::uint64_t h, const RationalFunction& f) {
    h = hash_unipoly(h, f.num());
    h = hash_unipoly(h, f.den());
    return h;
}

/* "(t^2-1)/(t-2)" style; parenthesized so it re-parses under the grammar. */
/* Canonical form: denominator is monic, omitted when it is 1. */
inline std::string ratfunc_str(const RationalFunction& f, const std::string& var = "t") {
    if (f.den().degree() == 0) return unipoly_str(f.num(), var);
    return "(" + unipoly_str(f.num(), var) + ")/(" + unipoly_str(f.den(), var) + ")";
}

}  // namespace ffabc

#endif
