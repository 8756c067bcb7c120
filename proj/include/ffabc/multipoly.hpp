#ifndef FFABC_MULTIPOLY_HPP
#define FFABC_MULTIPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "ffabc/ratfunc.hpp"

namespace ffabc {

// Graded lexicographic term order; the map's last entry is the leading term.
struct GrlexLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        long ta = 0, tb = 0;
        for (int v : a) ta += v;
        for (int v : b) tb += v;
        if (ta != tb) return ta < tb;
        return a < b;
    }
};

/* Sparse polynomial in a fixed number of variables with coefficients in Q(t).
 * Exponent vectors all have length arity; zero coefficients are never stored. */
class MultiPoly {
public:
    using TermMap = std::map<std::vector<int>, RationalFunction, GrlexLess>;

    explicit MultiPoly(int arity = 0) : arity_(arity) {}
    static MultiPoly constant(int arity, const RationalFunction& c);
    static MultiPoly variable(int arity, int j);
    static MultiPoly monomial(int arity, std::vector<int> e, const RationalFunction& c);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    // Accumulates into the term, dropping it if the sum cancels.
    void add_term(const std::vector<int>& e, const RationalFunction& c);

    long total_degree() const;  // -1 for the zero polynomial
    long degree_in(int j) const;
    long min_exponent(int j) const;  // >= 1 iff x_j divides the polynomial
    bool is_homogeneous() const;
    bool is_constant() const;
    RationalFunction constant_value() const;  // 0 for zero polynomial

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const RationalFunction& c) const;
    bool operator==(const MultiPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    RationalFunction eval(const std::vector<RationalFunction>& vals) const;

    MultiPoly partial(int j) const;          // d/dx_j
    MultiPoly coeff_derivative() const;      // d/dt applied to every coefficient
    MultiPoly homogeneous_part(long d) const;

    // Substitute x_j = 1 and drop the variable; terms may merge.
    MultiPoly dehomogenize(int j) const;
    // Inverse on homogeneous input: insert x_j with exponent d - (term degree).
    MultiPoly homogenize(int j, long d) const;
    MultiPoly swap_vars(int i, int j) const;

private:
    int arity_;
    TermMap terms_;
};

std::string multipoly_str(const MultiPoly& f, const std::vector<std::string>& vars);
// Default variable names x0..x{n-1}.
std::string multipoly_str(const MultiPoly& f);
std::uint64_t hash_multipoly(const MultiPoly& f);

}  // namespace ffabc

#endif
