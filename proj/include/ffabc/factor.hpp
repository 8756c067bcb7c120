#ifndef FFABC_FACTOR_HPP
#define FFABC_FACTOR_HPP

#include <utility>
#include <vector>

#include "ffabc/unipoly.hpp"

namespace ffabc {

struct UniFactor {
    UniPoly factor;  // monic irreducible over Q
    int multiplicity;
};

/* f = unit * prod factor_i^multiplicity_i, factors monic irreducible over Q,
 * sorted by (degree, coefficients).  The decomposition is canonical, so equal
 * inputs give identical output byte for byte. */
struct UniFactorization {
    Rat unit;
    std::vector<UniFactor> factors;
};

/* Complete factorization over Q.  Squarefree split by Yun's algorithm, then
 * each squarefree part by small-prime distinct-degree / equal-degree splitting
 * with Hensel lifting and subset recombination.  Exact for degrees well past
 * the contract bound of 64; throws on the zero polynomial. */
UniFactorization factor_poly(const UniPoly& f);

/* Yun decomposition: list of (monic squarefree part, multiplicity), pairwise
 * coprime, f = lc * prod part^mult. */
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f);

bool is_irreducible(const UniPoly& f);

}  // namespace ffabc

#endif
