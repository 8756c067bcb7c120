#ifndef FFABC_RAT_HPP
#define FFABC_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffabc {

/* Exact arithmetic base layer.  Int and Rat are GMP-backed; everything above
 * this file is built on them.  No floating point appears anywhere. */
using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }
inline bool is_zero(const Int& a) { return sgn(a) == 0; }

inline Rat field_inv(const Rat& a) {
    if (is_zero(a)) throw std::domain_error("division by zero rational");
    return Rat(1) / a;
}

/* a^e for integer e; e < 0 inverts. */
inline Rat rat_pow(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    Rat base = e < 0 ? field_inv(a) : a;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline Int int_pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

/* Canonical rendering: "p/q" with q > 0, or just "p" when q == 1. */
inline std::string rat_str(const Rat& a) {
    Rat c = a;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline std::string int_str(const Int& a) { return a.get_str(); }

/* Mixing hash for deterministic seeding of internal randomized routines. */
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline std::uint64_t hash_int(std::uint64_t h, const Int& a) {
    h = hash_mix(h, static_cast<std::uint64_t>(mpz_fdiv_ui(a.get_mpz_t(), 0xfffffffbULL)));
    h = hash_mix(h, static_cast<std::uint64_t>(sgn(a) < 0));
    return h;
}

inline std::uint64_t hash_rat(std::uint64_t h, const Rat& a) {
    h = hash_int(h, a.get_num());
    h = hash_int(h, a.get_den());
    return h;
}

}  // namespace ffabc

#endif
