#include "ffabc/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ffabc {

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f) {
    if (is_zero(f)) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<UniPoly, int>> out;
    if (f.degree() == 0) return out;
    UniPoly c = f.monic();
    // Yun's algorithm.  Invariant: c * prod(a_j^j emitted so far) accounts for f/lc.
    UniPoly g = poly_gcd(c, c.derivative());
    UniPoly w = c / g;
    UniPoly z = c.derivative() / g - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        UniPoly a = poly_gcd(w, z);
        if (a.degree() > 0) out.emplace_back(a, i);
        w = w / a;
        z = z / a - w.derivative();
        ++i;
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Arithmetic mod a word-sized prime p.  Coefficients ascending, trailing zeros
// trimmed.  p stays below 2^31 so products fit in uint64 without overflow.
// ---------------------------------------------------------------------------

using MVec = std::vector<std::uint64_t>;

struct Fp {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { std::uint64_t s = a + b; return s >= p ? s - p : s; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
    std::uint64_t pw(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pw(a, p - 2); }
};

void m_trim(MVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int m_deg(const MVec& a) { return static_cast<int>(a.size()) - 1; }

MVec m_mul(const Fp& F, const MVec& a, const MVec& b) {
    if (a.empty() || b.empty()) return {};
    MVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    m_trim(r);
    return r;
}

// Remainder of a by b, b nonzero.
MVec m_rem(const Fp& F, MVec a, const MVec& b) {
    std::uint64_t il = F.inv(b.back());
    while (m_deg(a) >= m_deg(b)) {
        std::uint64_t c = F.mul(a.back(), il);
        size_t off = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[off + j] = F.sub(a[off + j], F.mul(c, b[j]));
        m_trim(a);
        if (a.empty()) break;
    }
    return a;
}

MVec m_quot(const Fp& F, MVec a, const MVec& b) {
    std::uint64_t il = F.inv(b.back());
    MVec q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (m_deg(a) >= m_deg(b)) {
        std::uint64_t c = F.mul(a.back(), il);
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j) a[off + j] = F.sub(a[off + j], F.mul(c, b[j]));
        m_trim(a);
        if (a.empty()) break;
    }
    m_trim(q);
    return q;
}

MVec m_monic(const Fp& F, MVec a) {
    if (a.empty()) return a;
    std::uint64_t il = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, il);
    return a;
}

MVec m_gcd(const Fp& F, MVec a, MVec b) {
    while (!b.empty()) {
        MVec r = m_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return m_monic(F, std::move(a));
}

MVec m_sub(const Fp& F, MVec a, const MVec& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    m_trim(a);
    return a;
}

MVec m_deriv(const Fp& F, const MVec& a) {
    MVec r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], i % F.p));
    m_trim(r);
    return r;
}

// base^e mod m, exponent an arbitrary nonnegative Int.
MVec m_powmod(const Fp& F, MVec base, const Int& e, const MVec& m) {
    MVec r{1};
    base = m_rem(F, std::move(base), m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = m_rem(F, m_mul(F, r, r), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = m_rem(F, m_mul(F, r, base), m);
    }
    return r;
}

// Distinct-degree decomposition of monic squarefree a: list of (product, d).
std::vector<std::pair<MVec, int>> m_ddf(const Fp& F, MVec a) {
    std::vector<std::pair<MVec, int>> out;
    MVec x{0, 1};
    MVec h = m_rem(F, x, a);
    int d = 1;
    while (2 * d <= m_deg(a)) {
        h = m_powmod(F, h, Int(static_cast<unsigned long>(F.p)), a);
        MVec g = m_gcd(F, m_sub(F, h, x), a);
        if (m_deg(g) > 0) {
            out.emplace_back(g, d);
            a = m_quot(F, std::move(a), g);
            h = m_rem(F, std::move(h), a);
        }
        ++d;
    }
    if (m_deg(a) > 0) out.emplace_back(a, m_deg(a));
    return out;
}

// Equal-degree splitting: every irreducible factor of a has degree d.
void m_edf(const Fp& F, const MVec& a, int d, std::mt19937_64& rng, std::vector<MVec>& out) {
    if (m_deg(a) == d) {
        out.push_back(a);
        return;
    }
    Int e = (int_pow(Int(static_cast<unsigned long>(F.p)), static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        MVec r(m_deg(a), 0);
        for (auto& c : r) c = rng() % F.p;
        m_trim(r);
        if (m_deg(r) < 1) continue;
        MVec s = m_powmod(F, r, e, a);
        s = m_sub(F, std::move(s), MVec{1});
        MVec w = m_gcd(F, s, a);
        if (m_deg(w) > 0 && m_deg(w) < m_deg(a)) {
            m_edf(F, w, d, rng, out);
            m_edf(F, m_quot(F, a, w), d, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Arithmetic mod p^k with multiprecision coefficients, for Hensel lifting.
// Coefficients normalized into [0, M).
// ---------------------------------------------------------------------------

using ZVec = std::vector<Int>;

void z_trim(ZVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int z_deg(const ZVec& a) { return static_cast<int>(a.size()) - 1; }

ZVec z_norm(ZVec a, const Int& M) {
    for (auto& c : a) {
        c %= M;
        if (c < 0) c += M;
    }
    z_trim(a);
    return a;
}

ZVec z_mul(const ZVec& a, const ZVec& b, const Int& M) {
    if (a.empty() || b.empty()) return {};
    ZVec r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return z_norm(std::move(r), M);
}

ZVec z_add(ZVec a, const ZVec& b, const Int& M) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return z_norm(std::move(a), M);
}

ZVec z_sub(ZVec a, const ZVec& b, const Int& M) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return z_norm(std::move(a), M);
}

// divmod by a monic divisor; valid over Z/M for any M.
std::pair<ZVec, ZVec> z_divmod_monic(ZVec a, const ZVec& b, const Int& M) {
    ZVec q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Int(0));
    while (z_deg(a) >= z_deg(b)) {
        Int c = a.back();
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j) a[off + j] = (a[off + j] - c * b[j]) % M;
        z_trim(a);
        a = z_norm(std::move(a), M);
        if (a.empty()) break;
    }
    z_trim(q);
    return {z_norm(std::move(q), M), std::move(a)};
}

ZVec z_scale(ZVec a, const Int& c, const Int& M) {
    for (auto& x : a) x *= c;
    return z_norm(std::move(a), M);
}

ZVec z_from_m(const MVec& a) {
    ZVec r;
    for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

/* One quadratic Hensel step: given f = g*h and s*g + t*h = 1 (mod m) with h
 * monic and deg s < deg h, deg t < deg g, produce the same data mod m^2. */
void hensel_step(const ZVec& f, ZVec& g, ZVec& h, ZVec& s, ZVec& t, const Int& m) {
    Int M = m * m;
    ZVec e = z_sub(z_norm(f, M), z_mul(g, h, M), M);
    auto [q, r] = z_divmod_monic(z_mul(s, e, M), h, M);
    ZVec gs = z_add(z_add(g, z_mul(t, e, M), M), z_mul(q, g, M), M);
    ZVec hs = z_add(h, r, M);
    ZVec b = z_sub(z_add(z_mul(s, gs, M), z_mul(t, hs, M), M), ZVec{Int(1)}, M);
    auto [c, d] = z_divmod_monic(z_mul(s, b, M), hs, M);
    ZVec ss = z_sub(s, d, M);
    ZVec ts = z_sub(z_sub(t, z_mul(t, b, M), M), z_mul(c, gs, M), M);
    g = std::move(gs);
    h = std::move(hs);
    s = std::move(ss);
    t = std::move(ts);
}

// Extended gcd mod p: returns (s, t) with s*a + t*b = 1, assuming gcd = 1.
std::pair<ZVec, ZVec> m_bezout(const Fp& F, const MVec& a, const MVec& b) {
    MVec r0 = a, r1 = b;
    MVec s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        MVec q = m_quot(F, r0, r1);
        MVec r2 = m_sub(F, r0, m_mul(F, q, r1));
        MVec s2 = m_sub(F, s0, m_mul(F, q, s1));
        MVec t2 = m_sub(F, t0, m_mul(F, q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    std::uint64_t il = F.inv(r0[0]);
    for (auto& c : s0) c = F.mul(c, il);
    for (auto& c : t0) c = F.mul(c, il);
    return {z_from_m(s0), z_from_m(t0)};
}

/* Lift the congruence F = unit * prod(mods) from mod p to mod M = p^K by a
 * balanced factor tree.  Appends the lifted monic factors to out. */
void tree_lift(const Fp& Fpr, const ZVec& F, const Int& unit,
               const std::vector<MVec>& mods, const Int& M, std::vector<ZVec>& out) {
    if (mods.size() == 1) {
        Int il;
        mpz_invert(il.get_mpz_t(), unit.get_mpz_t(), M.get_mpz_t());
        ZVec g = z_scale(F, il, M);
        // force exactly monic (lc is a unit congruent to 1 after scaling)
        Int lil;
        mpz_invert(lil.get_mpz_t(), g.back().get_mpz_t(), M.get_mpz_t());
        out.push_back(z_scale(std::move(g), lil, M));
        return;
    }
    size_t half = mods.size() / 2;
    MVec g0{static_cast<std::uint64_t>(mpz_fdiv_ui(unit.get_mpz_t(), Fpr.p))};
    for (size_t i = 0; i < half; ++i) g0 = m_mul(Fpr, g0, mods[i]);
    MVec h0{1};
    for (size_t i = half; i < mods.size(); ++i) h0 = m_mul(Fpr, h0, mods[i]);
    auto [s, t] = m_bezout(Fpr, g0, h0);
    ZVec g = z_from_m(g0), h = z_from_m(h0);
    Int m(static_cast<unsigned long>(Fpr.p));
    while (m < M) {
        hensel_step(z_norm(F, m * m), g, h, s, t, m);
        m *= m;
    }
    g = z_norm(std::move(g), M);
    h = z_norm(std::move(h), M);
    std::vector<MVec> left(mods.begin(), mods.begin() + half);
    std::vector<MVec> right(mods.begin() + half, mods.end());
    tree_lift(Fpr, g, unit, left, M, out);
    tree_lift(Fpr, h, Int(1), right, M, out);
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers.
// ---------------------------------------------------------------------------

Int z_content(const ZVec& a) {
    Int g(0);
    for (const auto& c : a) g = gcd(g, c);
    return g;
}

ZVec z_primitive(ZVec a) {
    Int g = z_content(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

// Exact division test in Z[x]; quotient returned through q when it divides.
bool z_divides(const ZVec& a, const ZVec& b, ZVec& q) {
    if (b.empty() || a.size() < b.size()) return false;
    ZVec r = a;
    q.assign(a.size() - b.size() + 1, Int(0));
    while (z_deg(r) >= z_deg(b)) {
        if (r.back() % b.back() != 0) return false;
        Int c = r.back() / b.back();
        size_t off = r.size() - b.size();
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j) r[off + j] -= c * b[j];
        z_trim(r);
    }
    return r.empty();
}

ZVec z_centered(ZVec a, const Int& M) {
    Int half = M / 2;
    for (auto& c : a) {
        c %= M;
        if (c < 0) c += M;
        if (c > half) c -= M;
    }
    z_trim(a);
    return a;
}

// Primes with products fitting uint64; chosen in order, skipping bad reduction.
const std::uint64_t kPrimes[] = {17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                                 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
                                 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
                                 1000003, 1000033, 1000037, 1000039, 1000081, 1000099};

MVec z_reduce(const ZVec& a, const Fp& F) {
    MVec r;
    for (const auto& c : a) {
        std::uint64_t v = mpz_fdiv_ui(c.get_mpz_t(), F.p);
        r.push_back(v);
    }
    m_trim(r);
    return r;
}

std::uint64_t z_hash(const ZVec& a) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (const auto& c : a) h = hash_int(h, c);
    return h;
}

/* Factor a primitive squarefree Z-polynomial of degree >= 2 with positive
 * leading coefficient into primitive irreducible Z-factors. */
std::vector<ZVec> z_factor_squarefree(const ZVec& F) {
    int n = z_deg(F);
    // Pick the prime giving the fewest modular factors among the first few
    // with good reduction; fewer factors means cheaper recombination.
    const int kTries = 5;
    const size_t kListLen = sizeof(kPrimes) / sizeof(kPrimes[0]);
    int seen = 0;
    std::uint64_t best_p = 0;
    int best_count = n + 1;
    std::vector<std::pair<MVec, int>> best_ddf;
    std::uint64_t p = 0;
    size_t list_pos = 0;
    for (int scanned = 0; seen < kTries && scanned < 400; ++scanned) {
        if (list_pos < kListLen) {
            p = kPrimes[list_pos++];
        } else {
            Int z(static_cast<unsigned long>(p));
            mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
            p = z.get_ui();
        }
        Fp Fpr{p};
        if (mpz_fdiv_ui(F.back().get_mpz_t(), p) == 0) continue;
        MVec fp = m_monic(Fpr, z_reduce(F, Fpr));
        MVec gc = m_gcd(Fpr, fp, m_deriv(Fpr, fp));
        if (m_deg(gc) != 0) continue;  // not squarefree mod p
        ++seen;
        auto ddf = m_ddf(Fpr, fp);
        int count = 0;
        for (const auto& [prod, d] : ddf) count += m_deg(prod) / d;
        if (count < best_count) {
            best_count = count;
            best_p = p;
            best_ddf = std::move(ddf);
        }
        if (best_count == 1) break;
    }
    if (best_p == 0) throw std::runtime_error("factorization: no usable prime");
    if (best_count == 1) return {F};

    Fp Fpr{best_p};
    std::mt19937_64 rng(hash_mix(z_hash(F), best_p));
    std::vector<MVec> mods;
    for (const auto& [prod, d] : best_ddf) m_edf(Fpr, prod, d, rng, mods);
    std::sort(mods.begin(), mods.end(), [](const MVec& a, const MVec& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });

    // Coefficient bound for any factor times the leading coefficient, then the
    // modulus must cover the symmetric range.
    Int norm1(0);
    for (const auto& c : F) norm1 += abs(c);
    Int B = abs(F.back()) * (int_pow(Int(2), static_cast<unsigned long>(n)) * norm1);
    Int M(static_cast<unsigned long>(best_p));
    while (M < 2 * B + 1) M *= M;

    std::vector<ZVec> lifted;
    tree_lift(Fpr, z_norm(F, M), F.back(), mods, M, lifted);

    // Subset recombination by increasing cardinality.
    std::vector<ZVec> out;
    ZVec rem = F;
    std::vector<size_t> idx(lifted.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    size_t s = 1;
    while (2 * s <= idx.size()) {
        std::vector<size_t> pick(s);
        for (size_t i = 0; i < s; ++i) pick[i] = i;
        bool found = false;
        for (;;) {
            ZVec cand{rem.back()};
            for (size_t i : pick) cand = z_mul(cand, lifted[idx[i]], M);
            cand = z_centered(std::move(cand), M);
            ZVec candp = z_primitive(cand);
            ZVec q;
            if (!candp.empty() && z_divides(rem, candp, q)) {
                out.push_back(candp);
                rem = z_primitive(std::move(q));
                std::vector<size_t> keep;
                for (size_t i = 0; i < idx.size(); ++i)
                    if (std::find(pick.begin(), pick.end(), i) == pick.end()) keep.push_back(idx[i]);
                idx.clear();
                for (size_t v : keep) idx.push_back(v);
                found = true;
                break;
            }
            // next s-subset of {0..idx.size()-1} in lex order
            size_t k = s;
            while (k > 0 && pick[k - 1] == idx.size() - s + (k - 1)) --k;
            if (k == 0) break;
            ++pick[k - 1];
            for (size_t i = k; i < s; ++i) pick[i] = pick[i - 1] + 1;
        }
        if (!found) ++s;
    }
    if (z_deg(rem) > 0) out.push_back(rem);
    return out;
}

ZVec z_from_q(const UniPoly& f) {
    // Clear denominators; result primitive with positive leading coefficient.
    Int l(1);
    for (int i = 0; i <= f.degree(); ++i) {
        Rat c = f[i];
        c.canonicalize();
        l = lcm(l, c.get_den());
    }
    ZVec r;
    for (int i = 0; i <= f.degree(); ++i) {
        Rat c = f[i] * Rat(l);
        c.canonicalize();
        r.push_back(c.get_num());
    }
    return z_primitive(std::move(r));
}

UniPoly q_monic_from_z(const ZVec& a) {
    std::vector<Rat> cs;
    for (const auto& c : a) cs.emplace_back(c, a.back());
    for (auto& c : cs) c.canonicalize();
    return UniPoly::from_coeffs(cs);
}

std::vector<UniPoly> factor_squarefree_monic(const UniPoly& f) {
    if (f.degree() == 1) return {f};
    auto zf = z_factor_squarefree(z_from_q(f));
    std::vector<UniPoly> out;
    for (const auto& g : zf) out.push_back(q_monic_from_z(g));
    return out;
}

}  // namespace

UniFactorization factor_poly(const UniPoly& f) {
    if (is_zero(f)) throw std::invalid_argument("factor_poly: zero polynomial");
    UniFactorization out;
    out.unit = f.lc();
    if (f.degree() == 0) return out;
    for (const auto& [part, mult] : squarefree_decomposition(f))
        for (const auto& irr : factor_squarefree_monic(part))
            out.factors.push_back({irr, mult});
    std::sort(out.factors.begin(), out.factors.end(), [](const UniFactor& a, const UniFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return a.factor < b.factor;
    });
    return out;
}

bool is_irreducible(const UniPoly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    auto fac = factor_poly(f);
    return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace ffabc
