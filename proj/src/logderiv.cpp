#include "ffabc/logderiv.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ffabc {

RationalFunction derive(const RationalFunction& f) { return f.derivative(); }

UnitTuple::UnitTuple(std::vector<RationalFunction> entries, PlaceSet s)
    : entries_(std::move(entries)), s_(std::move(s)) {
    for (const auto& u : entries_)
        if (u.is_zero_value() || !is_s_unit(u, s_))
            throw std::invalid_argument("tuple entry is not an S-unit");
}

RationalFunction UnitTuple::power(const std::vector<long>& m) const {
    if (m.size() != entries_.size()) throw std::invalid_argument("exponent arity mismatch");
    RationalFunction out(1);
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) out = out * entries_[i].pow(m[i]);
    return out;
}

namespace {

std::vector<RationalFunction> log_derivatives(const UnitTuple& u) {
    std::vector<RationalFunction> logs;
    logs.reserve(u.entries().size());
    for (const auto& e : u.entries()) logs.push_back(e.derivative() / e);
    return logs;
}

RationalFunction monomial_value(const UnitTuple& u, const std::vector<int>& e) {
    RationalFunction out(1);
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) out = out * u.entries()[i].pow(e[i]);
    return out;
}

}  // namespace

MultiPoly d_u(const MultiPoly& F, const UnitTuple& u) {
    if (F.arity() != u.size()) throw std::invalid_argument("arity mismatch");
    auto logs = log_derivatives(u);
    MultiPoly out(F.arity());
    for (const auto& [e, a] : F.terms()) {
        RationalFunction twist(0);
        for (size_t j = 0; j < e.size(); ++j)
            if (e[j] != 0) twist = twist + RationalFunction(Rat(e[j])) * logs[j];
        out.add_term(e, a.derivative() + a * twist);
    }
    return out;
}

bool coprime_with_du(const MultiPoly& P, const UnitTuple& u) {
    if (P.arity() != u.size()) throw std::invalid_argument("arity mismatch");
    if (P.term_count() < 2) return false;
    auto ref = P.terms().begin();
    RationalFunction ref_val = ref->second * monomial_value(u, ref->first);
    for (auto it = std::next(ref); it != P.terms().end(); ++it) {
        RationalFunction ratio = (it->second * monomial_value(u, it->first)) / ref_val;
        if (!ratio.is_constant()) return true;
    }
    return false;
}

std::pair<MultiPoly, MultiPoly> split_ab(const MultiPoly& F,
                                         const std::vector<MultiPoly>& irreducible_factors,
                                         const UnitTuple& u) {
    MultiPoly product = MultiPoly::constant(F.arity(), RationalFunction(1));
    for (const auto& P : irreducible_factors) product = product * P;
    if (!(product == F)) throw std::invalid_argument("factorization does not multiply back to F");

    MultiPoly A = MultiPoly::constant(F.arity(), RationalFunction(1));
    MultiPoly B = MultiPoly::constant(F.arity(), RationalFunction(1));
    for (const auto& P : irreducible_factors) {
        if (coprime_with_du(P, u)) {
            A = A * P;
        } else {
            // leading coefficient (largest monomial) moves into A
            RationalFunction lc = P.terms().rbegin()->second;
            B = B * P.scaled(field_inv(lc));
            A = A.scaled(lc);
        }
    }
    return {A, B};
}

bool certify_coprime(const MultiPoly& a, const MultiPoly& b, const PlaceSet& s, int repetitions,
                     std::uint64_t seed) {
    int n = a.arity();
    if (b.arity() != n) throw std::invalid_argument("arity mismatch");
    // a nonzero constant is coprime to everything, including zero
    if ((a.is_constant() && !a.is_zero()) || (b.is_constant() && !b.is_zero())) return true;
    if (a.is_zero() || b.is_zero()) return false;

    std::vector<int> shared;
    for (int k = 0; k < n; ++k)
        if (a.degree_in(k) > 0 && b.degree_in(k) > 0) shared.push_back(k);
    if (shared.empty()) return true;

    auto pool = enumerate_s_units(s, 3);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);

    // collapse a multivariate polynomial to a univariate in x_k over K
    auto specialize = [&](const MultiPoly& f, int k, const std::vector<RationalFunction>& vals) {
        std::vector<RationalFunction> coeffs;
        for (const auto& [e, c] : f.terms()) {
            RationalFunction v = c;
            for (int j = 0; j < n; ++j)
                if (j != k && e[static_cast<size_t>(j)] != 0)
                    v = v * vals[static_cast<size_t>(j)].pow(e[static_cast<size_t>(j)]);
            size_t d = static_cast<size_t>(e[static_cast<size_t>(k)]);
            if (coeffs.size() <= d) coeffs.resize(d + 1, RationalFunction(0));
            coeffs[d] = coeffs[d] + v;
        }
        return UPoly<RationalFunction>::from_coeffs(std::move(coeffs));
    };

    for (int k : shared) {
        bool variable_ok = false;
        for (int rep = 0; rep < repetitions; ++rep) {
            std::vector<RationalFunction> vals(static_cast<size_t>(n), RationalFunction(1));
            for (int j = 0; j < n; ++j)
                if (j != k) vals[static_cast<size_t>(j)] = pool[pick(rng)];
            auto fa = specialize(a, k, vals);
            auto fb = specialize(b, k, vals);
            // a degree drop can hide a common factor behind the specialization
            if (fa.degree() != a.degree_in(k) || fb.degree() != b.degree_in(k)) continue;
            if (!poly_resultant(fa, fb).is_zero_value()) {
                variable_ok = true;
                break;
            }
        }
        if (!variable_ok) return false;
    }
    return true;
}

UnitSumReport unit_sum_check(const std::vector<RationalFunction>& f, const PlaceSet& s) {
    if (f.empty()) throw std::invalid_argument("empty sum");
    RationalFunction total(0);
    for (const auto& fi : f) {
        if (fi.is_zero_value() || !is_s_unit(fi, s))
            throw std::invalid_argument("summand is not an S-unit");
        total = total + fi;
    }
    if (!(total == RationalFunction(1))) throw std::invalid_argument("summands must add to 1");

    size_t n = f.size();
    bool vanishes = false;
    // proper nonempty subsums
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
        RationalFunction sub(0);
        for (size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) sub = sub + f[i];
        if (sub.is_zero_value()) {
            vanishes = true;
            break;
        }
    }

    long maxh = 0;
    for (const auto& fi : f) maxh = std::max(maxh, height(fi));
    long bound = static_cast<long>(n) * (static_cast<long>(n) - 1) / 2 * chi_s_plus(s);
    return UnitSumReport{vanishes, maxh, bound, maxh <= bound};
}

namespace {

bool lex_greater(const std::vector<long>& a, const std::vector<long>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

}  // namespace

std::optional<UnitRelation> unit_relation_search(const MultiPoly& F, const UnitTuple& u) {
    if (F.arity() != u.size()) throw std::invalid_argument("arity mismatch");
    if (F.is_zero()) return std::nullopt;
    std::vector<RationalFunction> vals = u.entries();
    if (!F.eval(vals).is_zero_value()) throw std::invalid_argument("F(u) != 0");

    size_t n = vals.size();
    std::optional<UnitRelation> best;

    /* A vanishing F(u) = 0 has a minimal vanishing subsum, and dividing it by
     * one of its terms exhibits u^(i-j) as a low-height element.  The
     * difference vectors of the support are therefore the complete candidate
     * list; each satisfies sum |m_i| <= 2 deg F. */
    std::vector<std::vector<int>> exps;
    for (const auto& [e, c] : F.terms()) exps.push_back(e);
    for (const auto& ei : exps)
        for (const auto& ej : exps) {
            if (ei == ej) continue;
            std::vector<long> m(n);
            for (size_t k = 0; k < n; ++k) m[k] = static_cast<long>(ei[k]) - ej[k];
            long h = height(u.power(m));
            if (!best || h < best->height ||
                (h == best->height && lex_greater(m, best->exponents)))
                best = UnitRelation{m, h, Int(0)};
        }
    if (!best) return std::nullopt;  // a single-term F cannot vanish on units

    if (best) {
        // cap from the unit-equation argument: a minimal vanishing subsum of
        // F(u) = 0 has at most binom(deg F + n, n) terms
        Int terms_cap;
        mpz_bin_uiui(terms_cap.get_mpz_t(), static_cast<unsigned long>(F.total_degree() + n),
                     static_cast<unsigned long>(n));
        Int vh(poly_height(F).relevant);
        Int chi = Int(chi_s(u.s())) + 2 * terms_cap * vh;
        if (chi < 0) chi = 0;
        best->bound = 2 * vh + (terms_cap - 1) * (terms_cap - 2) / 2 * chi;
    }
    return best;
}

RationalFunction eval_log_form(const LogOneForm& w, const UnitTuple& u) {
    if (static_cast<int>(w.exponents.size()) != u.size())
        throw std::invalid_argument("arity mismatch");
    if (std::all_of(w.exponents.begin(), w.exponents.end(), [](long v) { return v == 0; }))
        throw std::invalid_argument("exponent vector must be nonzero");
    if (w.alpha.is_zero_value()) throw std::invalid_argument("alpha must be nonzero");
    RationalFunction out(0);
    for (size_t i = 0; i < w.exponents.size(); ++i)
        if (w.exponents[i] != 0)
            out = out + RationalFunction(Rat(w.exponents[i])) *
                            (u.entries()[i].derivative() / u.entries()[i]);
    return out - w.alpha.derivative() / w.alpha;
}

}  // namespace ffabc
