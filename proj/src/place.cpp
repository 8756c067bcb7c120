#include "ffabc/place.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffabc/factor.hpp"

namespace ffabc {

Place Place::infinity() {
    Place p;
    p.infinite_ = true;
    return p;
}

Place Place::finite(const UniPoly& pi) {
    if (pi.degree() < 1 || pi.lc() != Rat(1))
        throw std::invalid_argument("place: polynomial must be monic of positive degree");
    if (!is_irreducible(pi)) throw std::invalid_argument("place: polynomial is reducible");
    Place p;
    p.poly_ = pi;
    return p;
}

Place Place::from_irreducible_factor(const UniPoly& pi) {
    Place p;
    p.poly_ = pi;
    return p;
}

const UniPoly& Place::poly() const {
    if (infinite_) throw std::logic_error("place: infinity has no polynomial");
    return poly_;
}

std::string Place::str() const {
    if (infinite_) return "inf";
    return unipoly_str(poly_, "t", true);
}

bool Place::operator==(const Place& o) const {
    if (infinite_ != o.infinite_) return false;
    return infinite_ || poly_ == o.poly_;
}

bool Place::operator<(const Place& o) const {
    if (infinite_ != o.infinite_) return !infinite_;
    if (infinite_) return false;
    if (poly_.degree() != o.poly_.degree()) return poly_.degree() < o.poly_.degree();
    return poly_ < o.poly_;
}

long valuation(const UniPoly& f, const Place& p) {
    if (is_zero(f)) throw std::invalid_argument("valuation of zero");
    if (p.is_infinity()) return -static_cast<long>(f.degree());
    long v = 0;
    UniPoly r = f;
    for (;;) {
        auto [q, rem] = r.divmod(p.poly());
        if (!rem.is_zero_poly()) break;
        ++v;
        r = q;
    }
    return v;
}

long valuation(const RationalFunction& f, const Place& p) {
    if (f.is_zero_value()) throw std::invalid_argument("valuation of zero");
    if (p.is_infinity())
        return static_cast<long>(f.den().degree()) - static_cast<long>(f.num().degree());
    return valuation(f.num(), p) - valuation(f.den(), p);
}

std::vector<Place> support(const RationalFunction& f) {
    if (f.is_zero_value()) throw std::invalid_argument("support of zero");
    std::vector<Place> out;
    for (const auto& [pi, mult] : factor_poly(f.num()).factors) out.push_back(Place::from_irreducible_factor(pi));
    for (const auto& [pi, mult] : factor_poly(f.den()).factors) out.push_back(Place::from_irreducible_factor(pi));
    if (f.num().degree() != f.den().degree()) out.push_back(Place::infinity());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PlaceSet::PlaceSet(std::vector<Place> places) : places_(std::move(places)) {
    std::sort(places_.begin(), places_.end());
    places_.erase(std::unique(places_.begin(), places_.end()), places_.end());
}

bool PlaceSet::contains(const Place& p) const {
    return std::binary_search(places_.begin(), places_.end(), p);
}

long PlaceSet::geometric_size() const {
    long n = 0;
    for (const auto& p : places_) n += p.degree();
    return n;
}

PlaceSet PlaceSet::with(const Place& p) const {
    auto v = places_;
    v.push_back(p);
    return PlaceSet(std::move(v));
}

PlaceSet PlaceSet::union_with(const PlaceSet& o) const {
    auto v = places_;
    v.insert(v.end(), o.places_.begin(), o.places_.end());
    return PlaceSet(std::move(v));
}

long chi_s(const PlaceSet& s) { return -2 + s.geometric_size(); }

long chi_s_plus(const PlaceSet& s) { return std::max(0L, chi_s(s)); }

bool is_s_unit(const RationalFunction& f, const PlaceSet& s) {
    if (f.is_zero_value()) throw std::invalid_argument("S-unit test on zero");
    for (const auto& p : support(f))
        if (!s.contains(p)) return false;
    return true;
}

bool is_s_integer(const RationalFunction& f, const PlaceSet& s) {
    if (f.is_zero_value()) return true;
    for (const auto& p : support(f))
        if (!s.contains(p) && valuation(f, p) < 0) return false;
    return true;
}

std::vector<RationalFunction> enumerate_s_units(const PlaceSet& s, long height_bound) {
    std::vector<Place> finite;
    bool has_inf = false;
    for (const auto& p : s.places()) {
        if (p.is_infinity())
            has_inf = true;
        else
            finite.push_back(p);
    }
    std::vector<RationalFunction> out;
    std::vector<long> e(finite.size(), 0);
    // Exponent box: the height of prod pi_i^{e_i} is at least |e_i| deg(pi_i)
    // for every i, so |e_i| <= H/deg covers all classes of height <= H.
    auto emit = [&]() {
        long degsum = 0;
        for (size_t i = 0; i < e.size(); ++i) degsum += e[i] * finite[i].degree();
        if (!has_inf && degsum != 0) return;
        long zeros = 0, poles = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            long d = e[i] * finite[i].degree();
            if (d > 0) zeros += d;
            if (d < 0) poles -= d;
        }
        if (std::max(zeros, poles) > height_bound) return;
        UniPoly num(Rat(1)), den(Rat(1));
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) num = num * finite[i].poly().pow(static_cast<unsigned long>(e[i]));
            if (e[i] < 0) den = den * finite[i].poly().pow(static_cast<unsigned long>(-e[i]));
        }
        out.emplace_back(num, den);
    };
    // odometer over the box
    std::vector<long> lo(finite.size()), hi(finite.size());
    for (size_t i = 0; i < finite.size(); ++i) {
        long cap = height_bound / finite[i].degree();
        lo[i] = -cap;
        hi[i] = cap;
        e[i] = lo[i];
    }
    if (finite.empty()) {
        emit();
    } else {
        for (;;) {
            emit();
            size_t k = 0;
            while (k < e.size() && e[k] == hi[k]) {
                e[k] = lo[k];
                ++k;
            }
            if (k == e.size()) break;
            ++e[k];
        }
    }
    std::sort(out.begin(), out.end(), [](const RationalFunction& a, const RationalFunction& b) {
        long ha = std::max(a.num().degree(), a.den().degree());
        long hb = std::max(b.num().degree(), b.den().degree());
        if (ha != hb) return ha < hb;
        if (a.num() != b.num()) return a.num() < b.num();
        return a.den() < b.den();
    });
    return out;
}

}  // namespace ffabc
