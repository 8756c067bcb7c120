#include "ffabc/heights.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ffabc/factor.hpp"

namespace ffabc {

namespace {

UniPoly poly_lcm(const UniPoly& a, const UniPoly& b) {
    UniPoly g = poly_gcd(a, b);
    return ((a * b) / g).monic();
}

}  // namespace

ProjectivePoint::ProjectivePoint(const std::vector<RationalFunction>& coords) {
    if (coords.empty()) throw std::invalid_argument("projective point needs coordinates");
    bool any = false;
    for (const auto& c : coords) any = any || !c.is_zero_value();
    if (!any) throw std::invalid_argument("projective point cannot be all zero");

    UniPoly den_lcm = UniPoly::from_coeffs({Rat(1)});
    for (const auto& c : coords)
        if (!c.is_zero_value()) den_lcm = poly_lcm(den_lcm, c.den());

    std::vector<UniPoly> polys;
    polys.reserve(coords.size());
    for (const auto& c : coords) {
        if (c.is_zero_value()) {
            polys.push_back(UniPoly());
            continue;
        }
        polys.push_back(c.num() * (den_lcm / c.den()));
    }

    UniPoly content;
    for (const auto& p : polys) content = poly_gcd(content, p);
    for (auto& p : polys)
        if (!p.is_zero_poly()) p = p / content;

    Rat lead(0);
    for (const auto& p : polys)
        if (!p.is_zero_poly()) {
            lead = p.lc();
            break;
        }
    Rat inv = field_inv(lead);
    for (auto& p : polys) p = p * UniPoly::from_coeffs({inv});

    coords_ = std::move(polys);
}

std::vector<RationalFunction> ProjectivePoint::coords_rf() const {
    std::vector<RationalFunction> out;
    out.reserve(coords_.size());
    for (const auto& p : coords_) out.emplace_back(p);
    return out;
}

std::string ProjectivePoint::str() const {
    std::string out = "[";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += " : ";
        out += unipoly_str(coords_[i]);
    }
    out += "]";
    return out;
}

long height(const RationalFunction& f) {
    if (f.is_zero_value()) throw std::invalid_argument("height of zero");
    return std::max(f.num().degree(), f.den().degree());
}

long height_point(const ProjectivePoint& x) {
    long d = 0;
    for (const auto& p : x.coords())
        if (!p.is_zero_poly()) d = std::max<long>(d, p.degree());
    return d;
}

long poly_valuation(const MultiPoly& F, const Place& p) {
    if (F.is_zero()) throw std::invalid_argument("valuation of zero polynomial");
    bool first = true;
    long m = 0;
    for (const auto& [e, c] : F.terms()) {
        long v = valuation(c, p);
        m = first ? v : std::min(m, v);
        first = false;
    }
    return m;
}

PolyHeight poly_height(const MultiPoly& F) {
    if (F.is_zero()) throw std::invalid_argument("height of zero polynomial");
    std::set<Place> finite;
    for (const auto& [e, c] : F.terms())
        for (const auto& p : support(c))
            if (!p.is_infinity()) finite.insert(p);

    PolyHeight out{0, 0};
    auto add = [&](const Place& p) {
        long v = poly_valuation(F, p);
        out.h += p.degree() * (-v);
        out.relevant += p.degree() * std::max<long>(0, -v);
    };
    for (const auto& p : finite) add(p);
    add(Place::infinity());
    return out;
}

}  // namespace ffabc
