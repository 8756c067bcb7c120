#pragma once

#include <string>
#include <vector>

#include "ffabc/multipoly.hpp"
#include "ffabc/place.hpp"
#include "ffabc/ratfunc.hpp"
#include "ffabc/unipoly.hpp"

namespace ffabc {

// Point of P^n(K) held in canonical form: coordinates are coprime polynomials
// and the first nonzero coordinate is monic.  The canonical form is the unique
// such representative of the scaling class.
class ProjectivePoint {
  public:
    explicit ProjectivePoint(const std::vector<RationalFunction>& coords);

    int dimension() const { return static_cast<int>(coords_.size()) - 1; }
    const std::vector<UniPoly>& coords() const { return coords_; }
    std::vector<RationalFunction> coords_rf() const;

    bool operator==(const ProjectivePoint& o) const { return coords_ == o.coords_; }
    bool operator!=(const ProjectivePoint& o) const { return !(*this == o); }

    std::string str() const;

  private:
    std::vector<UniPoly> coords_;
};

// h(f) = sum over places of deg(p) * max(0, -v_p(f)).
long height(const RationalFunction& f);

// h(x) = sum over places of deg(p) * (-min_i v_p(x_i)).
long height_point(const ProjectivePoint& x);

struct PolyHeight {
    long h;         // sum deg(p) * (-v_p(F))
    long relevant;  // sum deg(p) * max(0, -v_p(F))
};

// v_p(F) = min over coefficients of v_p(a_i).
long poly_valuation(const MultiPoly& F, const Place& p);

PolyHeight poly_height(const MultiPoly& F);

}  // namespace ffabc
