#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ffabc/factor.hpp"
#include "ffabc/heights.hpp"
#include "ffabc/place.hpp"

using namespace ffabc;

namespace {

UniPoly up(std::vector<Rat> cs) { return UniPoly::from_coeffs(std::move(cs)); }

UniPoly random_poly(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::vector<Rat> cs(static_cast<size_t>(deg) + 1);
    for (auto& c : cs) c = Rat(coeff(rng));
    if (is_zero(cs.back())) cs.back() = Rat(1);
    return up(std::move(cs));
}

RationalFunction random_ratfunc(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> d(0, deg);
    UniPoly num = random_poly(rng, d(rng));
    UniPoly den = random_poly(rng, d(rng));
    if (num.is_zero_poly()) num = UniPoly(Rat(1));
    return RationalFunction(num, den);
}

const UniPoly T = UniPoly::x();

}  // namespace

TEST_CASE("places: construction, degree, ordering") {
    Place pt = Place::finite(T);
    Place pt1 = Place::finite(T - UniPoly(Rat(1)));
    Place pinf = Place::infinity();
    Place pq = Place::finite(T * T + UniPoly(Rat(1)));

    CHECK(pt.degree() == 1);
    CHECK(pq.degree() == 2);
    CHECK(pinf.degree() == 1);
    CHECK(pinf.is_infinity());
    CHECK(pt.str() == "t");
    CHECK(pt1.str() == "t-1");
    CHECK(pq.str() == "t^2+1");
    CHECK(pinf.str() == "inf");

    CHECK_THROWS_AS(Place::finite(T * T - UniPoly(Rat(1))), std::invalid_argument);
    CHECK_THROWS_AS(Place::finite(T * Rat(2)), std::invalid_argument);
    CHECK_THROWS_AS(Place::finite(UniPoly(Rat(1))), std::invalid_argument);

    CHECK(pt1 < pt);       // same degree, smaller constant term
    CHECK(pt < pq);        // lower degree first
    CHECK(pq < pinf);      // infinity sorts last
    CHECK(pt == Place::finite(T));
    CHECK(pt != pt1);
}

TEST_CASE("valuation: frozen examples and product formula") {
    Place pt = Place::finite(T);
    Place pt1 = Place::finite(T - UniPoly(Rat(1)));
    Place pinf = Place::infinity();
    Place pq = Place::finite(T * T + UniPoly(Rat(1)));

    RationalFunction f(T * T, T - UniPoly(Rat(1)));
    CHECK(valuation(f, pt) == 2);
    CHECK(valuation(f, pinf) == -1);
    CHECK(valuation(f, pt1) == -1);
    CHECK(valuation(f, pq) == 0);

    RationalFunction g(UniPoly(Rat(1)), T * T + UniPoly(Rat(1)));
    CHECK(valuation(g, pq) == -1);
    CHECK(valuation(g, pinf) == 2);

    CHECK_THROWS_AS(valuation(RationalFunction(0), pt), std::invalid_argument);

    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        RationalFunction a = random_ratfunc(rng, 4);
        RationalFunction b = random_ratfunc(rng, 4);
        // additivity at a handful of places
        for (const Place& p : {pt, pt1, pinf, pq})
            CHECK(valuation(a * b, p) == valuation(a, p) + valuation(b, p));
        // product formula over the support
        long total = 0;
        for (const Place& p : support(a)) total += p.degree() * valuation(a, p);
        CHECK(total == 0);
    }
}

TEST_CASE("support is sorted and complete") {
    RationalFunction f(T * T, T - UniPoly(Rat(1)));
    auto sup = support(f);
    REQUIRE(sup.size() == 3);
    CHECK(sup[0] == Place::finite(T - UniPoly(Rat(1))));
    CHECK(sup[1] == Place::finite(T));
    CHECK(sup[2] == Place::infinity());
    CHECK(support(RationalFunction(7)).empty());
}

TEST_CASE("place sets and Euler characteristic") {
    Place pt = Place::finite(T);
    Place pt1 = Place::finite(T - UniPoly(Rat(1)));
    Place pinf = Place::infinity();
    Place pq = Place::finite(T * T + UniPoly(Rat(1)));

    PlaceSet s({pt, pt1, pinf, pt});  // duplicate collapses
    CHECK(s.card() == 3);
    CHECK(s.geometric_size() == 3);
    CHECK(chi_s(s) == 1);
    CHECK(chi_s_plus(s) == 1);

    PlaceSet sinf({pinf});
    CHECK(chi_s(sinf) == -1);
    CHECK(chi_s_plus(sinf) == 0);

    PlaceSet sq({pq, pinf});
    CHECK(sq.card() == 2);
    CHECK(sq.geometric_size() == 3);
    CHECK(chi_s(sq) == 1);

    CHECK(s.contains(pt));
    CHECK_FALSE(s.contains(pq));
    CHECK(s.with(pq).card() == 4);
    CHECK(s.union_with(sq) == s.with(pq));
}

TEST_CASE("height of field elements") {
    RationalFunction f(T * T, T - UniPoly(Rat(1)));
    CHECK(height(f) == 2);
    CHECK(height(RationalFunction(Rat(-3, 7))) == 0);
    CHECK(height(f) == height(RationalFunction(1) / f));
    CHECK_THROWS_AS(height(RationalFunction(0)), std::invalid_argument);

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        RationalFunction a = random_ratfunc(rng, 5);
        RationalFunction b = random_ratfunc(rng, 5);
        CHECK(height(a) == height(RationalFunction(1) / a));
        if (!(a * b).is_zero_value()) CHECK(height(a * b) <= height(a) + height(b));
    }
}

TEST_CASE("projective points: canonical form and height") {
    RationalFunction one(1);
    RationalFunction t(T);

    ProjectivePoint p1({one, t.pow(5), t.pow(5)});
    CHECK(height_point(p1) == 5);

    ProjectivePoint p2({RationalFunction(3), RationalFunction(Rat(-1, 2)), RationalFunction(7)});
    CHECK(height_point(p2) == 0);

    RationalFunction tm1 = t - one;
    ProjectivePoint p3({one, t.pow(7), tm1.pow(7)});
    CHECK(height_point(p3) == 7);

    // scaling invariance of the canonical form
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<RationalFunction> coords;
        for (int i = 0; i < 3; ++i) coords.push_back(random_ratfunc(rng, 3));
        ProjectivePoint base(coords);
        RationalFunction scale = random_ratfunc(rng, 2);
        std::vector<RationalFunction> scaled;
        for (const auto& c : coords) scaled.push_back(c * scale);
        ProjectivePoint moved(scaled);
        CHECK(base == moved);
        CHECK(height_point(base) == height_point(moved));
    }

    // denominators clear, content divides out, first nonzero coordinate monic
    ProjectivePoint p4({RationalFunction(T, T - UniPoly(Rat(1))), one});
    REQUIRE(p4.coords().size() == 2);
    CHECK(p4.coords()[0] == T);
    CHECK(p4.coords()[1] == T - UniPoly(Rat(1)));

    ProjectivePoint p5({RationalFunction(0), t * Rat(4)});
    CHECK(p5.coords()[0].is_zero_poly());
    CHECK(p5.coords()[1] == UniPoly(Rat(1)));

    std::vector<RationalFunction> zeros(2, RationalFunction(0));
    CHECK_THROWS_AS(ProjectivePoint{zeros}, std::invalid_argument);
    CHECK(p4.str() == "[t : t - 1]");
}

TEST_CASE("polynomial heights: frozen examples") {
    RationalFunction t(T);
    MultiPoly xy(2);
    xy.add_term({1, 0}, RationalFunction(1));
    xy.add_term({0, 1}, RationalFunction(1));
    auto hh = poly_height(xy);
    CHECK(hh.h == 0);
    CHECK(hh.relevant == 0);

    MultiPoly txy(2);
    txy.add_term({1, 0}, t);
    txy.add_term({0, 1}, RationalFunction(1));
    hh = poly_height(txy);
    CHECK(hh.h == 1);
    CHECK(hh.relevant == 1);

    MultiPoly both(2);
    both.add_term({1, 0}, t);
    both.add_term({0, 1}, t);
    hh = poly_height(both);
    CHECK(hh.h == 0);
    CHECK(hh.relevant == 1);

    CHECK(poly_valuation(both, Place::finite(T)) == 1);
    CHECK(poly_valuation(both, Place::infinity()) == -1);
    CHECK_THROWS_AS(poly_height(MultiPoly(2)), std::invalid_argument);
}

TEST_CASE("polynomial heights: Gauss lemma and multiplicativity") {
    std::mt19937_64 rng(555);
    Place pt = Place::finite(T);
    Place pt1 = Place::finite(T - UniPoly(Rat(1)));
    Place pinf = Place::infinity();

    auto random_mp = [&](int terms) {
        MultiPoly f(2);
        std::uniform_int_distribution<int> e(0, 3);
        while (f.term_count() < static_cast<size_t>(terms)) {
            f.add_term({e(rng), e(rng)}, random_ratfunc(rng, 2));
        }
        return f;
    };

    for (int trial = 0; trial < 30; ++trial) {
        MultiPoly F = random_mp(3);
        MultiPoly G = random_mp(3);
        MultiPoly FG = F * G;
        REQUIRE(!FG.is_zero());
        for (const Place& p : {pt, pt1, pinf})
            CHECK(poly_valuation(FG, p) == poly_valuation(F, p) + poly_valuation(G, p));
        auto hF = poly_height(F);
        auto hG = poly_height(G);
        auto hFG = poly_height(FG);
        CHECK(hFG.h == hF.h + hG.h);
        CHECK(hFG.relevant <= hF.relevant + hG.relevant);
    }
}

TEST_CASE("s-unit and s-integer predicates") {
    RationalFunction t(T);
    RationalFunction one(1);
    PlaceSet s({Place::finite(T), Place::finite(T - UniPoly(Rat(1))), Place::infinity()});

    CHECK(is_s_unit(t * (t - one), s));
    CHECK_FALSE(is_s_unit(t + one, s));
    CHECK(is_s_unit(RationalFunction(Rat(5, 3)), s));

    PlaceSet st1({Place::finite(T - UniPoly(Rat(1)))});
    CHECK(is_s_integer(one / (t - one), st1));
    CHECK_FALSE(is_s_unit(one / (t - one), st1));  // zero of 1/(t-1) at infinity
    CHECK(is_s_integer(RationalFunction(0), st1));
    CHECK_THROWS_AS(is_s_unit(RationalFunction(0), st1), std::invalid_argument);
}

TEST_CASE("enumerate_s_units: frozen classes") {
    RationalFunction t(T);
    RationalFunction one(1);
    RationalFunction tm1 = t - one;

    PlaceSet s_t_inf({Place::finite(T), Place::infinity()});
    auto units = enumerate_s_units(s_t_inf, 2);
    REQUIRE(units.size() == 5);
    std::set<RationalFunction> got(units.begin(), units.end());
    std::set<RationalFunction> expect{t.pow(-2), t.pow(-1), one, t, t * t};
    CHECK(got == expect);

    PlaceSet s_inf({Place::infinity()});
    auto only_const = enumerate_s_units(s_inf, 4);
    REQUIRE(only_const.size() == 1);
    CHECK(only_const[0] == one);

    PlaceSet s3({Place::finite(T), Place::finite(T - UniPoly(Rat(1))), Place::infinity()});
    auto u3 = enumerate_s_units(s3, 1);
    std::set<RationalFunction> got3(u3.begin(), u3.end());
    std::set<RationalFunction> expect3{one, t, one / t, tm1, one / tm1, t / tm1, tm1 / t};
    CHECK(got3 == expect3);
    CHECK(u3.size() <= 27);
}

TEST_CASE("enumerate_s_units: properties and brute-force cross-check") {
    std::vector<PlaceSet> sets = {
        PlaceSet({Place::finite(T), Place::infinity()}),
        PlaceSet({Place::finite(T), Place::finite(T + UniPoly(Rat(1)))}),
        PlaceSet({Place::finite(T), Place::finite(T - UniPoly(Rat(1))), Place::infinity()}),
        PlaceSet({Place::finite(T * T + UniPoly(Rat(1))), Place::infinity()}),
    };
    for (const auto& s : sets) {
        for (long H = 0; H <= 3; ++H) {
            auto units = enumerate_s_units(s, H);
            // size bound with geometric |S|
            Int bound = int_pow(Int(2 * H + 1), static_cast<unsigned long>(s.geometric_size()));
            CHECK(Int(units.size()) <= bound);
            std::set<RationalFunction> seen;
            for (const auto& u : units) {
                CHECK(is_s_unit(u, s));
                CHECK(height(u) <= H);
                CHECK(seen.insert(u).second);  // no duplicate classes
            }
            // brute force over the exponent box on finite places
            std::vector<Place> fin;
            for (const auto& p : s.places())
                if (!p.is_infinity()) fin.push_back(p);
            std::vector<long> e(fin.size(), -H);
            std::set<RationalFunction> brute;
            bool done = fin.empty();
            if (done && H >= 0) brute.insert(RationalFunction(1));
            while (!done) {
                long inf_val = 0;
                for (size_t i = 0; i < fin.size(); ++i) inf_val -= e[i] * fin[i].degree();
                if (s.contains(Place::infinity()) || inf_val == 0) {
                    RationalFunction u(1);
                    for (size_t i = 0; i < fin.size(); ++i)
                        u = u * RationalFunction(fin[i].poly()).pow(e[i]);
                    if (height(u) <= H) brute.insert(u);
                }
                size_t k = 0;
                while (k < e.size() && e[k] == H) e[k++] = -H;
                if (k == e.size())
                    done = true;
                else
                    ++e[k];
            }
            CHECK(seen == brute);
        }
    }
}
