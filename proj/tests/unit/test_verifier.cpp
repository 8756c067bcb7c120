#include <doctest.h>

#include <random>

#include "ffabc/verifier.hpp"

using namespace ffabc;

namespace {

RationalFunction rf(long n, long d = 1) { return RationalFunction(Rat(n, d)); }

const UniPoly T = UniPoly::x();
const Place PT = Place::finite(T);
const Place PT1 = Place::finite(T - UniPoly(Rat(1)));
const Place PTP1 = Place::finite(T + UniPoly(Rat(1)));
const Place PINF = Place::infinity();

RationalFunction rft() { return RationalFunction(T); }

MultiPoly mp(int arity, std::initializer_list<std::pair<std::vector<int>, RationalFunction>> terms) {
    MultiPoly f(arity);
    for (const auto& [e, c] : terms) f.add_term(e, c);
    return f;
}

const MultiPoly X0 = MultiPoly::variable(3, 0);
const MultiPoly X1 = MultiPoly::variable(3, 1);
const MultiPoly X2 = MultiPoly::variable(3, 2);

// x0 + x1 + x2, the divisor of the unit equation.
const MultiPoly G_LINE = X0 + X1 + X2;

}  // namespace

TEST_CASE("hypothesis gate: frozen examples") {
    auto pass = validate_hypotheses(X0 * X0 + X1 * X1 + X2 * X2);
    CHECK(pass.all_pass);
    CHECK(pass.no_monomial_factor);
    CHECK(pass.squarefree_certified);
    CHECK(pass.coordinate_nonvanishing);
    CHECK(pass.failures.empty());

    auto corner = validate_hypotheses(X0 * X1 + X2 * X2);
    CHECK_FALSE(corner.all_pass);
    CHECK(corner.no_monomial_factor);
    CHECK(corner.squarefree_certified);
    CHECK_FALSE(corner.coordinate_nonvanishing);
    REQUIRE(corner.failures.size() == 2);
    CHECK(corner.failures[0] == "vanishes at [1:0:0]");
    CHECK(corner.failures[1] == "vanishes at [0:1:0]");

    auto monomial = validate_hypotheses(X0 * (X0 + X1));
    CHECK_FALSE(monomial.all_pass);
    CHECK_FALSE(monomial.no_monomial_factor);
    bool found = false;
    for (const auto& f : monomial.failures)
        if (f == "monomial factor: x0 divides the polynomial") found = true;
    CHECK(found);

    MultiPoly square = G_LINE * G_LINE;
    auto repeated = validate_hypotheses(square);
    CHECK_FALSE(repeated.all_pass);
    CHECK(repeated.no_monomial_factor);
    CHECK_FALSE(repeated.squarefree_certified);
    CHECK(repeated.coordinate_nonvanishing);
    CHECK(repeated.failures.size() == 3);  // every variable carries the repeated factor

    auto zero = validate_hypotheses(MultiPoly(3));
    CHECK_FALSE(zero.all_pass);
    REQUIRE(zero.failures.size() == 1);
    CHECK(zero.failures[0] == "zero polynomial");

    auto skew = validate_hypotheses(X0 + X1 * X1);
    CHECK_FALSE(skew.all_pass);
    CHECK(skew.failures[0] == "not homogeneous");

    // Deterministic under the default seed.
    auto again = validate_hypotheses(square);
    CHECK(again.failures == repeated.failures);
}

TEST_CASE("hypothesis gate: coefficients in t") {
    MultiPoly g = X0 * X0 + (X1 * X1).scaled(rft()) + X2 * X2;
    auto rep = validate_hypotheses(g);
    CHECK(rep.all_pass);

    MultiPoly lin = X0 + X1.scaled(rft()) + X2;
    auto rep2 = validate_hypotheses(lin * lin);
    CHECK_FALSE(rep2.all_pass);
    CHECK_FALSE(rep2.squarefree_certified);
    CHECK(rep2.no_monomial_factor);
    CHECK(rep2.coordinate_nonvanishing);
}

TEST_CASE("abc report: frozen unit points on the line") {
    PlaceSet s({PT, PT1, PINF});
    Rat eps(1, 10);

    UnitTuple u({rft().pow(3), (rft() - rf(1)).pow(3)}, s);
    auto rep = abc_report(G_LINE, u, s, eps);
    CHECK(rep.h_u == 3);
    CHECK(rep.vh_g == 0);
    CHECK(rep.chi == 1);
    CHECK(rep.n_s == 2);
    CHECK(rep.n_s_1 == 2);
    CHECK(rep.n_s_gcd == 0);
    CHECK(rep.chain_holds);
    CHECK_FALSE(rep.on_divisor);
    CHECK_FALSE(rep.du_vanishes);
    CHECK(rep.margin_a == Rat(3, 10));
    CHECK(rep.margin_b == Rat(-7, 10));
    CHECK(rep.height_threshold == Rat(10));
    CHECK(rep.classification == Classification::kLowHeight);
    CHECK(rep.witness.empty());

    UnitTuple big({rft().pow(50), (rft() - rf(1)).pow(50)}, s);
    auto rep50 = abc_report(G_LINE, big, s, eps);
    CHECK(rep50.h_u == 50);
    CHECK(rep50.n_s == 50);
    CHECK(rep50.n_s_1 == 50);
    CHECK(rep50.chain_holds);
    CHECK(rep50.margin_a == Rat(5));
    CHECK(rep50.margin_b == Rat(5));
    CHECK(rep50.classification == Classification::kGeneric);
}

TEST_CASE("abc report: exceptional family keeps ratio one half") {
    PlaceSet s({PT, PINF});
    for (long n : {1L, 2L, 3L, 7L, 12L}) {
        RationalFunction tn = rft().pow(n);
        UnitTuple u({tn, field_inv(tn * rf(4))}, s);
        auto rep = abc_report(G_LINE, u, s, Rat(1, 10));
        CHECK(rep.h_u == 2 * n);
        CHECK(rep.n_s == 2 * n);
        CHECK(rep.n_s_1 == n);
        CHECK(rep.n_s_gcd == n);  // the chain is tight along the family
        CHECK(rep.chain_holds);
        CHECK(rep.classification == Classification::kExceptional);
        CHECK(rep.witness == "x1*x2 = (1/4)*x0^2");
    }
}

TEST_CASE("abc report: points on the divisor are flagged, not errored") {
    PlaceSet s({PT, PTP1, PINF});
    UnitTuple u({rft(), -rf(1) - rft()}, s);
    auto rep = abc_report(G_LINE, u, s, Rat(1, 10));
    CHECK(rep.on_divisor);
    CHECK(rep.n_s == 0);
    CHECK(rep.n_s_1 == 0);
    CHECK(rep.n_s_gcd == 0);
    CHECK(rep.chain_holds);
    CHECK(rep.classification == Classification::kExceptional);
    CHECK(rep.witness == "G(x) = 0");
}

TEST_CASE("abc report: hypothesis failure wins over every other label") {
    PlaceSet s({PT, PT1, PINF});
    UnitTuple u({rft(), rft() - rf(1)}, s);
    auto rep = abc_report(X0 * X1 + X2 * X2, u, s, Rat(1, 10));
    CHECK(rep.classification == Classification::kHypothesisFailure);
    CHECK(rep.witness.find("vanishes at") != std::string::npos);
}

TEST_CASE("abc report: three units and the 1-form witness") {
    PlaceSet s({PT, PT1, PINF});
    MultiPoly g4 = MultiPoly::variable(4, 0) + MultiPoly::variable(4, 1) +
                   MultiPoly::variable(4, 2) + MultiPoly::variable(4, 3);
    RationalFunction t1 = rft() - rf(1);
    UnitTuple u({rft(), t1, rft() * t1}, s);

    auto plain = abc_report(g4, u, s, Rat(1, 10));
    CHECK(plain.classification == Classification::kLowHeight);
    CHECK(plain.h_u == 2);
    CHECK(plain.chain_holds);

    LogOneForm vanishing{{1, 1, -1}, rf(1)};
    auto flagged = abc_report(g4, u, s, Rat(1, 10), 0, vanishing);
    CHECK(flagged.classification == Classification::kExceptional);
    CHECK(flagged.witness.find("logarithmic 1-form") != std::string::npos);

    LogOneForm alive{{1, 0, 0}, rf(1)};
    auto untouched = abc_report(g4, u, s, Rat(1, 10), 0, alive);
    CHECK(untouched.classification == Classification::kLowHeight);

    UnitTuple big({rft().pow(50), t1.pow(50), rft().pow(50) * t1.pow(50)}, s);
    auto generic = abc_report(g4, big, s, Rat(1, 10));
    CHECK(generic.h_u == 100);
    CHECK(generic.n_s == 100);
    CHECK(generic.n_s_1 == 100);
    CHECK(generic.chain_holds);
    CHECK(generic.classification == Classification::kGeneric);
}

TEST_CASE("abc report: chain and margins re-derivable on random points") {
    PlaceSet s({PT, PT1, PINF});
    std::mt19937_64 rng(20260822);
    const Rat pool[] = {Rat(1), Rat(-1), Rat(2), Rat(1, 2), Rat(-3)};
    std::vector<MultiPoly> gs = {G_LINE, X0 * X0 + X1 * X1 + X2 * X2,
                                 X0 * X0 + X0 * X1 + X1 * X1 + X2 * X2};
    Rat eps(1, 7);

    auto unit = [&]() {
        long a = static_cast<long>(rng() % 11) - 5;
        long b = static_cast<long>(rng() % 11) - 5;
        return RationalFunction(pool[rng() % 5]) * rft().pow(a) * (rft() - rf(1)).pow(b);
    };

    for (int trial = 0; trial < 30; ++trial) {
        UnitTuple u({unit(), unit()}, s);
        const MultiPoly& g = gs[trial % gs.size()];
        auto rep = abc_report(g, u, s, eps);
        CHECK(rep.chain_holds);
        CHECK(rep.n_s >= rep.n_s_1);
        CHECK(rep.n_s_1 >= 0);
        CHECK(rep.margin_a == eps * Rat(rep.h_u) - Rat(rep.n_s - rep.n_s_1));
        if (!rep.on_divisor) {
            std::vector<RationalFunction> coords = {rf(1), u.entries()[0], u.entries()[1]};
            RationalFunction val = g.eval(coords);
            CHECK(rep.n_s == count_zeros(val, s).total);
            CHECK(rep.n_s_1 == count_zeros(val, s, 1).total);
        }
    }
}

TEST_CASE("gcd conclusions: disjoint and shared evaluation") {
    MultiPoly f = mp(2, {{{1, 0}, rf(1)}, {{0, 0}, rf(-1)}});  // X - 1
    MultiPoly g = mp(2, {{{0, 1}, rf(1)}, {{0, 0}, rf(-1)}});  // Y - 1

    PlaceSet s3({PT, PT1, PINF});
    UnitTuple split({rft(), rft() - rf(1)}, s3);
    auto rep = gcd_conclusion_report(f, g, split, s3, Rat(1, 10));
    CHECK(rep.n_s_gcd == 0);
    CHECK(rep.h_gcd == 0);
    CHECK(rep.max_height == 1);
    CHECK(rep.coeff_height == 0);
    CHECK(rep.chi_plus == 1);
    CHECK(rep.height_floor == Rat(1));
    CHECK(rep.height_floor_met);
    CHECK(rep.conclusion_a);
    CHECK(rep.conclusion_b);
    CHECK(rep.margin_a == Rat(1, 10));
    CHECK(rep.origin_condition);
    REQUIRE(rep.best_relation.has_value());
    CHECK(rep.best_relation->exponents == std::vector<long>{1, 0});
    CHECK(rep.best_relation->height == 1);
    CHECK(rep.best_relation->box == 2);
    CHECK(rep.escape_bound == Rat(1));
    CHECK(rep.escape_holds);
    CHECK_FALSE(rep.degenerate);
    CHECK_FALSE(rep.f_vanishes);
    CHECK_FALSE(rep.g_vanishes);

    PlaceSet s2({PT, PINF});
    UnitTuple diag({rft(), rft()}, s2);
    auto shared = gcd_conclusion_report(f, g, diag, s2, Rat(1, 10));
    CHECK(shared.n_s_gcd == 1);  // both sides equal t - 1, counted off S
    CHECK(shared.h_gcd == 1);
    CHECK(shared.max_height == 1);
    CHECK_FALSE(shared.conclusion_a);
    CHECK(shared.margin_a == Rat(-9, 10));
    REQUIRE(shared.best_relation.has_value());
    CHECK(shared.best_relation->exponents == std::vector<long>{1, -1});
    CHECK(shared.best_relation->height == 0);
    CHECK(shared.escape_bound == Rat(0));
    CHECK(shared.escape_holds);  // the diagonal relation explains the failure
}

TEST_CASE("gcd conclusions: degenerate and vanishing inputs") {
    MultiPoly f = mp(2, {{{1, 0}, rf(1)}, {{0, 0}, rf(-1)}});
    MultiPoly g = mp(2, {{{0, 1}, rf(1)}, {{0, 0}, rf(-1)}});
    PlaceSet s({PT, PINF});

    UnitTuple consts({rf(2), rf(3)}, s);
    auto flat = gcd_conclusion_report(f, g, consts, s, Rat(1, 10));
    CHECK(flat.degenerate);
    CHECK(flat.max_height == 0);
    CHECK(flat.n_s_gcd == 0);
    CHECK(flat.h_gcd == 0);
    REQUIRE(flat.best_relation.has_value());
    CHECK(flat.best_relation->height == 0);
    CHECK(flat.best_relation->exponents == std::vector<long>{2, 0});

    UnitTuple hit({rf(1), rft()}, s);
    auto vanish = gcd_conclusion_report(f, g, hit, s, Rat(1, 10));
    CHECK(vanish.f_vanishes);
    CHECK_FALSE(vanish.g_vanishes);
    CHECK(vanish.n_s_gcd == 1);  // gcd(0, t - 1) collapses to t - 1
    CHECK(vanish.h_gcd == 1);

    CHECK_THROWS_AS(gcd_conclusion_report(f, g, hit, s, Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(
        gcd_conclusion_report(MultiPoly::constant(2, rf(5)), g, hit, s, Rat(1, 2)),
        std::invalid_argument);
    CHECK_THROWS_AS(gcd_conclusion_report(G_LINE, G_LINE, hit, s, Rat(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("ramified cover: tangent plane system") {
    FormSystem sys = make_form_system({X0, X1, X2 * X2 + X0 * X1});
    PlaceSet s({PT, PTP1, PINF});
    auto spec = make_ramified_cover_spec(sys, s, PT1);
    ProjectivePoint x({rf(1), rft(), rft()});
    auto rep = ramified_cover_report(spec, x, Rat(1, 10));

    CHECK(rep.b == std::vector<long>{2, 2, 1});
    CHECK(rep.b_total == 2);
    RationalFunction f3 = rft() * rft() + rft();
    REQUIRE(rep.u.size() == 2);
    CHECK(rep.u[0] == field_inv(f3));
    CHECK(rep.u[1] == rft() * rft() / f3);
    CHECK(rep.u_is_s_unit == std::vector<bool>{true, true});
    CHECK(rep.added_places.empty());
    CHECK(rep.u_is_enlarged_unit == std::vector<bool>{true, true});
    CHECK(rep.divisor_counts == std::vector<long>{0, 0, 0});

    CHECK(rep.jacobian == X2.scaled(rf(2)));
    CHECK(rep.jacobian_degree == 1);
    CHECK(rep.jacobian_at_p == X2.scaled(rf(2)));
    CHECK_FALSE(rep.transversal_at_p);  // the conic is tangent to x0 = 0
    CHECK(rep.position_certificate.certified);
    CHECK(rep.position_certificate.in_general_position);
    REQUIRE(rep.ramification_certificate.has_value());
    CHECK_FALSE(rep.ramification_certificate->in_general_position);
    CHECK_FALSE(rep.ramification_certificate->certified);

    CHECK(rep.h_x == 1);
    CHECK(rep.h_one_u == 2);
    CHECK(rep.deviation == 0);
    CHECK(rep.coeff_height == 0);
    CHECK(rep.c_prime == 6);
    CHECK(rep.within_c_prime);
    CHECK(rep.log_derivative_identity);
    CHECK(rep.epsilon == Rat(1, 10));
}

TEST_CASE("ramified cover: transversal conic certifies end to end") {
    FormSystem sys = make_form_system({X0, X1, X0 * X0 + X1 * X1 - (X2 * X2).scaled(rf(2))});
    PlaceSet s({PT, PT1, PTP1, PINF});
    auto spec = make_ramified_cover_spec(sys, s, PT);
    ProjectivePoint x({rf(1), rft(), rft()});
    auto rep = ramified_cover_report(spec, x, Rat(1, 5));

    RationalFunction f3 = rf(1) - rft() * rft();
    CHECK(rep.u[0] == field_inv(f3));
    CHECK(rep.u[1] == rft() * rft() / f3);
    CHECK(rep.u_is_s_unit == std::vector<bool>{true, true});
    CHECK(rep.jacobian == X2.scaled(rf(-4)));
    CHECK(rep.transversal_at_p);
    CHECK(rep.position_certificate.certified);
    REQUIRE(rep.ramification_certificate.has_value());
    CHECK(rep.ramification_certificate->in_general_position);
    CHECK(rep.ramification_certificate->certified);
    CHECK(rep.deviation == 0);
    CHECK(rep.within_c_prime);
    CHECK(rep.log_derivative_identity);
}

TEST_CASE("ramified cover: coefficient support enlarges S explicitly") {
    RationalFunction shift = rft() - rf(2);
    FormSystem sys = make_form_system(
        {X0, X1, (X0 * X0 + X1 * X1 - (X2 * X2).scaled(rf(2))).scaled(shift)});
    PlaceSet s({PT, PT1, PTP1, PINF});
    auto spec = make_ramified_cover_spec(sys, s, PT);
    ProjectivePoint x({rf(1), rft(), rft()});
    auto rep = ramified_cover_report(spec, x, Rat(1, 5));

    CHECK(rep.divisor_counts == std::vector<long>{0, 0, 0});
    CHECK(rep.u_is_s_unit == std::vector<bool>{false, false});
    REQUIRE(rep.added_places.size() == 1);
    CHECK(rep.added_places[0] == Place::finite(T - UniPoly(Rat(2))));
    CHECK(rep.u_is_enlarged_unit == std::vector<bool>{true, true});
    CHECK(rep.s_enlarged.contains(Place::finite(T - UniPoly(Rat(2)))));
    CHECK(rep.s_enlarged.card() == 5);

    CHECK(rep.jacobian == X2.scaled(rf(-4) * shift));
    CHECK(rep.jacobian_at_p == X2.scaled(rf(8)));
    CHECK(rep.transversal_at_p);
    CHECK(rep.h_one_u == 3);
    CHECK(rep.deviation == 1);
    CHECK(rep.coeff_height == 1);
    CHECK(rep.c_prime == 7);
    CHECK(rep.within_c_prime);
    CHECK(rep.log_derivative_identity);
}

TEST_CASE("ramified cover: squared coordinate system over unit points") {
    FormSystem sys = make_form_system({X0, X1, X2 * X2});
    PlaceSet s({PT, PT1, PINF});
    auto spec = make_ramified_cover_spec(sys, s, PTP1);
    auto units = enumerate_s_units(s, 3);
    REQUIRE(units.size() >= 12);

    for (size_t i = 0; i < 12; ++i) {
        RationalFunction s1 = units[i];
        RationalFunction s2 = units[(3 * i + 5) % units.size()];
        ProjectivePoint x({rf(1), s1, s2});
        auto rep = ramified_cover_report(spec, x, Rat(1, 3));
        CHECK(rep.divisor_counts == std::vector<long>{0, 0, 0});
        CHECK(rep.u[0] == field_inv(s2 * s2));
        CHECK(rep.u[1] == s1 * s1 / (s2 * s2));
        CHECK(rep.u_is_s_unit == std::vector<bool>{true, true});
        CHECK(rep.deviation == 0);  // min over squared coordinates is twice the min
        CHECK(rep.within_c_prime);
        CHECK(rep.log_derivative_identity);
        CHECK_FALSE(rep.transversal_at_p);
        CHECK(rep.position_certificate.certified);
        REQUIRE(rep.ramification_certificate.has_value());
        CHECK_FALSE(rep.ramification_certificate->in_general_position);
    }
}

TEST_CASE("ramified cover: rejected inputs") {
    PlaceSet s({PT, PINF});
    CHECK_THROWS_WITH_AS(make_ramified_cover_spec(make_form_system({X0, X1, X2}), s, PT1),
                         "degenerate system: total degree must be at least n + 2",
                         std::invalid_argument);
    UniPoly quad = T * T + UniPoly(Rat(1));
    CHECK_THROWS_WITH_AS(
        make_ramified_cover_spec(make_form_system({X0, X1, X2 * X2}), s, Place::finite(quad)),
        "specialization place must have degree 1", std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_ramified_cover_spec(make_form_system({X0, X1, X0 * X1}), s, PT1),
                         "degenerate system: the ramification form vanishes",
                         std::invalid_argument);

    auto spec =
        make_ramified_cover_spec(make_form_system({X0, X1, X2 * X2 + X0 * X1}),
                                 PlaceSet({PT, PTP1, PINF}), PT1);
    CHECK_THROWS_AS(ramified_cover_report(spec, ProjectivePoint({rf(1), rft()}), Rat(1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        ramified_cover_report(spec, ProjectivePoint({rf(1), rft(), rft() * rft()}), Rat(1, 2)),
        "point is not S-integral: N_{D3,S} = 2", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        ramified_cover_report(spec, ProjectivePoint({rf(0), rft(), rf(1)}), Rat(1, 2)),
        "point lies on the divisor", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        ramified_cover_report(spec, ProjectivePoint({rf(1), rft(), rft()}), Rat(0)),
        "epsilon must be positive", std::invalid_argument);
}

TEST_CASE("classification labels render stably") {
    CHECK(classification_str(Classification::kGeneric) == "generic");
    CHECK(classification_str(Classification::kExceptional) == "exceptional");
    CHECK(classification_str(Classification::kLowHeight) == "low_height");
    CHECK(classification_str(Classification::kHypothesisFailure) == "hypothesis_failure");
}
