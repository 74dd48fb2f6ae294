#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twistor/family.hpp"
#include "twistor/suites.hpp"

#include <random>

using namespace twistor;
using namespace twistor::family;

namespace {

const ConformalInvariant& canonical() {
    static ConformalInvariant ci({1, 2, 3, 4, 5, 6});
    return ci;
}

const FamilyModel& model() {
    static FamilyModel fm(canonical());
    return fm;
}

Polynomial fam(const std::string& text) { return Polynomial::parse(family_universe(), text); }

}  // namespace

TEST_CASE("conformal invariants must increase strictly") {
    CHECK_THROWS_AS(ConformalInvariant({1, 2, 3, 3, 5, 6}), std::invalid_argument);
    CHECK_THROWS_AS(ConformalInvariant({6, 5, 4, 3, 2, 1}), std::invalid_argument);
    CHECK_NOTHROW(ConformalInvariant({Rational(-1, 2), 0, 1, Rational(3, 2), 2, 7}));
}

TEST_CASE("the nine generators match their independently expanded forms") {
    // hand-expanded products of the linear factors for l_i = i
    Polynomial f14 = fam("1/1 * l^2 + -5/1 * l^1 + 4/1");    // (l-1)(l-4)
    Polynomial f25 = fam("1/1 * l^2 + -7/1 * l^1 + 10/1");   // (l-2)(l-5)
    Polynomial f36 = fam("1/1 * l^2 + -9/1 * l^1 + 18/1");   // (l-3)(l-6)
    Polynomial q_a = fam("1/1 * l^4 + -16/1 * l^3 + 91/1 * l^2 + -216/1 * l^1 + 180/1");
    Polynomial q_b = fam("1/1 * l^4 + -12/1 * l^3 + 49/1 * l^2 + -78/1 * l^1 + 40/1");
    Polynomial q_c = fam("1/1 * l^4 + -14/1 * l^3 + 67/1 * l^2 + -126/1 * l^1 + 72/1");
    CHECK(q_a == f25 * f36);
    CHECK(q_b == f14 * f25);
    CHECK(q_c == f14 * f36);

    auto x = [&](int i) { return Polynomial::variable(family_universe(), "x" + std::to_string(i)); };
    std::array<Polynomial, 9> expected = {
        x(1) * x(2) + q_a * x(0) * x(0),
        x(3) * x(4) + q_b * x(0) * x(0),
        x(5) * x(6) - q_c * x(0) * x(0),
        x(3) * x(5) + f14 * x(0) * x(2),
        x(5) * x(1) + f36 * x(0) * x(4),
        x(1) * x(3) - f25 * x(0) * x(6),
        x(4) * x(6) + f14 * x(0) * x(1),
        x(2) * x(6) + f36 * x(0) * x(3),
        x(2) * x(4) - f25 * x(0) * x(5),
    };
    for (int k = 0; k < 9; ++k) CHECK(model().generators()[k] == expected[k]);

    // g1 specialized at l = 0 reads x1 x2 + 180 x0^2
    Polynomial g1_at_0 = model().generators()[0].bind("l", GaussianRational(0));
    CHECK(g1_at_0 == fam("1/1 * x1^1 x2^1 + 180/1 * x0^2"));

    Polynomial d6 =
        fam("1/1 * l^6 + -21/1 * l^5 + 175/1 * l^4 + -735/1 * l^3 + 1624/1 * l^2 + -1764/1 * l^1 "
            "+ 720/1");
    CHECK(model().coefficients().d.project(family_universe()) == d6);
}

TEST_CASE("torus weights") {
    auto u = family_universe();
    CHECK(generator_weight(Polynomial::parse(u, "1/1 * x1^1 x2^1")) == std::array<int, 2>{0, 0});
    CHECK(generator_weight(Polynomial::parse(u, "1/1 * x3^1 x5^1")) == std::array<int, 2>{-1, 0});
    CHECK(generator_weight(Polynomial::parse(u, "1/1 * x1^1 x3^1 x5^1")) ==
          std::array<int, 2>{0, 0});
    CHECK_THROWS_AS(generator_weight(Polynomial::parse(u, "1/1 * x1^1 + 1/1 * x3^1")),
                    std::invalid_argument);

    const std::array<std::array<int, 2>, 9> expected{
        {{0, 0}, {0, 0}, {0, 0}, {-1, 0}, {0, -1}, {1, 1}, {1, 0}, {0, 1}, {-1, -1}}};
    CHECK(model().weights() == expected);
}

TEST_CASE("real structure on polynomials and generators") {
    auto u = family_universe();
    CHECK(model().real_structure(Polynomial::variable(u, "x1")) == Polynomial::variable(u, "x2"));

    Polynomial ix0sq = Polynomial::parse(u, "0/1+1/1*i * x0^2");
    CHECK(model().real_structure(ix0sq) == Polynomial::parse(u, "0/1-1/1*i * x0^2"));

    CHECK(model().real_structure(model().generators()[3]) == model().generators()[6]);
    CHECK(model().real_structure(model().generators()[6]) == model().generators()[3]);

    const std::array<int, 9> expected{0, 1, 2, 6, 7, 8, 3, 4, 5};
    CHECK(model().involution_permutation() == expected);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> coef(-4, 4);
        Polynomial p(u);
        Exponents e(u->size());
        for (size_t v = 0; v < u->size(); ++v) e[v] = static_cast<unsigned>(coef(rng) & 1);
        p.add_term(e, GaussianRational(Rational(coef(rng)), Rational(coef(rng))));
        CHECK(model().real_structure(model().real_structure(p)) == p);
    }
}

TEST_CASE("fiber classification") {
    CHECK(model().classify_fiber(GaussianRational(0)).kind == FiberKind::Smooth);
    auto at3 = model().classify_fiber(GaussianRational(3));
    CHECK(at3.kind == FiberKind::Reducible);
    CHECK(at3.index == 3);
    CHECK(model().classify_fiber(GaussianRational(Rational(7, 2))).kind == FiberKind::Smooth);
    CHECK_THROWS_AS(model().classify_fiber(GaussianRational::i()), std::invalid_argument);
}

TEST_CASE("generic fiber parametrization at l = 0") {
    FiberComponentParam param = model().generic_fiber_parametrization(0);
    CHECK(annihilates(model().specialized_generators(GaussianRational(0)), param));
    CHECK(param.coords[2]->coeff == GaussianRational(-180));
    CHECK(param.coords[4]->coeff == GaussianRational(-40));
    CHECK(param.coords[5]->coeff == GaussianRational(720));
    CHECK(param.coords[6]->coeff == GaussianRational(Rational(72, 720)));
    CHECK(param.polygon.degree() == 6);
    Fan2D fan = param.polygon.normal_fan();
    CHECK(k_squared(fan) == 6);
    CHECK(cycles_equal_up_to_symmetry(selfint_from_fan(fan),
                                      SelfIntCycle({-1, -1, -1, -1, -1, -1})));
    CHECK(param.polygon.hull().size() == 6);  // six fixed points

    CHECK_THROWS_AS(model().generic_fiber_parametrization(3), std::invalid_argument);
}

TEST_CASE("reducible fiber components") {
    auto [plus, minus] = model().fiber_components(1);
    CHECK(plus.zero_coords == std::vector<int>({4, 5}));
    CHECK(minus.zero_coords == std::vector<int>({3, 6}));
    CHECK(plus.polygon.degree() == 3);
    CHECK(minus.polygon.degree() == 3);
    CHECK(plus.polygon.points().size() == 5);
    CHECK(annihilates(model().specialized_generators(GaussianRational(1)), plus));
    CHECK(annihilates(model().specialized_generators(GaussianRational(1)), minus));
    CHECK(cycles_equal_up_to_symmetry(selfint_from_fan(plus.polygon.normal_fan()),
                                      SelfIntCycle({0, -1, 0, 1})));

    CHECK(model().fiber_components(2).first.zero_coords == std::vector<int>({1, 4}));
    CHECK(model().fiber_components(3).first.zero_coords == std::vector<int>({2, 5}));
    CHECK_THROWS_AS(model().fiber_components(0), std::invalid_argument);
    CHECK_THROWS_AS(model().fiber_components(7), std::invalid_argument);

    // the relations cutting the components over l = 1: x1 x2 = -40 x0^2,
    // x5 x1 = -10 x0 x4, x2 x4 = 4 x0 x5
    auto at1 = model().specialized_generators(GaussianRational(1));
    CHECK(at1[0] == fam("1/1 * x1^1 x2^1 + 40/1 * x0^2"));
    CHECK(at1[4] == fam("1/1 * x1^1 x5^1 + 10/1 * x0^1 x4^1"));
    CHECK(at1[8] == fam("1/1 * x2^1 x4^1 + -4/1 * x0^1 x5^1"));
    CHECK(at1[1] == fam("1/1 * x3^1 x4^1"));  // b(1) = 0
}

TEST_CASE("intersection conics") {
    CHECK(model().conic_plane(1) == std::array<int, 2>{1, 2});
    CHECK(model().conic_plane(2) == std::array<int, 2>{5, 6});
    CHECK(model().conic_plane(3) == std::array<int, 2>{3, 4});
    CHECK(model().conic_plane(4) == std::array<int, 2>{1, 2});

    CHECK(model().conic_coefficient(1) == GaussianRational(-40));
    CHECK(model().conic_coefficient(2) == GaussianRational(-8));
    CHECK(model().conic_coefficient(3) == GaussianRational(-4));

    FiberComponentParam conic = model().intersection_conic(1);
    CHECK(conic.zero_coords.size() == 4);
    // the conic lies on both components: its nonzero coordinates avoid both
    // vanishing patterns
    auto [plus, minus] = model().fiber_components(1);
    for (int coord : plus.zero_coords) CHECK_FALSE(conic.coords[coord].has_value());
    for (int coord : minus.zero_coords) CHECK_FALSE(conic.coords[coord].has_value());

    for (int i = 1; i <= 6; ++i) CHECK_FALSE(model().conic_has_real_points(i));
}

TEST_CASE("conic isotropy pairing") {
    CHECK(model().conic_isotropy(1) == TorusSubgroup{0, 1});
    CHECK(model().conic_isotropy(2) == TorusSubgroup{1, -1});
    CHECK(model().conic_isotropy(3) == TorusSubgroup{1, 0});
    for (int i = 1; i <= 3; ++i) CHECK(model().conic_isotropy(i) == model().conic_isotropy(i + 3));
    CHECK(model().conic_isotropy(1) != model().conic_isotropy(2));
    CHECK(model().conic_isotropy(2) != model().conic_isotropy(3));
}

TEST_CASE("node candidates and the node test") {
    auto candidates = model().singular_candidates();
    REQUIRE(candidates.size() == 12);
    CHECK(candidates[0].lambda == GaussianRational(1));
    CHECK(candidates[0].x[1] == GaussianRational(1));
    CHECK(candidates[1].x[2] == GaussianRational(1));

    for (const auto& p : candidates) CHECK(model().verify_odp(p));

    // generic smooth point: rank 4, not a node
    FiberComponentParam param = model().generic_fiber_parametrization(0);
    auto smooth = param_point(param, GaussianRational(2), GaussianRational(3), GaussianRational(0));
    CHECK_FALSE(model().verify_odp(smooth));

    // generic point of the first conic
    ProjectivePoint conic_point;
    conic_point.lambda = GaussianRational(1);
    conic_point.x[0] = GaussianRational(1);
    conic_point.x[1] = GaussianRational(2);
    conic_point.x[2] = GaussianRational(-20);
    CHECK_FALSE(model().verify_odp(conic_point));

    ProjectivePoint off;
    off.lambda = GaussianRational(0);
    off.x[0] = GaussianRational(1);
    off.x[1] = GaussianRational(1);
    CHECK_THROWS_AS(model().verify_odp(off), std::invalid_argument);

    ProjectivePoint nowhere;
    nowhere.lambda = GaussianRational(1);
    CHECK_THROWS_AS(model().verify_odp(nowhere), std::invalid_argument);
}

TEST_CASE("the node test is invariant under projective rescaling") {
    auto candidates = model().singular_candidates();
    for (const GaussianRational& scale :
         {GaussianRational(Rational(-7, 3)), GaussianRational(Rational(1, 2), Rational(5, 2))}) {
        ProjectivePoint p = candidates[4];
        for (int coord = 0; coord < 7; ++coord) p.x[coord] = p.x[coord] * scale;
        CHECK(model().verify_odp(p));
    }
}

TEST_CASE("invariant files") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(TWISTOR_TEST_DATA) / "fixtures";
    ConformalInvariant ci = ConformalInvariant::from_file(dir / "canonical.txt");
    CHECK(ci.lambda(6) == Rational(6));
    CHECK_THROWS_AS(ConformalInvariant::from_file(dir / "non_monotone.txt"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConformalInvariant::from_file(dir / "malformed.txt"), std::invalid_argument);
    CHECK_THROWS_AS(ConformalInvariant::from_file(dir / "does_not_exist.txt"),
                    std::invalid_argument);
}

TEST_CASE("real point criterion") {
    auto good = real_point_exists(GaussianRational(4), GaussianRational(9), GaussianRational(1),
                                  GaussianRational(6));
    CHECK(good.exists);
    REQUIRE(good.witness.has_value());
    std::array<GaussianRational, 7> expected{
        GaussianRational(1), GaussianRational(2), GaussianRational(2), GaussianRational(3),
        GaussianRational(3), GaussianRational(1), GaussianRational(1)};
    CHECK(*good.witness == expected);

    auto fiber0 = real_point_exists(GaussianRational(-180), GaussianRational(-40),
                                    GaussianRational(72), GaussianRational(720));
    CHECK_FALSE(fiber0.exists);

    auto boundary = real_point_exists(GaussianRational(0), GaussianRational(1), GaussianRational(1),
                                      GaussianRational(0));
    CHECK(boundary.exists);
    REQUIRE(boundary.witness.has_value());
    CHECK((*boundary.witness)[1].is_zero());
    CHECK((*boundary.witness)[2].is_zero());

    // moduli that are Gaussian norms but not rational squares
    auto gauss = real_point_exists(GaussianRational(2), GaussianRational(2), GaussianRational(1),
                                   GaussianRational(2));
    CHECK(gauss.exists);
    CHECK(gauss.witness.has_value());

    CHECK_THROWS_AS(real_point_exists(GaussianRational(1), GaussianRational(1), GaussianRational(1),
                                      GaussianRational(7)),
                    std::invalid_argument);
    CHECK_THROWS_AS(real_point_exists(GaussianRational::i(), GaussianRational(1),
                                      GaussianRational(1), GaussianRational(1)),
                    std::invalid_argument);
}

TEST_CASE("halves of the boundary cycle") {
    auto check_plus = [&](int fiber, std::vector<std::string> plus_labels,
                          std::vector<std::string> shared, std::array<int, 2> plus_zero) {
        HalvesAssignment halves = model().halves_assignment(fiber);
        for (const auto& [label, side] : halves.sides) {
            bool expected_plus = std::find(plus_labels.begin(), plus_labels.end(), label.str()) !=
                                 plus_labels.end();
            CHECK(side == (expected_plus ? HalfSide::Plus : HalfSide::Minus));
        }
        CHECK(halves.odp_labels[0].str() == shared[0]);
        CHECK(halves.odp_labels[1].str() == shared[1]);
        CHECK(halves.incidence.at(CurveLabel::parse(shared[0])) == HalfSide::Shared);
        CHECK(halves.plus_zero_coords == plus_zero);
    };
    check_plus(1, {"C3", "C4", "C5", "C6", "C1*", "C2*"}, {"C2", "C2*"}, {4, 5});
    check_plus(2, {"C5", "C6", "C1*", "C2*", "C3*", "C4*"}, {"C4", "C4*"}, {1, 4});
    check_plus(3, {"C1", "C2", "C3", "C4", "C5", "C6"}, {"C6", "C6*"}, {2, 5});
    check_plus(4, {"C3", "C4", "C5", "C6", "C1*", "C2*"}, {"C2", "C2*"}, {4, 5});
    check_plus(5, {"C5", "C6", "C1*", "C2*", "C3*", "C4*"}, {"C4", "C4*"}, {1, 4});
    check_plus(6, {"C1", "C2", "C3", "C4", "C5", "C6"}, {"C6", "C6*"}, {2, 5});
}

TEST_CASE("chart at l = infinity") {
    auto mu = model().mu_chart_generators();
    std::vector<Polynomial> at_zero;
    for (const Polynomial& g : mu)
        at_zero.push_back(g.bind("m", GaussianRational(0)).project(chart_universe()));
    auto expected = normal_quadric_system_from_values(
        GaussianRational(-1), GaussianRational(-1), GaussianRational(1), GaussianRational(1));
    for (int k = 0; k < 9; ++k) CHECK(at_zero[k] == expected[k]);
}

TEST_CASE("verification suites pass on the canonical invariants") {
    auto family_suite = suites::run_family_suite(model());
    for (const auto& claim : family_suite.claims) {
        INFO(claim.id, ": ", claim.witness);
        CHECK(claim.pass);
    }
    auto fiber_suite = suites::run_fiber_suite(model());
    for (const auto& claim : fiber_suite.claims) {
        INFO(claim.id, ": ", claim.witness);
        CHECK(claim.pass);
    }
    auto odp_suite = suites::run_odp_suite(model());
    for (const auto& claim : odp_suite.claims) {
        INFO(claim.id, ": ", claim.witness);
        CHECK(claim.pass);
    }
}

TEST_CASE("suites hold for non-canonical invariants") {
    FamilyModel fm(ConformalInvariant(
        {Rational(-3, 2), Rational(-1, 3), 0, Rational(1, 2), 2, Rational(22, 7)}));
    CHECK(suites::run_family_suite(fm).all_pass());
    CHECK(suites::run_odp_suite(fm).all_pass());
}
