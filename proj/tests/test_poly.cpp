#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twistor/exact_matrix.hpp"
#include "twistor/family.hpp"
#include "twistor/polynomial.hpp"

#include <random>

using namespace twistor;

namespace {

VarSetPtr xy() {
    static VarSetPtr u = make_vars({"x", "y"});
    return u;
}

Polynomial random_poly(VarSetPtr vars, std::mt19937_64& rng, int max_terms = 4, int max_deg = 3,
                       bool gaussian = true) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coef(-6, 6);
    Polynomial p(vars);
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        Exponents e(vars->size());
        for (size_t v = 0; v < vars->size(); ++v) e[v] = static_cast<unsigned>(deg(rng));
        Rational re(coef(rng)), im(gaussian ? coef(rng) : 0);
        p.add_term(e, GaussianRational(re, im));
    }
    return p;
}

GaussianRational random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    return {Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))};
}

}  // namespace

TEST_CASE("gaussian rational arithmetic and conjugation") {
    GaussianRational q{Rational(2, 3)};
    CHECK(q.conj() == q);

    GaussianRational i1{Rational(1), Rational(1)};
    CHECK(i1.conj() == GaussianRational(Rational(1), Rational(-1)));

    GaussianRational a{Rational(1), Rational(2)}, b{Rational(3), Rational(4)};
    CHECK((a * b) == GaussianRational(Rational(-5), Rational(10)));
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a * b).conj() == GaussianRational(Rational(-5), Rational(-10)));

    CHECK(a / a == GaussianRational(1));
    CHECK(a.norm() == Rational(5));
    CHECK_THROWS(a / GaussianRational(0));
}

TEST_CASE("polynomial product basics") {
    auto u = xy();
    Polynomial x = Polynomial::variable(u, "x");
    Polynomial y = Polynomial::variable(u, "y");
    Polynomial xy_prod = x * y;
    CHECK(xy_prod.term_count() == 1);
    CHECK(xy_prod.total_degree() == 2);

    auto l = make_vars({"l"});
    Polynomial f1 = Polynomial::variable(l, "l") - Polynomial::constant(l, GaussianRational(1));
    Polynomial f4 = Polynomial::variable(l, "l") - Polynomial::constant(l, GaussianRational(4));
    Polynomial expected = Polynomial::parse(l, "1/1 * l^2 + -5/1 * l^1 + 4/1");
    CHECK(f1 * f4 == expected);
}

TEST_CASE("coefficient functions: degree-12 identity abc = d^2") {
    family::ConformalInvariant ci({1, 2, 3, 4, 5, 6});
    auto c = family::coefficient_functions(ci);
    Polynomial abc = c.a * c.b * c.c;
    CHECK(abc.total_degree() == 12);
    CHECK((abc - c.d * c.d).is_zero());

    std::map<std::string, GaussianRational> zero{{"l", GaussianRational(0)}};
    CHECK(c.a.eval(zero) == GaussianRational(-180));
    CHECK(c.b.eval(zero) == GaussianRational(-40));
    CHECK(c.c.eval(zero) == GaussianRational(72));
    CHECK(c.d.eval(zero) == GaussianRational(720));
    CHECK((c.a.eval(zero) * c.b.eval(zero) * c.c.eval(zero)) == GaussianRational(518400));
    CHECK(abc.eval(zero) - (c.d * c.d).eval(zero) == GaussianRational(0));
}

TEST_CASE("mixing variable universes is rejected") {
    Polynomial p = Polynomial::variable(xy(), "x");
    Polynomial q = Polynomial::variable(make_vars({"a", "b"}), "a");
    CHECK_THROWS_AS(p * q, std::invalid_argument);
    CHECK_THROWS_AS(p + q, std::invalid_argument);
    // equal universes behind distinct pointers are fine
    Polynomial r = Polynomial::variable(make_vars({"x", "y"}), "y");
    CHECK((p * r).term_count() == 1);
}

TEST_CASE("exact evaluation") {
    auto u = family::family_universe();
    Polynomial g = Polynomial::parse(u, "1/1 * x1^1 x2^1 + -3/1 * x0^2");
    std::map<std::string, GaussianRational> at;
    for (size_t i = 0; i < u->size(); ++i) at[u->name(i)] = GaussianRational(0);
    at["x0"] = GaussianRational(1);
    at["x1"] = GaussianRational(2);
    at["x2"] = GaussianRational(Rational(3, 2));
    CHECK(g.eval(at) == GaussianRational(0));

    std::map<std::string, GaussianRational> partial{{"x0", GaussianRational(1)}};
    CHECK_THROWS_AS(g.eval(partial), std::invalid_argument);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(7);
    auto u = xy();
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial p = random_poly(u, rng), q = random_poly(u, rng), r = random_poly(u, rng);
        CHECK((p + q) * r == p * r + q * r);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * q == q * p);
    }
}

TEST_CASE("conjugation commutes with multiplication") {
    std::mt19937_64 rng(11);
    auto u = xy();
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = random_poly(u, rng), q = random_poly(u, rng);
        CHECK((p * q).conj_coefficients() == p.conj_coefficients() * q.conj_coefficients());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(13);
    auto u = xy();
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = random_poly(u, rng), q = random_poly(u, rng);
        std::map<std::string, GaussianRational> at{{"x", random_scalar(rng)},
                                                   {"y", random_scalar(rng)}};
        CHECK(p.eval(at) * q.eval(at) == (p * q).eval(at));
        CHECK(p.eval(at) + q.eval(at) == (p + q).eval(at));
    }
}

TEST_CASE("text format round-trips") {
    std::mt19937_64 rng(17);
    auto u = make_vars({"l", "x0", "x1"});
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial p = random_poly(u, rng);
        CHECK(Polynomial::parse(u, p.str()) == p);
    }
    Polynomial zero(u);
    CHECK(zero.str() == "0");
    CHECK(Polynomial::parse(u, "0") == zero);

    Polynomial with_i = Polynomial::parse(u, "1/2-3/4*i * x0^1 x1^2 + -5/1 * l^3");
    CHECK(Polynomial::parse(u, with_i.str()) == with_i);
}

TEST_CASE("taylor shift recenters exactly") {
    std::mt19937_64 rng(19);
    auto u = xy();
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p = random_poly(u, rng);
        GaussianRational ox = random_scalar(rng), oy = random_scalar(rng);
        Polynomial shifted = p.shift({ox, oy});
        // shifted(y) = p(y + offset), so shifted(0) = p(offset)
        CHECK(shifted.eval({{"x", GaussianRational(0)}, {"y", GaussianRational(0)}}) ==
              p.eval({{"x", ox}, {"y", oy}}));
        GaussianRational tx = random_scalar(rng), ty = random_scalar(rng);
        CHECK(shifted.eval({{"x", tx}, {"y", ty}}) == p.eval({{"x", tx + ox}, {"y", ty + oy}}));
    }
}

TEST_CASE("jacobian at a point") {
    auto u = xy();
    Polynomial circle = Polynomial::parse(u, "1/1 * x^2 + 1/1 * y^2 + -1/1");
    ExactMatrix j = jacobian_at({circle}, {{"x", GaussianRational(1)}, {"y", GaussianRational(0)}});
    CHECK(j.at(0, 0) == GaussianRational(2));
    CHECK(j.at(0, 1) == GaussianRational(0));

    Polynomial prod = Polynomial::parse(u, "1/1 * x^1 y^1");
    ExactMatrix j2 = jacobian_at({prod}, {{"x", GaussianRational(0)}, {"y", GaussianRational(0)}});
    CHECK(j2.at(0, 0) == GaussianRational(0));
    CHECK(j2.at(0, 1) == GaussianRational(0));
}

TEST_CASE("exact rank") {
    CHECK(rank(ExactMatrix::identity(3)) == 3);
    CHECK(rank(ExactMatrix(2, 5)) == 0);

    ExactMatrix proportional(2, 2);
    proportional.at(0, 0) = GaussianRational(1);
    proportional.at(0, 1) = GaussianRational(2);
    proportional.at(1, 0) = GaussianRational(2);
    proportional.at(1, 1) = GaussianRational(4);
    CHECK(rank(proportional) == 1);
}

TEST_CASE("rank equals rank of the transpose, and matches the nullity") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        ExactMatrix m(5, 7);
        for (size_t r = 0; r < 5; ++r)
            for (size_t c = 0; c < 7; ++c) m.at(r, c) = random_scalar(rng);
        int rk = rank(m);
        CHECK(rk == rank(m.transpose()));
        CHECK(static_cast<size_t>(rk) + nullspace(m).size() == 7);
    }
}

TEST_CASE("rank of products and matrices with zero columns") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        // a 5x7 product through rank <= 2 factors, with a zeroed column to
        // force pivot skipping
        ExactMatrix a(5, 2), b(2, 7);
        for (size_t r = 0; r < 5; ++r)
            for (size_t c = 0; c < 2; ++c) a.at(r, c) = random_scalar(rng);
        for (size_t r = 0; r < 2; ++r)
            for (size_t c = 0; c < 7; ++c) b.at(r, c) = random_scalar(rng);
        ExactMatrix m(5, 7);
        for (size_t r = 0; r < 5; ++r)
            for (size_t c = 0; c < 7; ++c) {
                GaussianRational acc(0);
                for (size_t k = 0; k < 2; ++k) acc += a.at(r, k) * b.at(k, c);
                m.at(r, c) = acc;
            }
        for (size_t r = 0; r < 5; ++r) m.at(r, 3) = GaussianRational(0);
        int rk = rank(m);
        CHECK(rk <= 2);
        CHECK(rk == rank(m.transpose()));
        CHECK(static_cast<size_t>(rk) + nullspace(m).size() == 7);
    }
}

TEST_CASE("nullspace vectors annihilate the matrix") {
    std::mt19937_64 rng(29);
    ExactMatrix m(3, 5);
    for (size_t r = 0; r < 3; ++r)
        for (size_t c = 0; c < 5; ++c) m.at(r, c) = random_scalar(rng);
    for (const auto& v : nullspace(m)) {
        for (size_t r = 0; r < 3; ++r) {
            GaussianRational acc(0);
            for (size_t c = 0; c < 5; ++c) acc += m.at(r, c) * v[c];
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("quadratic form rank") {
    auto u = make_vars({"x", "y", "z", "w"});
    CHECK(quad_form_rank(Polynomial::parse(u, "1/1 * x^2 + 1/1 * y^2 + 1/1 * z^2 + 1/1 * w^2")) == 4);
    CHECK(quad_form_rank(Polynomial::parse(u, "1/1 * x^1 y^1")) == 2);
    CHECK(quad_form_rank(Polynomial::parse(u, "1/1 * x^1 y^1 + -7/2 * z^1 w^1")) == 4);
    CHECK_THROWS(quad_form_rank(Polynomial::parse(u, "1/1 * x^3")));

    // congruence by a unimodular change of variables preserves the rank
    std::mt19937_64 rng(31);
    Polynomial q = Polynomial::parse(u, "1/1 * x^1 y^1 + 2/1 * z^2");
    ExactMatrix g = gram_matrix(q);
    for (int trial = 0; trial < 5; ++trial) {
        ExactMatrix s = ExactMatrix::identity(4);
        std::uniform_int_distribution<int> idx(0, 3), val(-2, 2);
        for (int step = 0; step < 6; ++step) {
            int a = idx(rng), b = idx(rng);
            if (a == b) continue;
            GaussianRational f{Rational(val(rng))};
            for (size_t c = 0; c < 4; ++c) s.at(a, c) += f * s.at(b, c);
        }
        ExactMatrix congruent(4, 4);
        for (size_t r = 0; r < 4; ++r)
            for (size_t c = 0; c < 4; ++c) {
                GaussianRational acc(0);
                for (size_t i = 0; i < 4; ++i)
                    for (size_t j = 0; j < 4; ++j)
                        acc += s.at(i, r) * g.at(i, j) * s.at(j, c);
                congruent.at(r, c) = acc;
            }
        CHECK(rank(congruent) == quad_form_rank(q));
    }
}

TEST_CASE("ideal membership certificates") {
    family::FamilyModel fm(family::ConformalInvariant({1, 2, 3, 4, 5, 6}));
    std::vector<Polynomial> gens(fm.generators().begin(), fm.generators().end());
    const VarSetPtr u = family::family_universe();
    auto x = [&](int i) { return Polynomial::variable(u, "x" + std::to_string(i)); };
    Polynomial one = Polynomial::constant(u, GaussianRational(1));

    CHECK(check_certificate(gens[0], {{one, 0}}, gens));

    // x1 x3 x5 = d(l) x0^3 on the model: multiply the mixed relation by x1
    // and correct by the diagonal relation
    Polynomial f1 = Polynomial::variable(u, "l") - Polynomial::constant(u, GaussianRational(1));
    Polynomial f4 = Polynomial::variable(u, "l") - Polynomial::constant(u, GaussianRational(4));
    Polynomial d = fm.coefficients().d.project(u);
    Polynomial target = x(1) * x(3) * x(5) - d * x(0) * x(0) * x(0);
    CHECK(check_certificate(target, {{x(1), 3}, {-(f1 * f4 * x(0)), 0}}, gens));

    // wrong sign on the correction term: certificate must be rejected
    CHECK_FALSE(check_certificate(target, {{x(1), 3}, {f1 * f4 * x(0), 0}}, gens));

    // x0^4 does not vanish on the family; no combination reproduces it
    Polynomial impossible = x(0).pow(4);
    CHECK_FALSE(check_certificate(impossible, {{x(0) * x(0), 0}, {one, 1}}, gens));
    CHECK_THROWS(check_certificate(impossible, {{one, 9}}, gens));
}
