#include "twistor/suites.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace twistor::suites {

using family::FamilyModel;
using family::FiberComponentParam;
using family::HalfSide;

namespace {

// deterministic sampling so reports are byte-stable across runs
constexpr unsigned kSuiteSeed = 0x5eed;

Rational random_rational(std::mt19937_64& rng, int num_range, int den_range) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

Rational random_smooth_lambda(const FamilyModel& fm, std::mt19937_64& rng) {
    while (true) {
        Rational lambda = random_rational(rng, 30, 8);
        bool is_root = false;
        for (int i = 1; i <= 6; ++i)
            if (lambda == fm.invariants().lambda(i)) is_root = true;
        if (!is_root) return lambda;
    }
}

struct ClaimRunner {
    report::Suite suite;
    template <class Body>
    void run(const std::string& id, const std::string& description, Body&& body) {
        try {
            std::string witness = body();
            suite.add(id, description, true, witness);
        } catch (const std::exception& e) {
            suite.add(id, description, false, e.what());
        }
    }
};

void expect(bool cond, const std::string& message) {
    if (!cond) throw std::logic_error(message);
}

int parametrized_jacobian_rank(const FamilyModel& fm, const FiberComponentParam& param,
                               const Rational& lambda0, const GaussianRational& s,
                               const GaussianRational& u) {
    VarSetPtr chart = make_vars({"l", "x1", "x2", "x3", "x4", "x5", "x6"});
    std::vector<Polynomial> system;
    for (const Polynomial& g : fm.generators())
        system.push_back(g.bind("x0", GaussianRational(1)).project(chart));
    family::ProjectivePoint p = family::param_point(param, s, u, GaussianRational(lambda0));
    std::map<std::string, GaussianRational> at{{"l", p.lambda}};
    for (int coord = 1; coord <= 6; ++coord) at["x" + std::to_string(coord)] = p.x[coord];
    return rank(jacobian_at(system, at));
}

}  // namespace

report::Suite run_family_suite(const FamilyModel& fm) {
    ClaimRunner r;
    r.suite.name = "family";

    r.run("family.reality", "coefficient functions satisfy abc = d^2 and vanish at the nodes", [&] {
        const auto& c = fm.coefficients();
        expect((c.a * c.b * c.c - c.d * c.d).is_zero(), "abc - d^2 != 0");
        for (int i = 1; i <= 6; ++i) {
            std::map<std::string, GaussianRational> at{
                {"l", GaussianRational(fm.invariants().lambda(i))}};
            expect(c.d.eval(at).is_zero(), "d(l_" + std::to_string(i) + ") != 0");
        }
        return std::string("abc - d^2 == 0, d(l_i) == 0 for all i");
    });

    r.run("family.weights", "all nine generators are weight-homogeneous", [&] {
        static const std::array<std::array<int, 2>, 9> expected{{{0, 0},
                                                                 {0, 0},
                                                                 {0, 0},
                                                                 {-1, 0},
                                                                 {0, -1},
                                                                 {1, 1},
                                                                 {1, 0},
                                                                 {0, 1},
                                                                 {-1, -1}}};
        for (int k = 0; k < 9; ++k)
            expect(fm.weights()[k] == expected[k], "weight of g" + std::to_string(k + 1));
        return std::string("weights (0,0)x3, (-1,0), (0,-1), (1,1), (1,0), (0,1), (-1,-1)");
    });

    r.run("family.involution", "real structure fixes g1..g3 and swaps g4/g7, g5/g8, g6/g9", [&] {
        static const std::array<int, 9> expected{0, 1, 2, 6, 7, 8, 3, 4, 5};
        expect(fm.involution_permutation() == expected, "unexpected generator permutation");
        return std::string("permutation (1)(2)(3)(4 7)(5 8)(6 9)");
    });

    r.run("family.mu_chart", "the chart at l = infinity is smooth over m = 0", [&] {
        auto mu = fm.mu_chart_generators();
        std::vector<Polynomial> at_zero;
        for (const Polynomial& g : mu)
            at_zero.push_back(g.bind("m", GaussianRational(0)).project(family::chart_universe()));
        auto expected = family::normal_quadric_system_from_values(
            GaussianRational(-1), GaussianRational(-1), GaussianRational(1), GaussianRational(1));
        for (int k = 0; k < 9; ++k)
            expect(at_zero[k] == expected[k], "m = 0 fiber relations mismatch at g" +
                                                  std::to_string(k + 1));
        // smoothness of the m = 0 fiber along its dense orbit
        FiberComponentParam param;
        param.coords[0] = family::MonomialParam{GaussianRational(1), {0, 0}};
        param.coords[1] = family::MonomialParam{GaussianRational(1), {1, 0}};
        param.coords[2] = family::MonomialParam{GaussianRational(-1), {-1, 0}};
        param.coords[3] = family::MonomialParam{GaussianRational(1), {0, 1}};
        param.coords[4] = family::MonomialParam{GaussianRational(-1), {0, -1}};
        param.coords[5] = family::MonomialParam{GaussianRational(1), {-1, -1}};
        param.coords[6] = family::MonomialParam{GaussianRational(1), {1, 1}};
        VarSetPtr chart = make_vars({"m", "x1", "x2", "x3", "x4", "x5", "x6"});
        std::vector<Polynomial> system;
        for (const Polynomial& g : mu)
            system.push_back(g.bind("x0", GaussianRational(1)).project(chart));
        family::ProjectivePoint p =
            family::param_point(param, GaussianRational(2), GaussianRational(3), GaussianRational(0));
        std::map<std::string, GaussianRational> bound{{"m", GaussianRational(0)}};
        for (int coord = 1; coord <= 6; ++coord) bound["x" + std::to_string(coord)] = p.x[coord];
        expect(rank(jacobian_at(system, bound)) == 4, "m = 0 chart point is not smooth");
        return std::string("m = 0 relations have constants (-1,-1,1,1); sample point smooth");
    });

    r.run("family.classification", "fiber classification matches the node set", [&] {
        for (int i = 1; i <= 6; ++i) {
            auto cls = fm.classify_fiber(GaussianRational(fm.invariants().lambda(i)));
            expect(cls.kind == family::FiberKind::Reducible && cls.index == i,
                   "l_" + std::to_string(i) + " not classified reducible");
        }
        Rational off = fm.representative_smooth_lambda();
        expect(fm.classify_fiber(GaussianRational(off)).kind == family::FiberKind::Smooth,
               "representative smooth value misclassified");
        return std::string("six reducible values, smooth elsewhere");
    });

    return r.suite;
}

report::Suite run_fiber_suite(const FamilyModel& fm) {
    ClaimRunner r;
    r.suite.name = "fiber";
    std::mt19937_64 rng(kSuiteSeed);

    r.run("fiber.generic", "random smooth fibers: sextic toric surfaces, smooth and hexagonal", [&] {
        for (int trial = 0; trial < 20; ++trial) {
            Rational lambda0 = random_smooth_lambda(fm, rng);
            FiberComponentParam param = fm.generic_fiber_parametrization(lambda0);
            expect(family::annihilates(fm.specialized_generators(GaussianRational(lambda0)), param),
                   "parametrization fails the relations");
            expect(param.polygon.degree() == 6, "polygon degree != 6");
            Fan2D fan = param.polygon.normal_fan();
            expect(k_squared(fan) == 6, "K^2 != 6");
            expect(cycles_equal_up_to_symmetry(selfint_from_fan(fan),
                                               SelfIntCycle({-1, -1, -1, -1, -1, -1})),
                   "fan cycle is not (-1)^6");
            for (int sample = 0; sample < 5; ++sample) {
                GaussianRational s{random_rational(rng, 6, 4)}, u{random_rational(rng, 6, 4)};
                if (s.is_zero() || u.is_zero()) {
                    --sample;
                    continue;
                }
                expect(parametrized_jacobian_rank(fm, param, lambda0, s, u) == 4,
                       "Jacobian rank != 4 at a smooth point");
            }
        }
        return std::string("20 random fibers: degree 6, cycle (-1)^6, K^2 = 6, rank 4");
    });

    r.run("fiber.components", "reducible fibers split into conjugate cubic components", [&] {
        for (int i = 1; i <= 6; ++i) {
            auto [plus, minus] = fm.fiber_components(i);
            expect(plus.polygon.degree() == 3 && minus.polygon.degree() == 3,
                   "component degree != 3");
            expect(plus.zero_coords.size() == 2 && minus.zero_coords.size() == 2 &&
                       plus.polygon.points().size() == 5 && minus.polygon.points().size() == 5,
                   "components are not 5-monomial surfaces in coordinate P^4");
            std::vector<int> conj_zero;
            for (int c : plus.zero_coords) conj_zero.push_back(c % 2 == 1 ? c + 1 : c - 1);
            std::sort(conj_zero.begin(), conj_zero.end());
            std::vector<int> minus_zero = minus.zero_coords;
            std::sort(minus_zero.begin(), minus_zero.end());
            expect(conj_zero == minus_zero, "components are not exchanged by the real structure");
            Fan2D fan = plus.polygon.normal_fan();
            expect(cycles_equal_up_to_symmetry(selfint_from_fan(fan), SelfIntCycle({0, -1, 0, 1})),
                   "component fan is not of scroll type");
        }
        return std::string("six fibers: cubic components with 5 monomials, conjugate pairs");
    });

    r.run("fiber.conics", "component intersections are conics without real points", [&] {
        for (int i = 1; i <= 6; ++i) {
            FiberComponentParam conic = fm.intersection_conic(i);
            expect(conic.zero_coords.size() == 4, "conic not cut by four coordinates");
            expect(!fm.conic_coefficient(i).is_zero(), "conic is not irreducible");
            expect(!fm.conic_has_real_points(i), "conic has a real point");
        }
        return std::string("six irreducible conics, all without real points");
    });

    r.run("fiber.isotropy", "conic stabilizers pair the nodes 1-4, 2-5, 3-6", [&] {
        for (int i = 1; i <= 3; ++i)
            expect(fm.conic_isotropy(i) == fm.conic_isotropy(i + 3),
                   "isotropy differs within pair {" + std::to_string(i) + "," +
                       std::to_string(i + 3) + "}");
        expect(fm.conic_isotropy(1) != fm.conic_isotropy(2) &&
                   fm.conic_isotropy(2) != fm.conic_isotropy(3) &&
                   fm.conic_isotropy(1) != fm.conic_isotropy(3),
               "isotropy subgroups are not distinct across pairs");
        std::ostringstream w;
        for (int i = 1; i <= 3; ++i)
            w << "(" << fm.conic_isotropy(i).p << "," << fm.conic_isotropy(i).q << ") ";
        return w.str();
    });

    r.run("fiber.halves", "cycle halves: arcs of six, equivariant, C6 on the plus side", [&] {
        for (int i = 1; i <= 6; ++i) {
            family::HalvesAssignment halves = fm.halves_assignment(i);
            int plus_count = 0;
            for (const auto& [label, side] : halves.sides)
                if (side == HalfSide::Plus) ++plus_count;
            expect(plus_count == 6, "plus half does not hold six curves");
            expect(halves.sides.at(CurveLabel::cycle(6, false)) == HalfSide::Plus,
                   "C6 is not on the plus side");
            int shared = 0;
            for (const auto& [label, side] : halves.incidence)
                if (side == HalfSide::Shared) ++shared;
            expect(shared == 2, "number of node labels != 2");
        }
        return std::string("halves are conjugate arcs of six with two node labels each");
    });

    r.run("fiber.real_points", "real smooth fibers carry no real points", [&] {
        for (int trial = 0; trial < 10; ++trial) {
            Rational lambda0 = random_smooth_lambda(fm, rng);
            std::map<std::string, GaussianRational> at{{"l", GaussianRational(lambda0)}};
            const auto& c = fm.coefficients();
            auto result = family::real_point_exists(c.a.eval(at), c.b.eval(at), c.c.eval(at),
                                                    c.d.eval(at));
            expect(!result.exists, "unexpected real point on a real fiber");
        }
        return std::string("10 random real fibers rejected");
    });

    return r.suite;
}

report::Suite run_odp_suite(const FamilyModel& fm) {
    ClaimRunner r;
    r.suite.name = "odp";
    std::mt19937_64 rng(kSuiteSeed + 1);

    r.run("odp.candidates", "twelve candidate nodes, closed under the real structure", [&] {
        auto candidates = fm.singular_candidates();
        expect(candidates.size() == 12, "candidate count != 12");
        for (size_t k = 0; k < candidates.size(); k += 2) {
            const auto& a = candidates[k];
            const auto& b = candidates[k + 1];
            expect(a.lambda == b.lambda, "pair not over one fiber");
            for (int coord = 0; coord < 7; ++coord) {
                int cc = coord == 0 ? 0 : (coord % 2 == 1 ? coord + 1 : coord - 1);
                expect(a.x[coord] == b.x[cc].conj(), "pair not conjugate");
            }
        }
        return std::string("12 candidates in 6 conjugate pairs");
    });

    r.run("odp.nodes", "every candidate passes the corank-1 / rank-4 node test", [&] {
        for (const auto& p : fm.singular_candidates())
            expect(fm.verify_odp(p), "candidate fails the node test: " + p.str());
        return std::string("12/12 nodes verified");
    });

    r.run("odp.negative", "smooth points and generic conic points fail the node test", [&] {
        Rational lambda0 = fm.representative_smooth_lambda();
        FiberComponentParam param = fm.generic_fiber_parametrization(lambda0);
        for (int sample = 0; sample < 3; ++sample) {
            GaussianRational s{random_rational(rng, 5, 3)}, u{random_rational(rng, 5, 3)};
            if (s.is_zero() || u.is_zero()) {
                --sample;
                continue;
            }
            auto p = family::param_point(param, s, u, GaussianRational(lambda0));
            expect(!fm.verify_odp(p), "smooth point passes the node test");
        }
        for (int i = 1; i <= 6; ++i) {
            auto plane = fm.conic_plane(i);
            family::ProjectivePoint p;
            p.lambda = GaussianRational(fm.invariants().lambda(i));
            p.x[0] = GaussianRational(1);
            p.x[plane[0]] = GaussianRational(2);
            p.x[plane[1]] = fm.conic_coefficient(i) / GaussianRational(2);
            expect(!fm.verify_odp(p), "generic conic point passes the node test");
        }
        return std::string("3 smooth samples and 6 conic samples rejected");
    });

    return r.suite;
}

report::Suite run_surgery_suite(const FamilyModel& fm, const surgery::ResolutionChoice& choice) {
    return surgery::run_pipeline(fm, choice).suite;
}

report::Report run_verification(const FamilyModel& fm, const surgery::ResolutionChoice& choice,
                                const std::vector<std::string>& only) {
    report::Report out;
    for (const Rational& l : fm.invariants().lambdas()) out.lambdas.push_back(rational_str(l));
    auto wanted = [&](const std::string& name) {
        return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
    };
    if (wanted("family")) out.suites.push_back(run_family_suite(fm));
    if (wanted("fiber")) out.suites.push_back(run_fiber_suite(fm));
    if (wanted("odp")) out.suites.push_back(run_odp_suite(fm));
    if (wanted("surgery")) out.suites.push_back(run_surgery_suite(fm, choice));
    return out;
}

}  // namespace twistor::suites
