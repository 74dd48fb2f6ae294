#include "twistor/family.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace twistor::family {

VarSetPtr lambda_universe() {
    static VarSetPtr u = make_vars({"l"});
    return u;
}

VarSetPtr family_universe() {
    static VarSetPtr u = make_vars({"l", "x0", "x1", "x2", "x3", "x4", "x5", "x6"});
    return u;
}

VarSetPtr chart_universe() {
    static VarSetPtr u = make_vars({"x0", "x1", "x2", "x3", "x4", "x5", "x6"});
    return u;
}

VarSetPtr mu_universe() {
    static VarSetPtr u = make_vars({"m", "x0", "x1", "x2", "x3", "x4", "x5", "x6"});
    return u;
}

ConformalInvariant::ConformalInvariant(std::array<Rational, 6> lambdas)
    : lambdas_(std::move(lambdas)) {
    for (int i = 0; i + 1 < 6; ++i)
        if (!(lambdas_[i] < lambdas_[i + 1]))
            throw std::invalid_argument("conformal invariants must be strictly increasing (l" +
                                        std::to_string(i + 1) + " >= l" + std::to_string(i + 2) +
                                        ")");
}

ConformalInvariant ConformalInvariant::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
    std::array<Rational, 6> values;
    std::string line;
    size_t count = 0;
    while (std::getline(in, line)) {
        std::string body = line.substr(0, line.find('#'));
        if (body.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        if (count >= 6) throw std::invalid_argument("more than six values in '" + path.string() + "'");
        values[count++] = parse_rational(body);
    }
    if (count != 6)
        throw std::invalid_argument("expected six rationals in '" + path.string() + "', found " +
                                    std::to_string(count));
    return ConformalInvariant(values);
}

namespace {

Polynomial linear_factor(const VarSetPtr& u, const std::string& var, const Rational& root) {
    return Polynomial::variable(u, var) -
           Polynomial::constant(u, GaussianRational(root));
}

}  // namespace

CoefficientFunctions coefficient_functions(const ConformalInvariant& ci) {
    const VarSetPtr u = lambda_universe();
    std::array<Polynomial, 7> f = {Polynomial::constant(u, GaussianRational(1)),
                                   linear_factor(u, "l", ci.lambda(1)),
                                   linear_factor(u, "l", ci.lambda(2)),
                                   linear_factor(u, "l", ci.lambda(3)),
                                   linear_factor(u, "l", ci.lambda(4)),
                                   linear_factor(u, "l", ci.lambda(5)),
                                   linear_factor(u, "l", ci.lambda(6))};
    CoefficientFunctions out{
        -(f[2] * f[5] * f[3] * f[6]),
        -(f[1] * f[4] * f[2] * f[5]),
        f[1] * f[4] * f[3] * f[6],
        f[1] * f[2] * f[3] * f[4] * f[5] * f[6],
    };
    if (!(out.a * out.b * out.c - out.d * out.d).is_zero())
        throw std::logic_error("coefficient functions violate abc = d^2");
    return out;
}

const std::vector<CurveLabel>& cycle_order() {
    static const std::vector<CurveLabel> order = [] {
        std::vector<CurveLabel> v;
        for (int bar = 0; bar < 2; ++bar)
            for (int i = 1; i <= 6; ++i) v.push_back(CurveLabel::cycle(i, bar == 1));
        return v;
    }();
    return order;
}

// Fixed gauge for the hexagon labels: walking the generic polygon
// counterclockwise from the vertex (1,0) = x1 reads C2, C4, C6, C2*, C4*, C6*
// on the vertices and C3, C5, C1*, C3*, C5*, C1 on the edges between them.
CurveLabel vertex_label(int coord) {
    switch (coord) {
        case 1: return CurveLabel::cycle(2, false);
        case 6: return CurveLabel::cycle(4, false);
        case 3: return CurveLabel::cycle(6, false);
        case 2: return CurveLabel::cycle(2, true);
        case 5: return CurveLabel::cycle(4, true);
        case 4: return CurveLabel::cycle(6, true);
        default: throw std::invalid_argument("coordinate x" + std::to_string(coord) + " is not a vertex");
    }
}

int vertex_coord(const CurveLabel& label) {
    for (int coord = 1; coord <= 6; ++coord)
        if (vertex_label(coord) == label) return coord;
    throw std::invalid_argument("label " + label.str() + " is not a fixed-point label");
}

CurveLabel edge_label(int coord_a, int coord_b) {
    static const std::vector<std::pair<std::pair<int, int>, CurveLabel>> table = {
        {{1, 4}, CurveLabel::cycle(1, false)}, {{1, 6}, CurveLabel::cycle(3, false)},
        {{3, 6}, CurveLabel::cycle(5, false)}, {{2, 3}, CurveLabel::cycle(1, true)},
        {{2, 5}, CurveLabel::cycle(3, true)},  {{4, 5}, CurveLabel::cycle(5, true)},
    };
    std::pair<int, int> key{std::min(coord_a, coord_b), std::max(coord_a, coord_b)};
    for (const auto& [pair, label] : table)
        if (pair == key) return label;
    throw std::invalid_argument("coordinates x" + std::to_string(coord_a) + ", x" +
                                std::to_string(coord_b) + " do not span a boundary curve");
}

std::array<int, 2> coordinate_weight(int coord) {
    switch (coord) {
        case 0: return {0, 0};
        case 1: return {1, 0};
        case 2: return {-1, 0};
        case 3: return {0, 1};
        case 4: return {0, -1};
        case 5: return {-1, -1};
        case 6: return {1, 1};
        default: throw std::invalid_argument("no coordinate x" + std::to_string(coord));
    }
}

std::array<int, 2> generator_weight(const Polynomial& g) {
    if (g.is_zero()) throw std::invalid_argument("zero polynomial has no weight");
    const VarSetPtr& u = g.vars();
    std::optional<std::array<int, 2>> weight;
    for (const auto& [e, c] : g.terms()) {
        std::array<int, 2> w{0, 0};
        for (size_t pos = 0; pos < e.size(); ++pos) {
            if (!e[pos]) continue;
            const std::string& name = u->name(pos);
            if (name == "l" || name == "m") continue;
            std::array<int, 2> cw = coordinate_weight(name.at(1) - '0');
            w[0] += static_cast<int>(e[pos]) * cw[0];
            w[1] += static_cast<int>(e[pos]) * cw[1];
        }
        if (weight && *weight != w)
            throw std::invalid_argument("polynomial is not weight-homogeneous");
        weight = w;
    }
    return *weight;
}

FamilyModel::FamilyModel(ConformalInvariant ci)
    : ci_(std::move(ci)),
      coeffs_(coefficient_functions(ci_)),
      generators_{Polynomial(family_universe()), Polynomial(family_universe()),
                  Polynomial(family_universe()), Polynomial(family_universe()),
                  Polynomial(family_universe()), Polynomial(family_universe()),
                  Polynomial(family_universe()), Polynomial(family_universe()),
                  Polynomial(family_universe())} {
    const VarSetPtr u = family_universe();
    auto x = [&](int i) { return Polynomial::variable(u, "x" + std::to_string(i)); };
    auto f = [&](int i) { return linear_factor(u, "l", ci_.lambda(i)); };
    const Polynomial a = coeffs_.a.project(u), b = coeffs_.b.project(u), c = coeffs_.c.project(u);

    generators_[0] = x(1) * x(2) - a * x(0) * x(0);
    generators_[1] = x(3) * x(4) - b * x(0) * x(0);
    generators_[2] = x(5) * x(6) - c * x(0) * x(0);
    generators_[3] = x(3) * x(5) + f(1) * f(4) * x(0) * x(2);
    generators_[4] = x(5) * x(1) + f(3) * f(6) * x(0) * x(4);
    generators_[5] = x(1) * x(3) - f(2) * f(5) * x(0) * x(6);
    generators_[6] = x(4) * x(6) + f(1) * f(4) * x(0) * x(1);
    generators_[7] = x(2) * x(6) + f(3) * f(6) * x(0) * x(3);
    generators_[8] = x(2) * x(4) - f(2) * f(5) * x(0) * x(5);

    for (int k = 0; k < 9; ++k) weights_[k] = generator_weight(generators_[k]);

    for (int k = 0; k < 9; ++k) {
        Polynomial image = real_structure(generators_[k]);
        int found = -1;
        for (int j = 0; j < 9; ++j)
            if (image == generators_[j]) found = j;
        if (found < 0)
            throw std::logic_error("real structure does not permute the generators (g" +
                                   std::to_string(k + 1) + ")");
        involution_[k] = found;
    }
    for (int k = 0; k < 9; ++k)
        if (involution_[involution_[k]] != k)
            throw std::logic_error("real structure is not an involution on the generators");
}

Polynomial FamilyModel::real_structure(const Polynomial& g) const {
    static const std::vector<size_t> perm = [] {
        // universe order l, x0, x1, x2, x3, x4, x5, x6
        std::vector<size_t> p = {0, 1, 3, 2, 5, 4, 7, 6};
        return p;
    }();
    return g.permute_variables(perm, /*conjugate=*/true);
}

FiberClass FamilyModel::classify_fiber(const GaussianRational& lambda0) const {
    if (!lambda0.is_real())
        throw std::invalid_argument("fiber classification expects a real parameter value");
    for (int i = 1; i <= 6; ++i)
        if (lambda0.re() == ci_.lambda(i)) return {FiberKind::Reducible, i};
    return {FiberKind::Smooth, 0};
}

std::vector<Polynomial> FamilyModel::specialized_generators(const GaussianRational& lambda0) const {
    std::vector<Polynomial> out;
    out.reserve(9);
    for (const Polynomial& g : generators_) out.push_back(g.bind("l", lambda0));
    return out;
}

bool annihilates(const std::vector<Polynomial>& system, const FiberComponentParam& param) {
    const VarSetPtr& u = system.empty() ? family_universe() : system.front().vars();
    for (const Polynomial& g : system) {
        std::map<std::array<int, 2>, GaussianRational> laurent;
        for (const auto& [e, coeff] : g.terms()) {
            GaussianRational c = coeff;
            std::array<int, 2> exp{0, 0};
            bool zero = false;
            for (size_t pos = 0; pos < e.size(); ++pos) {
                if (!e[pos]) continue;
                const std::string& name = u->name(pos);
                if (name == "l" || name == "m")
                    throw std::invalid_argument("system must be specialized before substitution");
                int coord = name.at(1) - '0';
                const auto& assignment = param.coords.at(coord);
                if (!assignment) {
                    zero = true;
                    break;
                }
                c *= assignment->coeff.pow(e[pos]);
                exp[0] += static_cast<int>(e[pos]) * assignment->exp[0];
                exp[1] += static_cast<int>(e[pos]) * assignment->exp[1];
            }
            if (zero || c.is_zero()) continue;
            auto [it, inserted] = laurent.emplace(exp, c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero()) laurent.erase(it);
            }
        }
        if (!laurent.empty()) return false;
    }
    return true;
}

ProjectivePoint param_point(const FiberComponentParam& param, const GaussianRational& s,
                            const GaussianRational& u, const GaussianRational& lambda) {
    auto power = [](const GaussianRational& base, int e) {
        if (e >= 0) return base.pow(static_cast<unsigned>(e));
        return (GaussianRational(1) / base).pow(static_cast<unsigned>(-e));
    };
    ProjectivePoint p;
    p.lambda = lambda;
    for (int coord = 0; coord < 7; ++coord) {
        const auto& assignment = param.coords.at(coord);
        if (!assignment) continue;
        p.x[coord] = assignment->coeff * power(s, assignment->exp[0]) * power(u, assignment->exp[1]);
    }
    return p;
}

namespace {

LatticePolygon polygon_of(const std::array<std::optional<MonomialParam>, 7>& coords) {
    std::vector<LatticePoint> pts;
    for (int coord = 0; coord < 7; ++coord)
        if (coords[coord])
            pts.push_back({coords[coord]->exp[0], coords[coord]->exp[1], coord});
    return LatticePolygon(std::move(pts));
}

}  // namespace

FiberComponentParam FamilyModel::generic_fiber_parametrization(const Rational& lambda0) const {
    std::map<std::string, GaussianRational> at{{"l", GaussianRational(lambda0)}};
    GaussianRational a = coeffs_.a.eval(at), b = coeffs_.b.eval(at), c = coeffs_.c.eval(at),
                     d = coeffs_.d.eval(at);
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero())
        throw std::invalid_argument("abcd = 0 at the requested parameter; fiber is not generic");
    FiberComponentParam param;
    param.coords[0] = MonomialParam{GaussianRational(1), {0, 0}};
    param.coords[1] = MonomialParam{GaussianRational(1), {1, 0}};
    param.coords[2] = MonomialParam{a, {-1, 0}};
    param.coords[3] = MonomialParam{GaussianRational(1), {0, 1}};
    param.coords[4] = MonomialParam{b, {0, -1}};
    param.coords[5] = MonomialParam{d, {-1, -1}};
    param.coords[6] = MonomialParam{c / d, {1, 1}};
    param.polygon = polygon_of(param.coords);
    if (!annihilates(specialized_generators(GaussianRational(lambda0)), param))
        throw std::logic_error("generic parametrization does not satisfy the relations");
    return param;
}

std::optional<FiberComponentParam> FamilyModel::solve_component(int i, int zero_a,
                                                                int zero_b) const {
    const GaussianRational lambda{ci_.lambda(i)};
    std::vector<Polynomial> specialized = specialized_generators(lambda);
    const GaussianRational zero(0);

    struct Term {
        GaussianRational coeff;
        std::array<unsigned, 7> exps{};
    };
    struct Relation {
        Term lhs, rhs;  // lhs.coeff * x^lhs + rhs.coeff * x^rhs = 0
    };
    std::vector<Relation> relations;
    for (const Polynomial& g : specialized) {
        Polynomial r = g.bind("x" + std::to_string(zero_a), zero)
                           .bind("x" + std::to_string(zero_b), zero);
        if (r.is_zero()) continue;
        if (r.term_count() == 1) return std::nullopt;  // forces extra vanishing
        Relation rel;
        bool first = true;
        for (const auto& [e, c] : r.terms()) {
            Term t;
            t.coeff = c;
            for (int coord = 0; coord < 7; ++coord)
                t.exps[coord] = e[1 + coord];  // universe order l, x0..x6
            (first ? rel.lhs : rel.rhs) = t;
            first = false;
        }
        relations.push_back(rel);
    }

    std::array<std::optional<MonomialParam>, 7> assigned;
    assigned[0] = MonomialParam{GaussianRational(1), {0, 0}};
    auto is_zero_coord = [&](int c) { return c == zero_a || c == zero_b; };

    // value of a monomial over the assigned coordinates; nullopt if any
    // factor is still unknown
    auto monomial_value = [&](const Term& t) -> std::optional<MonomialParam> {
        MonomialParam acc{t.coeff, {0, 0}};
        for (int coord = 0; coord < 7; ++coord) {
            if (!t.exps[coord]) continue;
            if (!assigned[coord]) return std::nullopt;
            acc.coeff *= assigned[coord]->coeff.pow(t.exps[coord]);
            acc.exp[0] += static_cast<int>(t.exps[coord]) * assigned[coord]->exp[0];
            acc.exp[1] += static_cast<int>(t.exps[coord]) * assigned[coord]->exp[1];
        }
        return acc;
    };
    auto unknowns_of = [&](const Term& t) {
        std::vector<int> u;
        for (int coord = 0; coord < 7; ++coord)
            if (t.exps[coord] && !assigned[coord]) u.push_back(coord);
        return u;
    };

    // seed the torus direction s on the diagonal relation x_j x_k = K x0^2
    for (const Relation& rel : relations) {
        for (const Term* diag : {&rel.lhs, &rel.rhs}) {
            const Term& other = diag == &rel.lhs ? rel.rhs : rel.lhs;
            if (other.exps[0] != 2) continue;
            std::vector<int> u = unknowns_of(*diag);
            if (u.size() != 2 || diag->exps[u[0]] != 1 || diag->exps[u[1]] != 1) continue;
            assigned[u[0]] = MonomialParam{GaussianRational(1), {1, 0}};
            // diag.coeff * x_{u0} x_{u1} + other.coeff = 0 on x0 = 1
            assigned[u[1]] =
                MonomialParam{-other.coeff / diag->coeff, {-1, 0}};
            break;
        }
        if (assigned[1] || assigned[2] || assigned[3] || assigned[4] || assigned[5] || assigned[6])
            break;
    }

    bool used_free_direction = false;
    for (int guard = 0; guard < 32; ++guard) {
        bool progress = false;
        bool all_done = true;
        for (int coord = 1; coord < 7; ++coord)
            if (!is_zero_coord(coord) && !assigned[coord]) all_done = false;
        if (all_done) break;

        for (const Relation& rel : relations) {
            for (const Term* side : {&rel.lhs, &rel.rhs}) {
                const Term& other = side == &rel.lhs ? rel.rhs : rel.lhs;
                std::vector<int> u = unknowns_of(*side);
                if (u.size() != 1 || side->exps[u[0]] != 1 || !unknowns_of(other).empty()) continue;
                auto rest = *side;
                rest.exps[u[0]] = 0;
                auto rest_val = monomial_value(rest);
                auto other_val = monomial_value(other);
                if (!rest_val || !other_val || rest_val->coeff.is_zero()) continue;
                assigned[u[0]] = MonomialParam{
                    -other_val->coeff / rest_val->coeff,
                    {other_val->exp[0] - rest_val->exp[0], other_val->exp[1] - rest_val->exp[1]}};
                progress = true;
            }
        }
        if (!progress) {
            if (used_free_direction) return std::nullopt;  // dimension would exceed 2
            int coord = 1;
            while (coord < 7 && (is_zero_coord(coord) || assigned[coord])) ++coord;
            if (coord == 7) break;
            assigned[coord] = MonomialParam{GaussianRational(1), {0, 1}};
            used_free_direction = true;
        }
    }

    for (int coord = 1; coord < 7; ++coord)
        if (!is_zero_coord(coord) && !assigned[coord]) return std::nullopt;

    FiberComponentParam param;
    param.coords = assigned;
    param.zero_coords = {zero_a, zero_b};
    if (!annihilates(specialized, param)) return std::nullopt;
    param.polygon = polygon_of(param.coords);
    return param;
}

namespace {

int conj_coord(int coord) {
    switch (coord) {
        case 0: return 0;
        case 1: return 2;
        case 2: return 1;
        case 3: return 4;
        case 4: return 3;
        case 5: return 6;
        case 6: return 5;
        default: throw std::invalid_argument("no coordinate x" + std::to_string(coord));
    }
}

// coordinates surviving on the boundary curve with the given cycle label
std::array<int, 2> edge_coords(const CurveLabel& label) {
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b) {
            try {
                if (edge_label(a, b) == label) return {a, b};
            } catch (const std::invalid_argument&) {
            }
        }
    throw std::invalid_argument("label " + label.str() + " is not a boundary-curve label");
}

}  // namespace

std::pair<FiberComponentParam, FiberComponentParam> FamilyModel::fiber_components(int i) const {
    auto data = fiber_data(i);
    return {data->plus, data->minus};
}

HalvesAssignment FamilyModel::halves_assignment(int i) const { return fiber_data(i)->halves; }

std::shared_ptr<const FamilyModel::FiberData> FamilyModel::fiber_data(int i) const {
    if (i < 1 || i > 6) throw std::invalid_argument("fiber index out of range");
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (fiber_cache_[i - 1]) return fiber_cache_[i - 1];
    }
    std::vector<FiberComponentParam> found;
    for (int p = 1; p <= 6; ++p)
        for (int q = p + 1; q <= 6; ++q)
            if (auto comp = solve_component(i, p, q)) found.push_back(std::move(*comp));
    if (found.size() != 2)
        throw std::logic_error("expected exactly 2 components over l" + std::to_string(i) +
                               ", found " + std::to_string(found.size()));
    if (conj_coord(found[0].zero_coords[0]) != found[1].zero_coords[0] &&
        conj_coord(found[0].zero_coords[0]) != found[1].zero_coords[1])
        throw std::logic_error("fiber components are not conjugate");
    std::vector<std::array<int, 2>> zero_sets = {
        {found[0].zero_coords[0], found[0].zero_coords[1]},
        {found[1].zero_coords[0], found[1].zero_coords[1]}};

    // a boundary curve lies in a component iff neither of its two surviving
    // coordinates is killed there
    auto curve_in = [&](const CurveLabel& label, const std::array<int, 2>& zero) {
        std::array<int, 2> on = edge_coords(label);
        return on[0] != zero[0] && on[0] != zero[1] && on[1] != zero[0] && on[1] != zero[1];
    };
    auto vertex_in = [&](int coord, const std::array<int, 2>& zero) {
        return coord != zero[0] && coord != zero[1];
    };

    HalvesAssignment out;
    std::map<CurveLabel, std::pair<bool, bool>> membership;  // (in A, in B)
    for (const CurveLabel& label : cycle_order()) {
        bool in_a, in_b;
        if (label.index % 2 == 1) {  // boundary curve label C1/C3/C5 (+ bars)
            in_a = curve_in(label, zero_sets[0]);
            in_b = curve_in(label, zero_sets[1]);
        } else {  // fixed-point label C2/C4/C6 (+ bars)
            int coord = vertex_coord(label);
            in_a = vertex_in(coord, zero_sets[0]);
            in_b = vertex_in(coord, zero_sets[1]);
        }
        if (!in_a && !in_b)
            throw std::logic_error("label " + label.str() + " lies in neither component");
        membership[label] = {in_a, in_b};
    }

    std::vector<CurveLabel> shared;
    for (const auto& [label, mem] : membership)
        if (mem.first && mem.second) shared.push_back(label);
    if (shared.size() != 2)
        throw std::logic_error("expected exactly 2 shared labels over l" + std::to_string(i));

    // a shared label (its curve is contracted onto a node) joins the half of
    // its predecessor in the cycle
    auto predecessor = [](const CurveLabel& label) {
        return CurveLabel::cycle(label.index - 1, label.bar);
    };
    auto side_of = [&](const CurveLabel& label) -> int {  // 0 = A, 1 = B, -1 = shared
        auto mem = membership.at(label);
        if (mem.first && mem.second) return -1;
        return mem.first ? 0 : 1;
    };
    std::map<CurveLabel, int> resolved;
    for (const CurveLabel& label : cycle_order()) {
        int side = side_of(label);
        if (side < 0) side = side_of(predecessor(label));
        if (side < 0) throw std::logic_error("cannot resolve shared label " + label.str());
        resolved[label] = side;
    }

    int plus_side = resolved.at(CurveLabel::cycle(6, false));
    auto to_half = [&](int side) { return side == plus_side ? HalfSide::Plus : HalfSide::Minus; };
    for (const CurveLabel& label : cycle_order()) {
        out.sides[label] = to_half(resolved.at(label));
        int raw = side_of(label);
        out.incidence[label] = raw < 0 ? HalfSide::Shared : to_half(raw);
    }
    std::sort(shared.begin(), shared.end(),
              [](const CurveLabel& a, const CurveLabel& b) { return a.bar < b.bar; });
    out.odp_labels = {shared[0], shared[1]};
    out.plus_zero_coords = zero_sets[plus_side];
    out.minus_zero_coords = zero_sets[1 - plus_side];

    // structural checks: conjugation-equivariance and two consecutive arcs
    for (const CurveLabel& label : cycle_order()) {
        HalfSide a = out.sides.at(label), b = out.sides.at(label.conj());
        if ((a == HalfSide::Plus) != (b == HalfSide::Minus))
            throw std::logic_error("halves are not conjugation-equivariant");
    }
    const auto& order = cycle_order();
    int transitions = 0;
    for (size_t k = 0; k < order.size(); ++k)
        if (out.sides.at(order[k]) != out.sides.at(order[(k + 1) % order.size()])) ++transitions;
    if (transitions != 2) throw std::logic_error("halves are not consecutive arcs");

    auto data = std::make_shared<FiberData>();
    data->halves = std::move(out);
    const bool first_is_plus = zero_sets[0] == data->halves.plus_zero_coords;
    data->plus = first_is_plus ? std::move(found[0]) : std::move(found[1]);
    data->minus = first_is_plus ? std::move(found[1]) : std::move(found[0]);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!fiber_cache_[i - 1]) fiber_cache_[i - 1] = std::move(data);
    return fiber_cache_[i - 1];
}

std::array<int, 2> FamilyModel::conic_plane(int i) const {
    HalvesAssignment halves = halves_assignment(i);
    std::array<bool, 7> zero{};
    for (int c : halves.plus_zero_coords) zero[c] = true;
    for (int c : halves.minus_zero_coords) zero[c] = true;
    std::array<int, 2> plane{0, 0};
    size_t at = 0;
    for (int coord = 1; coord <= 6; ++coord)
        if (!zero[coord]) plane.at(at++) = coord;
    if (at != 2) throw std::logic_error("conic plane is not 2-dimensional");
    if (plane[0] % 2 == 0) std::swap(plane[0], plane[1]);  // unbarred coordinate first
    return plane;
}

GaussianRational FamilyModel::conic_coefficient(int i) const {
    std::array<int, 2> plane = conic_plane(i);
    std::map<std::string, GaussianRational> at{{"l", GaussianRational(ci_.lambda(i))}};
    switch (plane[0]) {
        case 1: return coeffs_.a.eval(at);
        case 3: return coeffs_.b.eval(at);
        case 5: return coeffs_.c.eval(at);
        default: throw std::logic_error("unexpected conic plane");
    }
}

FiberComponentParam FamilyModel::intersection_conic(int i) const {
    std::array<int, 2> plane = conic_plane(i);
    GaussianRational k = conic_coefficient(i);
    FiberComponentParam conic;
    conic.coords[0] = MonomialParam{GaussianRational(1), {0, 0}};
    conic.coords[plane[0]] = MonomialParam{GaussianRational(1), {1, 0}};
    conic.coords[plane[1]] = MonomialParam{k, {-1, 0}};
    for (int coord = 1; coord <= 6; ++coord)
        if (coord != plane[0] && coord != plane[1]) conic.zero_coords.push_back(coord);
    conic.polygon = LatticePolygon({{1, 0, plane[0]}, {-1, 0, plane[1]}, {0, 0, 0}});
    if (!annihilates(specialized_generators(GaussianRational(ci_.lambda(i))), conic))
        throw std::logic_error("conic parametrization does not satisfy the relations");
    return conic;
}

TorusSubgroup FamilyModel::conic_isotropy(int i) const {
    std::array<int, 2> plane = conic_plane(i);
    std::array<int, 2> w = coordinate_weight(plane[0]);
    long long p = -w[1], q = w[0];
    if (p < 0 || (p == 0 && q < 0)) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

bool FamilyModel::conic_has_real_points(int i) const {
    GaussianRational k = conic_coefficient(i);
    // a fixed point of the real structure on x_a x_a* = k x0^2 needs
    // |x_a|^2 = k with x0 = 1, or degenerates to the empty locus at x0 = 0
    return k.re() >= 0;
}

Rational FamilyModel::representative_smooth_lambda() const { return ci_.lambda(1) - 1; }

std::string ProjectivePoint::str() const {
    std::ostringstream out;
    out << "(l=" << lambda.str();
    for (int coord = 0; coord < 7; ++coord)
        if (!x[coord].is_zero()) out << ", x" << coord << "=" << x[coord].str();
    out << ")";
    return out.str();
}

}  // namespace twistor::family
