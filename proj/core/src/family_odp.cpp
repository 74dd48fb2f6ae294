#include "twistor/family.hpp"

#include <algorithm>

namespace twistor::family {

std::vector<ProjectivePoint> FamilyModel::singular_candidates() const {
    std::vector<ProjectivePoint> out;
    for (int i = 1; i <= 6; ++i) {
        std::array<int, 2> plane = conic_plane(i);
        for (int coord : plane) {
            ProjectivePoint p;
            p.lambda = GaussianRational(ci_.lambda(i));
            p.x[coord] = GaussianRational(1);
            out.push_back(std::move(p));
        }
    }
    return out;
}

namespace {

// gradients of the pivot rows must span the row space; returns indices of a
// maximal independent subset found greedily
std::vector<size_t> pivot_rows(const ExactMatrix& j) {
    std::vector<size_t> chosen;
    int current = 0;
    for (size_t r = 0; r < j.rows(); ++r) {
        ExactMatrix sub(chosen.size() + 1, j.cols());
        for (size_t k = 0; k < chosen.size(); ++k)
            for (size_t c = 0; c < j.cols(); ++c) sub.at(k, c) = j.at(chosen[k], c);
        for (size_t c = 0; c < j.cols(); ++c) sub.at(chosen.size(), c) = j.at(r, c);
        if (rank(sub) > current) {
            chosen.push_back(r);
            ++current;
        }
    }
    return chosen;
}

// solves A x = rhs exactly (A given column-wise); nullopt if inconsistent
std::optional<std::vector<GaussianRational>> solve_columns(
    const std::vector<std::vector<GaussianRational>>& columns,
    const std::vector<GaussianRational>& rhs) {
    const size_t n_rows = rhs.size(), n_cols = columns.size();
    ExactMatrix m(n_rows, n_cols + 1);
    for (size_t c = 0; c < n_cols; ++c)
        for (size_t r = 0; r < n_rows; ++r) m.at(r, c) = columns[c][r];
    for (size_t r = 0; r < n_rows; ++r) m.at(r, n_cols) = rhs[r];
    // Gauss-Jordan on the augmented matrix
    size_t row = 0;
    std::vector<std::pair<size_t, size_t>> pivots;
    for (size_t col = 0; col < n_cols && row < n_rows; ++col) {
        size_t p = row;
        while (p < n_rows && m.at(p, col).is_zero()) ++p;
        if (p == n_rows) continue;
        for (size_t c = 0; c <= n_cols; ++c) std::swap(m.at(p, c), m.at(row, c));
        GaussianRational inv = GaussianRational(1) / m.at(row, col);
        for (size_t c = col; c <= n_cols; ++c) m.at(row, c) = m.at(row, c) * inv;
        for (size_t r = 0; r < n_rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            GaussianRational f = m.at(r, col);
            for (size_t c = col; c <= n_cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    for (size_t r = row; r < n_rows; ++r)
        if (!m.at(r, n_cols).is_zero()) return std::nullopt;
    std::vector<GaussianRational> x(n_cols);
    for (const auto& [pr, pc] : pivots) x[pc] = m.at(pr, n_cols);
    return x;
}

}  // namespace

bool FamilyModel::verify_odp(const ProjectivePoint& point) const {
    // on-variety and chart preconditions
    int lead = -1;
    for (int coord = 0; coord < 7 && lead < 0; ++coord)
        if (!point.x[coord].is_zero()) lead = coord;
    if (lead < 0) throw std::invalid_argument("all projective coordinates vanish");

    std::array<GaussianRational, 7> scaled;
    for (int coord = 0; coord < 7; ++coord) scaled[coord] = point.x[coord] / point.x[lead];

    std::map<std::string, GaussianRational> full;
    full["l"] = point.lambda;
    for (int coord = 0; coord < 7; ++coord) full["x" + std::to_string(coord)] = scaled[coord];
    for (const Polynomial& g : generators_)
        if (!g.eval(full).is_zero())
            throw std::invalid_argument("point " + point.str() + " is not on the variety");

    // affine chart: drop the leading coordinate, keep l and the six others
    std::vector<std::string> chart_names{"l"};
    for (int coord = 0; coord < 7; ++coord)
        if (coord != lead) chart_names.push_back("x" + std::to_string(coord));
    VarSetPtr chart = make_vars(chart_names);
    const size_t n_vars = chart->size();  // 7

    std::vector<Polynomial> system;
    std::map<std::string, GaussianRational> at;
    std::vector<GaussianRational> offset(n_vars);
    at["l"] = point.lambda;
    offset[0] = point.lambda;
    for (size_t v = 1; v < n_vars; ++v) {
        int coord = chart_names[v].at(1) - '0';
        at[chart_names[v]] = scaled[coord];
        offset[v] = scaled[coord];
    }
    for (const Polynomial& g : generators_)
        system.push_back(g.bind("x" + std::to_string(lead), GaussianRational(1)).project(chart));

    ExactMatrix jac = jacobian_at(system, at);
    int r = rank(jac);
    if (r != 3) return false;  // rank 4 at smooth points

    // center the system at the point and split off linear/quadratic parts
    std::vector<Polynomial> linear, quadratic;
    for (const Polynomial& g : system) {
        Polynomial centered = g.shift(offset);
        linear.push_back(centered.homogeneous_part(1));
        quadratic.push_back(centered.homogeneous_part(2));
    }

    std::vector<size_t> pivots = pivot_rows(jac);
    if (pivots.size() != 3) return false;
    std::vector<std::vector<GaussianRational>> pivot_grads;
    for (size_t p : pivots) {
        std::vector<GaussianRational> grad(n_vars);
        for (size_t c = 0; c < n_vars; ++c) grad[c] = jac.at(p, c);
        pivot_grads.push_back(std::move(grad));
    }

    // kernel of the Jacobian: the 4 tangent directions
    auto kernel = nullspace(jac);
    if (kernel.size() != 4) return false;
    ExactMatrix k(n_vars, 4);
    for (size_t c = 0; c < 4; ++c)
        for (size_t rr = 0; rr < n_vars; ++rr) k.at(rr, c) = kernel[c][rr];

    // quadratic parts of the non-pivot generators, reduced against the pivot
    // generators so their linear parts cancel, then restricted to the kernel
    std::vector<ExactMatrix> restricted;
    for (size_t g = 0; g < system.size(); ++g) {
        if (std::find(pivots.begin(), pivots.end(), g) != pivots.end()) continue;
        std::vector<GaussianRational> grad(n_vars);
        for (size_t c = 0; c < n_vars; ++c) grad[c] = jac.at(g, c);
        auto coeffs = solve_columns(pivot_grads, grad);
        if (!coeffs) return false;
        Polynomial reduced = quadratic[g];
        for (size_t p = 0; p < pivots.size(); ++p)
            reduced -= (*coeffs)[p] * quadratic[pivots[p]];
        ExactMatrix gram = reduced.is_zero() ? ExactMatrix(n_vars, n_vars) : gram_matrix(reduced);
        ExactMatrix res(4, 4);
        for (size_t a = 0; a < 4; ++a)
            for (size_t b = 0; b < 4; ++b) {
                GaussianRational acc(0);
                for (size_t s = 0; s < n_vars; ++s)
                    for (size_t t = 0; t < n_vars; ++t)
                        acc += k.at(s, a) * gram.at(s, t) * k.at(t, b);
                res.at(a, b) = acc;
            }
        restricted.push_back(std::move(res));
    }

    // the restricted quadratic forms must span exactly one direction
    ExactMatrix span(restricted.size(), 10);
    for (size_t g = 0; g < restricted.size(); ++g) {
        size_t col = 0;
        for (size_t a = 0; a < 4; ++a)
            for (size_t b = a; b < 4; ++b) span.at(g, col++) = restricted[g].at(a, b);
    }
    if (rank(span) != 1) return false;

    for (const ExactMatrix& form : restricted)
        for (size_t a = 0; a < 4; ++a)
            for (size_t b = 0; b < 4; ++b)
                if (!form.at(a, b).is_zero()) return rank(form) == 4;
    return false;
}

std::array<Polynomial, 9> FamilyModel::mu_chart_generators() const {
    const VarSetPtr mu = mu_universe();
    std::array<Polynomial, 9> out{Polynomial(mu), Polynomial(mu), Polynomial(mu),
                                  Polynomial(mu), Polynomial(mu), Polynomial(mu),
                                  Polynomial(mu), Polynomial(mu), Polynomial(mu)};
    // l = 1/m; the fiber coordinates x1..x6 rescale by m^2 and the whole
    // relation clears to polynomial form after multiplying by m^4
    for (int g = 0; g < 9; ++g) {
        Polynomial rewritten(mu);
        for (const auto& [e, c] : generators_[g].terms()) {
            unsigned l_deg = e[0];
            unsigned big = 0;
            for (size_t pos = 2; pos < e.size(); ++pos) big += e[pos];
            int m_deg = 4 - static_cast<int>(l_deg) - 2 * static_cast<int>(big);
            if (m_deg < 0) throw std::logic_error("generator exceeds the expected twist");
            Exponents moved(e.size());
            moved[0] = static_cast<unsigned>(m_deg);
            for (size_t pos = 1; pos < e.size(); ++pos) moved[pos] = e[pos];
            Polynomial term(mu);
            term.add_term(moved, c);
            rewritten += term;
        }
        out[g] = rewritten;
    }
    return out;
}

std::vector<Polynomial> quadric_system_from_values(const GaussianRational& a,
                                                   const GaussianRational& b,
                                                   const GaussianRational& c,
                                                   const GaussianRational& d) {
    const VarSetPtr u = chart_universe();
    auto x = [&](int i) { return Polynomial::variable(u, "x" + std::to_string(i)); };
    auto k = [&](const GaussianRational& v) { return Polynomial::constant(u, v); };
    return {
        x(1) * x(2) - k(a) * x(0) * x(0),
        x(3) * x(4) - k(b) * x(0) * x(0),
        x(5) * x(6) - k(c) * x(0) * x(0),
        k(a) * x(3) * x(5) - k(d) * x(0) * x(2),
        k(b) * x(1) * x(5) - k(d) * x(0) * x(4),
        k(c) * x(1) * x(3) - k(d) * x(0) * x(6),
        k(d) * x(4) * x(6) - k(b * c) * x(0) * x(1),
        k(d) * x(2) * x(6) - k(a * c) * x(0) * x(3),
        k(d) * x(2) * x(4) - k(a * b) * x(0) * x(5),
    };
}

std::vector<Polynomial> normal_quadric_system_from_values(const GaussianRational& a,
                                                          const GaussianRational& b,
                                                          const GaussianRational& c,
                                                          const GaussianRational& d) {
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero())
        throw std::invalid_argument("normal form needs abcd != 0");
    const VarSetPtr u = chart_universe();
    auto x = [&](int i) { return Polynomial::variable(u, "x" + std::to_string(i)); };
    auto k = [&](const GaussianRational& v) { return Polynomial::constant(u, v); };
    return {
        x(1) * x(2) - k(a) * x(0) * x(0),
        x(3) * x(4) - k(b) * x(0) * x(0),
        x(5) * x(6) - k(c) * x(0) * x(0),
        x(3) * x(5) - k(d / a) * x(0) * x(2),
        x(5) * x(1) - k(d / b) * x(0) * x(4),
        x(1) * x(3) - k(d / c) * x(0) * x(6),
        x(4) * x(6) - k(b * c / d) * x(0) * x(1),
        x(2) * x(6) - k(a * c / d) * x(0) * x(3),
        x(2) * x(4) - k(a * b / d) * x(0) * x(5),
    };
}

std::optional<GaussianRational> norm_sqrt(const Rational& value) {
    if (value < 0) return std::nullopt;
    if (value == 0) return GaussianRational(0);
    Rational root;
    if (rational_sqrt(value, root)) return GaussianRational(root);
    // small two-squares search: |m/k + (n/k) i|^2 = value
    const BigInt p = numerator(value), q = denominator(value);
    for (BigInt t = 1; t <= 8; ++t) {
        BigInt k = q * t;
        BigInt target = p * q * t * t;  // m^2 + n^2 = value * k^2
        if (target > 1000000) break;
        for (BigInt m = 0; m * m <= target; ++m) {
            BigInt rest = target - m * m;
            BigInt n = sqrt(rest);
            if (n * n == rest) return GaussianRational(Rational(m, k), Rational(n, k));
        }
    }
    return std::nullopt;
}

RealPointResult real_point_exists(const GaussianRational& a, const GaussianRational& b,
                                  const GaussianRational& c, const GaussianRational& d) {
    if (!a.is_real() || !b.is_real() || !c.is_real())
        throw std::invalid_argument("a, b, c must be real");
    if (a.re() * b.re() * c.re() != d.norm())
        throw std::invalid_argument("inputs must satisfy abc = |d|^2");

    RealPointResult out;
    out.exists = a.re() >= 0 && b.re() >= 0 && c.re() >= 0;
    if (!out.exists) return out;

    // fixed points of the real structure have x0 real, x2 = conj(x1),
    // x4 = conj(x3), x6 = conj(x5); moduli are forced and phases multiply
    // to the phase of d
    std::array<GaussianRational, 7> w;
    w[0] = GaussianRational(1);
    bool have_witness = true;
    if (!d.is_zero()) {
        auto w1 = norm_sqrt(a.re()), w2 = norm_sqrt(b.re());
        if (w1 && w2 && !w1->is_zero() && !w2->is_zero()) {
            GaussianRational w3 = d / (*w1 * *w2);
            w[1] = *w1;
            w[2] = w1->conj();
            w[3] = *w2;
            w[4] = w2->conj();
            w[5] = w3;
            w[6] = w3.conj();
        } else {
            have_witness = false;
        }
    } else {
        // some of a, b, c vanish; the corresponding pair sits at the origin
        // and the remaining pairs decouple
        std::array<GaussianRational, 3> moduli{a, b, c};
        for (int pair = 0; pair < 3; ++pair) {
            if (moduli[pair].is_zero()) continue;
            auto s = norm_sqrt(moduli[pair].re());
            if (!s) {
                have_witness = false;
                break;
            }
            w[1 + 2 * pair] = *s;
            w[2 + 2 * pair] = s->conj();
        }
    }
    if (have_witness) {
        std::map<std::string, GaussianRational> at;
        for (int coord = 0; coord < 7; ++coord) at["x" + std::to_string(coord)] = w[coord];
        for (const Polynomial& g : quadric_system_from_values(a, b, c, d))
            if (!g.eval(at).is_zero())
                throw std::logic_error("constructed witness fails the relations");
        out.witness = w;
    }
    return out;
}

}  // namespace twistor::family
