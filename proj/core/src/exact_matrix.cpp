#include "twistor/exact_matrix.hpp"

#include <numeric>

namespace twistor {

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

ExactMatrix ExactMatrix::identity(size_t n) {
    ExactMatrix out(n, n);
    for (size_t i = 0; i < n; ++i) out.at(i, i) = GaussianRational(1);
    return out;
}

namespace {

BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0) return b;
    if (b == 0) return a;
    return a / gcd(a, b) * b;
}

// Scales each row by the lcm of its denominators; rank is unchanged and all
// entries become Gaussian integers, which keeps Bareiss divisions exact.
ExactMatrix clear_denominators(const ExactMatrix& m) {
    ExactMatrix out = m;
    for (size_t r = 0; r < m.rows(); ++r) {
        BigInt mult(1);
        for (size_t c = 0; c < m.cols(); ++c) {
            mult = lcm_big(mult, denominator(m.at(r, c).re()));
            mult = lcm_big(mult, denominator(m.at(r, c).im()));
        }
        GaussianRational scale{Rational(mult)};
        for (size_t c = 0; c < m.cols(); ++c) out.at(r, c) = out.at(r, c) * scale;
    }
    return out;
}

}  // namespace

int rank(const ExactMatrix& input) {
    ExactMatrix m = clear_denominators(input);
    const size_t rows = m.rows(), cols = m.cols();
    size_t row = 0;
    GaussianRational prev(1);
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pivot = row;
        while (pivot < rows && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != row)
            for (size_t c = 0; c < cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
        const GaussianRational p = m.at(row, col);
        for (size_t r = row + 1; r < rows; ++r) {
            for (size_t c = col + 1; c < cols; ++c)
                m.at(r, c) = (m.at(r, c) * p - m.at(r, col) * m.at(row, c)) / prev;
            m.at(r, col) = GaussianRational(0);
        }
        prev = p;
        ++row;
    }
    return static_cast<int>(row);
}

std::vector<std::vector<GaussianRational>> nullspace(const ExactMatrix& input) {
    ExactMatrix m = input;
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pivot = row;
        while (pivot < rows && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != row)
            for (size_t c = 0; c < cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
        GaussianRational inv = GaussianRational(1) / m.at(row, col);
        for (size_t c = col; c < cols; ++c) m.at(row, c) = m.at(row, c) * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            GaussianRational f = m.at(r, col);
            for (size_t c = col; c < cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<GaussianRational> v(cols);
        v[free_col] = GaussianRational(1);
        for (size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m.at(k, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

ExactMatrix jacobian_at(const std::vector<Polynomial>& system,
                        const std::map<std::string, GaussianRational>& point) {
    if (system.empty()) throw std::invalid_argument("empty system");
    const VarSetPtr& vars = system.front().vars();
    ExactMatrix out(system.size(), vars->size());
    for (size_t i = 0; i < system.size(); ++i) {
        require_same_universe(system[i], system.front());
        for (size_t j = 0; j < vars->size(); ++j)
            out.at(i, j) = system[i].derivative(vars->name(j)).eval(point);
    }
    return out;
}

ExactMatrix gram_matrix(const Polynomial& q) {
    const size_t n = q.vars()->size();
    ExactMatrix g(n, n);
    const GaussianRational half{Rational(1, 2)};
    for (const auto& [e, c] : q.terms()) {
        unsigned degree = std::accumulate(e.begin(), e.end(), 0u);
        if (degree != 2)
            throw std::invalid_argument("quadratic form expected, found a term of degree " +
                                        std::to_string(degree));
        size_t i = 0;
        while (e[i] == 0) ++i;
        if (e[i] == 2) {
            g.at(i, i) = c;
        } else {
            size_t j = i + 1;
            while (e[j] == 0) ++j;
            g.at(i, j) = half * c;
            g.at(j, i) = half * c;
        }
    }
    return g;
}

int quad_form_rank(const Polynomial& q) {
    if (q.is_zero()) return 0;
    return rank(gram_matrix(q));
}

}  // namespace twistor
