#include "twistor/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twistor {

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
}

std::optional<size_t> VarSet::index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

size_t VarSet::index_or_throw(const std::string& name) const {
    auto idx = index(name);
    if (!idx) throw std::invalid_argument("unknown variable '" + name + "'");
    return *idx;
}

VarSetPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarSet>(std::move(names));
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    // same degree: lexicographically smaller exponent vector is "less"
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(VarSetPtr vars) : vars_(std::move(vars)) {
    if (!vars_) throw std::invalid_argument("null variable universe");
}

Polynomial Polynomial::constant(VarSetPtr vars, GaussianRational value) {
    Polynomial p(std::move(vars));
    if (!value.is_zero()) p.terms_.emplace(Exponents(p.vars_->size(), 0), std::move(value));
    return p;
}

Polynomial Polynomial::variable(VarSetPtr vars, const std::string& name) {
    Polynomial p(std::move(vars));
    Exponents e(p.vars_->size(), 0);
    e[p.vars_->index_or_throw(name)] = 1;
    p.terms_.emplace(std::move(e), GaussianRational(1));
    return p;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    const Exponents& top = terms_.rbegin()->first;
    return static_cast<int>(std::accumulate(top.begin(), top.end(), 0u));
}

void Polynomial::add_term(const Exponents& exps, const GaussianRational& coeff) {
    if (exps.size() != vars_->size()) throw std::invalid_argument("exponent vector size mismatch");
    if (coeff.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void require_same_universe(const Polynomial& a, const Polynomial& b) {
    if (a.vars() == b.vars()) return;
    if (*a.vars() == *b.vars()) return;
    throw std::invalid_argument("polynomial variable universes differ");
}

Polynomial Polynomial::operator-() const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_universe(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_universe(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_universe(a, b);
    Polynomial out(a.vars_);
    Exponents sum(a.vars_->size());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
            out.add_term(sum, ca * cb);
        }
    }
    return out;
}

Polynomial operator*(const GaussianRational& s, const Polynomial& p) {
    Polynomial out(p.vars_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, s * c);
    return out;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial acc = Polynomial::constant(vars_, GaussianRational(1));
    Polynomial base = *this;
    while (k) {
        if (k & 1u) acc = acc * base;
        base = base * base;
        k >>= 1u;
    }
    return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.vars_ == b.vars_) && !(*a.vars_ == *b.vars_)) return false;
    return a.terms_ == b.terms_;
}

GaussianRational Polynomial::eval(const std::map<std::string, GaussianRational>& bindings) const {
    std::vector<GaussianRational> values(vars_->size());
    for (size_t i = 0; i < vars_->size(); ++i) {
        auto it = bindings.find(vars_->name(i));
        if (it == bindings.end())
            throw std::invalid_argument("unbound variable '" + vars_->name(i) + "'");
        values[i] = it->second;
    }
    GaussianRational acc(0);
    for (const auto& [e, c] : terms_) {
        GaussianRational term = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) term *= values[i].pow(e[i]);
        acc += term;
    }
    return acc;
}

Polynomial Polynomial::bind(const std::string& var, const GaussianRational& value) const {
    size_t idx = vars_->index_or_throw(var);
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        Exponents reduced = e;
        reduced[idx] = 0;
        out.add_term(reduced, c * value.pow(e[idx]));
    }
    return out;
}

Polynomial Polynomial::derivative(const std::string& var) const {
    size_t idx = vars_->index_or_throw(var);
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents d = e;
        d[idx] -= 1;
        out.add_term(d, GaussianRational(Rational(e[idx])) * c);
    }
    return out;
}

Polynomial Polynomial::conj_coefficients() const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
    return out;
}

Polynomial Polynomial::permute_variables(const std::vector<size_t>& perm, bool conjugate) const {
    if (perm.size() != vars_->size()) throw std::invalid_argument("permutation size mismatch");
    Polynomial out(vars_);
    Exponents moved(vars_->size());
    for (const auto& [e, c] : terms_) {
        std::fill(moved.begin(), moved.end(), 0u);
        for (size_t i = 0; i < e.size(); ++i) moved[perm[i]] += e[i];
        out.add_term(moved, conjugate ? c.conj() : c);
    }
    return out;
}

Polynomial Polynomial::shift(const std::vector<GaussianRational>& offset) const {
    if (offset.size() != vars_->size()) throw std::invalid_argument("offset size mismatch");
    // precompute (x_i + p_i)^k by repeated multiplication, degrees are small
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        Polynomial term = Polynomial::constant(vars_, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            Polynomial base = Polynomial::variable(vars_, vars_->name(i)) +
                              Polynomial::constant(vars_, offset[i]);
            term = term * base.pow(e[i]);
        }
        out += term;
    }
    return out;
}

Polynomial Polynomial::homogeneous_part(unsigned degree) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0u) == degree) out.terms_.emplace(e, c);
    return out;
}

Polynomial Polynomial::project(const VarSetPtr& target) const {
    std::vector<std::optional<size_t>> where(vars_->size());
    for (size_t i = 0; i < vars_->size(); ++i) where[i] = target->index(vars_->name(i));
    Polynomial out(target);
    for (const auto& [e, c] : terms_) {
        Exponents moved(target->size(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!where[i])
                throw std::invalid_argument("variable '" + vars_->name(i) +
                                            "' occurs but is absent from the target universe");
            moved[*where[i]] = e[i];
        }
        out.add_term(moved, c);
    }
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // canonical order: descending graded lex
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) out << " + ";
        first = false;
        out << it->second.str();
        const Exponents& e = it->first;
        bool any = false;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) any = true;
        if (!any) continue;
        out << " *";
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) out << " " << vars_->name(i) << "^" << e[i];
    }
    return out.str();
}

namespace {

std::vector<std::string> split_on(const std::string& text, const std::string& sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + sep.size();
    }
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Polynomial Polynomial::parse(VarSetPtr vars, const std::string& text) {
    Polynomial out(vars);
    std::string body = strip(text);
    if (body.empty() || body == "0") return out;
    for (const std::string& raw_term : split_on(body, " + ")) {
        std::string term = strip(raw_term);
        if (term.empty()) throw std::invalid_argument("empty term in polynomial literal");
        auto star = term.find(" * ");
        std::string coef_text = star == std::string::npos ? term : term.substr(0, star);
        GaussianRational coeff = GaussianRational::parse(strip(coef_text));
        Exponents e(vars->size(), 0);
        if (star != std::string::npos) {
            std::istringstream factors(term.substr(star + 3));
            std::string factor;
            while (factors >> factor) {
                auto caret = factor.find('^');
                if (caret == std::string::npos)
                    throw std::invalid_argument("factor without exponent: '" + factor + "'");
                size_t idx = vars->index_or_throw(factor.substr(0, caret));
                e[idx] += static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
            }
        }
        out.add_term(e, coeff);
    }
    return out;
}

bool check_certificate(const Polynomial& target,
                       const std::vector<std::pair<Polynomial, size_t>>& combination,
                       const std::vector<Polynomial>& generators) {
    Polynomial acc(target.vars());
    for (const auto& [multiplier, index] : combination) {
        if (index >= generators.size()) throw std::invalid_argument("generator index out of range");
        acc += multiplier * generators[index];
    }
    return acc == target;
}

}  // namespace twistor
