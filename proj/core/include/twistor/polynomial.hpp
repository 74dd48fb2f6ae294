#pragma once

#include "twistor/gaussian.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twistor {

/// Ordered, immutable variable universe.  All polynomials taking part in one
/// computation must share an equal universe; mixing is a caller bug.
class VarSet {
public:
    explicit VarSet(std::vector<std::string> names);

    size_t size() const { return names_.size(); }
    const std::string& name(size_t idx) const { return names_.at(idx); }
    std::optional<size_t> index(const std::string& name) const;
    size_t index_or_throw(const std::string& name) const;

    friend bool operator==(const VarSet& a, const VarSet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_vars(std::vector<std::string> names);

using Exponents = std::vector<unsigned>;

// Graded lexicographic: total degree first, then exponent of the earliest
// variable.  Fixing this order makes polynomial equality structural.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class Polynomial {
public:
    using TermMap = std::map<Exponents, GaussianRational, GradedLexLess>;

    explicit Polynomial(VarSetPtr vars);

    static Polynomial constant(VarSetPtr vars, GaussianRational value);
    static Polynomial variable(VarSetPtr vars, const std::string& name);

    const VarSetPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    // -1 for the zero polynomial.
    int total_degree() const;

    void add_term(const Exponents& exps, const GaussianRational& coeff);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const GaussianRational& s, const Polynomial& p);
    Polynomial pow(unsigned k) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Exact evaluation; every variable of the universe must be bound.
    GaussianRational eval(const std::map<std::string, GaussianRational>& bindings) const;

    /// Substitutes a constant for one variable; universe unchanged.
    Polynomial bind(const std::string& var, const GaussianRational& value) const;

    Polynomial derivative(const std::string& var) const;

    Polynomial conj_coefficients() const;

    /// Substitution x_j -> x_{perm[j]} (perm a permutation of variable
    /// positions), optionally conjugating coefficients.
    Polynomial permute_variables(const std::vector<size_t>& perm, bool conjugate) const;

    /// Taylor shift x_j -> x_j + offset[j].
    Polynomial shift(const std::vector<GaussianRational>& offset) const;

    Polynomial homogeneous_part(unsigned degree) const;

    /// Re-expresses the polynomial in another universe matched by variable
    /// name.  Variables missing from the target must not occur.
    Polynomial project(const VarSetPtr& target) const;

    std::string str() const;
    static Polynomial parse(VarSetPtr vars, const std::string& text);

private:
    VarSetPtr vars_;
    TermMap terms_;
};

void require_same_universe(const Polynomial& a, const Polynomial& b);

/// True iff target == sum of multiplier_k * generators[index_k], exactly.
/// A sound one-sided ideal-membership certificate check; false means the
/// certificate is invalid, not that the target is a non-member.
bool check_certificate(const Polynomial& target,
                       const std::vector<std::pair<Polynomial, size_t>>& combination,
                       const std::vector<Polynomial>& generators);

}  // namespace twistor
