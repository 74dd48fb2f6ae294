#pragma once

#include "twistor/exact_matrix.hpp"
#include "twistor/labels.hpp"
#include "twistor/polygon.hpp"
#include "twistor/polynomial.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>

namespace twistor::family {

/// Variable universes shared across the family computations.
VarSetPtr lambda_universe();  // {l}
VarSetPtr family_universe();  // {l, x0..x6}
VarSetPtr chart_universe();   // {x0..x6}
VarSetPtr mu_universe();      // {m, x0..x6}

/// The six real parameters of the construction, strictly increasing.
class ConformalInvariant {
public:
    explicit ConformalInvariant(std::array<Rational, 6> lambdas);
    static ConformalInvariant from_file(const std::filesystem::path& path);

    const Rational& lambda(int i) const { return lambdas_.at(i - 1); }  // 1-based
    const std::array<Rational, 6>& lambdas() const { return lambdas_; }

private:
    std::array<Rational, 6> lambdas_;
};

/// a, b, c, d as univariate polynomials in l.  a and b carry leading
/// coefficient -1 and c, d leading coefficient +1; abc = d^2 identically.
struct CoefficientFunctions {
    Polynomial a, b, c, d;
};

CoefficientFunctions coefficient_functions(const ConformalInvariant& ci);

enum class FiberKind { Smooth, Reducible };

struct FiberClass {
    FiberKind kind;
    int index = 0;  // 1..6 when reducible
};

/// Coordinate i equals coeff * s^exp[0] * u^exp[1] on the parametrized patch.
struct MonomialParam {
    GaussianRational coeff;
    std::array<int, 2> exp{0, 0};
};

/// Monomial parametrization of a fiber or fiber component, together with its
/// exponent polygon.  Absent coordinates vanish identically.
struct FiberComponentParam {
    std::array<std::optional<MonomialParam>, 7> coords;
    std::vector<int> zero_coords;
    LatticePolygon polygon{std::vector<LatticePoint>{{0, 0, 0}}};
};

/// One-parameter subgroup (co-character) generating the subtorus that fixes a
/// conic pointwise; normalized so the first nonzero entry is positive.
struct TorusSubgroup {
    long long p = 0, q = 0;
    friend bool operator==(const TorusSubgroup& a, const TorusSubgroup& b) {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator!=(const TorusSubgroup& a, const TorusSubgroup& b) { return !(a == b); }
};

struct ProjectivePoint {
    GaussianRational lambda;
    std::array<GaussianRational, 7> x;
    std::string str() const;
};

enum class HalfSide { Plus, Minus, Shared };

/// Division of the twelve-curve cycle between the two components of a
/// reducible fiber.  `incidence` is the raw component-membership computation,
/// in which the two labels contracted to the nodes sit on both components;
/// `sides` resolves those two labels so each half is an arc of six.
struct HalvesAssignment {
    std::map<CurveLabel, HalfSide> sides;
    std::map<CurveLabel, HalfSide> incidence;
    std::array<CurveLabel, 2> odp_labels{CurveLabel::cycle(0, false), CurveLabel::cycle(0, false)};
    std::array<int, 2> plus_zero_coords{0, 0};
    std::array<int, 2> minus_zero_coords{0, 0};
};

struct RealPointResult {
    bool exists = false;
    std::optional<std::array<GaussianRational, 7>> witness;
};

/// The twelve cycle labels in cyclic order C1..C6, C1*..C6*.
const std::vector<CurveLabel>& cycle_order();

/// Fixed-point label carried by the coordinate vertex x_coord of the generic
/// fiber polygon (x1 -> C2, x6 -> C4, x3 -> C6 and conjugates).
CurveLabel vertex_label(int coord);
int vertex_coord(const CurveLabel& label);

/// Cycle-curve label of the generic fiber boundary curve on which exactly the
/// coordinates a and b survive.
CurveLabel edge_label(int coord_a, int coord_b);

std::array<int, 2> coordinate_weight(int coord);  // torus weight of x_coord

/// Common torus weight of all monomials of a weight-homogeneous polynomial in
/// the family universe.  Throws if the weights disagree.
std::array<int, 2> generator_weight(const Polynomial& g);

/// The nine-generator model of the anticanonical family built from six
/// conformal invariants, with its torus weights and real structure.
class FamilyModel {
public:
    explicit FamilyModel(ConformalInvariant ci);

    const ConformalInvariant& invariants() const { return ci_; }
    const CoefficientFunctions& coefficients() const { return coeffs_; }
    const std::array<Polynomial, 9>& generators() const { return generators_; }
    const std::array<std::array<int, 2>, 9>& weights() const { return weights_; }

    /// Index permutation induced by the real structure on the generator set:
    /// fixes g1..g3 and swaps g4<->g7, g5<->g8, g6<->g9 (0-based internally).
    const std::array<int, 9>& involution_permutation() const { return involution_; }

    /// Coordinate swap x1<->x2, x3<->x4, x5<->x6 with coefficient conjugation.
    Polynomial real_structure(const Polynomial& g) const;

    FiberClass classify_fiber(const GaussianRational& lambda0) const;

    /// Generators with l bound to lambda0 (universe unchanged).
    std::vector<Polynomial> specialized_generators(const GaussianRational& lambda0) const;

    FiberComponentParam generic_fiber_parametrization(const Rational& lambda0) const;

    /// The two cubic components over lambda_i, the one containing C6 first.
    std::pair<FiberComponentParam, FiberComponentParam> fiber_components(int i) const;

    FiberComponentParam intersection_conic(int i) const;

    /// Non-x0 coordinates of the conic plane over lambda_i; unbarred first.
    std::array<int, 2> conic_plane(int i) const;
    GaussianRational conic_coefficient(int i) const;
    TorusSubgroup conic_isotropy(int i) const;

    bool conic_has_real_points(int i) const;

    std::vector<ProjectivePoint> singular_candidates() const;

    /// Node test: in the affine chart of the point's leading coordinate the
    /// Jacobian of the system must have rank exactly 3, and the quadratic
    /// truncations restricted to its kernel must span one rank-4 form.
    bool verify_odp(const ProjectivePoint& point) const;

    HalvesAssignment halves_assignment(int i) const;

    /// Generators rewritten in the chart at l = infinity via l = 1/m, cleared
    /// to polynomial form.  Degenerations all sit in the finite chart, so the
    /// m-chart only needs a smoothness check near m = 0.
    std::array<Polynomial, 9> mu_chart_generators() const;

    /// A fixed smooth-fiber representative (lambda_1 - 1).
    Rational representative_smooth_lambda() const;

private:
    ConformalInvariant ci_;
    CoefficientFunctions coeffs_;
    std::array<Polynomial, 9> generators_;
    std::array<std::array<int, 2>, 9> weights_;
    std::array<int, 9> involution_;

    // reducible-fiber data is pure in the invariants; memoized per fiber
    struct FiberData {
        FiberComponentParam plus, minus;
        HalvesAssignment halves;
    };
    mutable std::mutex cache_mutex_;
    mutable std::array<std::shared_ptr<const FiberData>, 6> fiber_cache_;

    std::optional<FiberComponentParam> solve_component(int i, int zero_a, int zero_b) const;
    std::shared_ptr<const FiberData> fiber_data(int i) const;
};

/// True iff substituting the parametrization into every polynomial of the
/// system (l already bound) yields the zero Laurent polynomial.
bool annihilates(const std::vector<Polynomial>& system, const FiberComponentParam& param);

/// Point of the parametrized patch at concrete torus parameters (s, u).
ProjectivePoint param_point(const FiberComponentParam& param, const GaussianRational& s,
                            const GaussianRational& u, const GaussianRational& lambda);

/// The nine quadratic relations for constant coefficient values a, b, c, d in
/// the chart universe {x0..x6}, in the multiplied-through form that stays
/// valid when some constants vanish.
std::vector<Polynomial> quadric_system_from_values(const GaussianRational& a,
                                                   const GaussianRational& b,
                                                   const GaussianRational& c,
                                                   const GaussianRational& d);

/// Same relations in the cleared normal form x_j x_k - (quotient) x_0 x_m;
/// requires abcd != 0.
std::vector<Polynomial> normal_quadric_system_from_values(const GaussianRational& a,
                                                          const GaussianRational& b,
                                                          const GaussianRational& c,
                                                          const GaussianRational& d);

/// Decides existence of a point fixed by the real structure on the quadric
/// system with the given constants (requires a, b, c real and abc = |d|^2).
/// When a witness over Q(i) is constructible it is returned and verified.
RealPointResult real_point_exists(const GaussianRational& a, const GaussianRational& b,
                                  const GaussianRational& c, const GaussianRational& d);

/// Solves |w|^2 = value over Q(i) when possible (exact square or a small
/// two-squares decomposition).
std::optional<GaussianRational> norm_sqrt(const Rational& value);

}  // namespace twistor::family
