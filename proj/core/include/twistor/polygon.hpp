#pragma once

#include "twistor/fan.hpp"

#include <vector>

namespace twistor {

struct LatticePoint {
    long long x = 0, y = 0;
    int label = -1;  // coordinate index carried by monomial parametrizations
    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.x == b.x && a.y == b.y;
    }
};

struct PolygonEdge {
    LatticePoint from, to;       // hull vertices, counterclockwise
    long long lattice_length;    // number of primitive steps along the edge
    std::vector<int> on_labels;  // labels of boundary points lying on the edge
    std::vector<int> off_labels; // labels of boundary points not on the edge
};

/// Finite labeled point set in Z^2, the monomial exponents of a projective
/// parametrization.  Hull-based queries require a 2-dimensional hull.
class LatticePolygon {
public:
    explicit LatticePolygon(std::vector<LatticePoint> points);

    const std::vector<LatticePoint>& points() const { return points_; }

    /// Hull vertices in counterclockwise order.
    std::vector<LatticePoint> hull() const;

    /// Twice the Euclidean hull area = normalized volume = degree of the
    /// associated projective embedding.  Throws on degenerate hulls.
    long long degree() const;

    /// Per hull edge: lattice length and the labels of boundary points on and
    /// off the edge.  Interior points vanish on every boundary curve and are
    /// excluded.
    std::vector<PolygonEdge> edges() const;

    /// Inner normal fan; ray k is the outward primitive normal of edge k, so
    /// boundary curves of the toric surface correspond to edges index-wise.
    Fan2D normal_fan() const;

private:
    std::vector<LatticePoint> points_;
};

}  // namespace twistor
