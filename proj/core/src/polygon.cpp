#include "twistor/polygon.hpp"

#include <algorithm>

namespace twistor {

namespace {

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool on_segment(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

LatticePolygon::LatticePolygon(std::vector<LatticePoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("empty point set");
}

std::vector<LatticePoint> LatticePolygon::hull() const {
    std::vector<LatticePoint> pts = points_;
    std::sort(pts.begin(), pts.end(), [](const LatticePoint& a, const LatticePoint& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n < 3) throw std::invalid_argument("degenerate hull: fewer than 3 distinct points");
    // monotone chain, strict turns only, so collinear boundary points drop out
    std::vector<LatticePoint> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() < 3) throw std::invalid_argument("degenerate hull: points are collinear");
    return h;
}

long long LatticePolygon::degree() const {
    std::vector<LatticePoint> h = hull();
    long long twice_area = 0;
    for (size_t i = 0; i < h.size(); ++i) {
        const LatticePoint& a = h[i];
        const LatticePoint& b = h[(i + 1) % h.size()];
        twice_area += a.x * b.y - b.x * a.y;
    }
    return twice_area;
}

std::vector<PolygonEdge> LatticePolygon::edges() const {
    std::vector<LatticePoint> h = hull();
    const size_t n = h.size();
    // boundary points: members of some edge segment
    std::vector<const LatticePoint*> boundary;
    for (const LatticePoint& p : points_) {
        for (size_t i = 0; i < n; ++i) {
            if (on_segment(p, h[i], h[(i + 1) % n])) {
                boundary.push_back(&p);
                break;
            }
        }
    }
    std::vector<PolygonEdge> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        PolygonEdge e;
        e.from = h[i];
        e.to = h[(i + 1) % n];
        e.lattice_length = gcd_ll(e.to.x - e.from.x, e.to.y - e.from.y);
        for (const LatticePoint* p : boundary) {
            if (p->label < 0) continue;
            if (on_segment(*p, e.from, e.to))
                e.on_labels.push_back(p->label);
            else
                e.off_labels.push_back(p->label);
        }
        std::sort(e.on_labels.begin(), e.on_labels.end());
        std::sort(e.off_labels.begin(), e.off_labels.end());
        out.push_back(std::move(e));
    }
    return out;
}

Fan2D LatticePolygon::normal_fan() const {
    std::vector<LatticePoint> h = hull();
    std::vector<RayVec> rays;
    rays.reserve(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
        const LatticePoint& a = h[i];
        const LatticePoint& b = h[(i + 1) % h.size()];
        long long dx = b.x - a.x, dy = b.y - a.y;
        long long g = gcd_ll(dx, dy);
        rays.push_back({dy / g, -dx / g});
    }
    return Fan2D(std::move(rays));
}

}  // namespace twistor
