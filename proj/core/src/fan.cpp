#include "twistor/fan.hpp"

#include <numeric>
#include <sstream>

namespace twistor {

namespace {

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

}  // namespace

Fan2D::Fan2D(std::vector<RayVec> rays) : rays_(std::move(rays)) {
    const size_t n = rays_.size();
    if (n < 3) throw std::invalid_argument("fan needs at least 3 rays");
    for (size_t i = 0; i < n; ++i) {
        const RayVec& v = rays_[i];
        if (v.x == 0 && v.y == 0) throw std::invalid_argument("zero ray at index " + std::to_string(i));
        if (gcd_ll(v.x, v.y) != 1)
            throw std::invalid_argument("non-primitive ray at index " + std::to_string(i));
        long long d = det2(v, rays_[(i + 1) % n]);
        if (d != 1)
            throw std::invalid_argument("non-smooth cone between rays " + std::to_string(i) +
                                        " and " + std::to_string((i + 1) % n) +
                                        " (det = " + std::to_string(d) + ")");
    }
    // winding-one completeness: sum a_i = 12 - 3n holds exactly for a single
    // full revolution and fails for every other winding
    long long total = 0;
    for (size_t i = 0; i < n; ++i) total += self_intersection(i);
    if (total != 12 - 3 * static_cast<long long>(n))
        throw std::invalid_argument("ray cycle does not wind the plane exactly once");
}

long long Fan2D::self_intersection(size_t i) const {
    const size_t n = rays_.size();
    const RayVec& prev = rays_[(i + n - 1) % n];
    const RayVec& cur = rays_.at(i);
    const RayVec& next = rays_[(i + 1) % n];
    // v_{i-1} + v_{i+1} = -a_i v_i; v_i is primitive so a_i is integral
    long long sx = prev.x + next.x, sy = prev.y + next.y;
    long long a;
    if (cur.x != 0) {
        if (sx % cur.x != 0) throw std::logic_error("self-intersection not integral");
        a = -sx / cur.x;
    } else {
        if (sy % cur.y != 0) throw std::logic_error("self-intersection not integral");
        a = -sy / cur.y;
    }
    if (-a * cur.x != sx || -a * cur.y != sy)
        throw std::logic_error("neighbors of ray " + std::to_string(i) + " not collinear with it");
    return a;
}

std::string Fan2D::str() const {
    std::ostringstream out;
    for (const RayVec& v : rays_) out << v.x << " " << v.y << "\n";
    return out.str();
}

Fan2D Fan2D::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<RayVec> rays;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        RayVec v;
        if (ls >> v.x >> v.y) rays.push_back(v);
    }
    return Fan2D(std::move(rays));
}

long long SelfIntCycle::sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0ll);
}

std::string SelfIntCycle::str() const {
    std::ostringstream out;
    for (size_t i = 0; i < values_.size(); ++i) {
        if (i) out << ",";
        out << values_[i];
    }
    return out.str();
}

SelfIntCycle SelfIntCycle::parse(const std::string& text) {
    std::vector<long long> values;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        size_t at = item.find_first_not_of(" \t\r\n");
        if (at == std::string::npos) throw std::invalid_argument("empty cycle entry");
        values.push_back(std::stoll(item.substr(at)));
    }
    return SelfIntCycle(std::move(values));
}

bool cycles_equal_up_to_symmetry(const SelfIntCycle& a, const SelfIntCycle& b) {
    if (a.size() != b.size()) return false;
    const size_t n = a.size();
    for (int flip = 0; flip < 2; ++flip) {
        for (size_t shift = 0; shift < n; ++shift) {
            bool match = true;
            for (size_t i = 0; i < n && match; ++i) {
                size_t j = flip ? (shift + n - i) % n : (shift + i) % n;
                match = a.at(i) == b.at(j);
            }
            if (match) return true;
        }
    }
    return false;
}

SelfIntCycle selfint_from_fan(const Fan2D& fan) {
    std::vector<long long> values;
    values.reserve(fan.size());
    for (size_t i = 0; i < fan.size(); ++i) values.push_back(fan.self_intersection(i));
    return SelfIntCycle(std::move(values));
}

Fan2D fan_from_selfint(const SelfIntCycle& cycle) {
    const size_t n = cycle.size();
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 entries");
    if (cycle.sum() != 12 - 3 * static_cast<long long>(n))
        throw std::invalid_argument("cycle sum " + std::to_string(cycle.sum()) +
                                    " != 12 - 3n; no smooth complete fan exists");
    std::vector<RayVec> rays = {{1, 0}, {0, 1}};
    for (size_t i = 1; i + 1 < n; ++i) {
        const RayVec& prev = rays[i - 1];
        const RayVec& cur = rays[i];
        rays.push_back({-cycle.at(i) * cur.x - prev.x, -cycle.at(i) * cur.y - prev.y});
    }
    // closure: the recurrence at index n-1 must reproduce v_1, and at index 0
    // it must reproduce v_2
    RayVec wrap1{-cycle.at(n - 1) * rays[n - 1].x - rays[n - 2].x,
                 -cycle.at(n - 1) * rays[n - 1].y - rays[n - 2].y};
    if (wrap1 != rays[0])
        throw std::invalid_argument("cycle recurrence fails to close at index " +
                                    std::to_string(n - 1));
    RayVec wrap2{-cycle.at(0) * rays[0].x - rays[n - 1].x,
                 -cycle.at(0) * rays[0].y - rays[n - 1].y};
    if (wrap2 != rays[1])
        throw std::invalid_argument("cycle recurrence fails to close at index 0");
    return Fan2D(std::move(rays));
}

Fan2D blow_up_corner(const Fan2D& fan, size_t corner) {
    const size_t n = fan.size();
    if (corner >= n) throw std::invalid_argument("corner index out of range");
    std::vector<RayVec> rays;
    rays.reserve(n + 1);
    for (size_t i = 0; i <= corner; ++i) rays.push_back(fan.ray(i));
    const RayVec& a = fan.ray(corner);
    const RayVec& b = fan.ray((corner + 1) % n);
    rays.push_back({a.x + b.x, a.y + b.y});
    for (size_t i = corner + 1; i < n; ++i) rays.push_back(fan.ray(i));
    return Fan2D(std::move(rays));
}

Fan2D blow_down_ray(const Fan2D& fan, size_t i) {
    if (i >= fan.size()) throw std::invalid_argument("ray index out of range");
    if (fan.size() == 3) throw std::invalid_argument("cannot contract: fan has only 3 rays");
    if (fan.self_intersection(i) != -1)
        throw std::invalid_argument("cannot contract ray " + std::to_string(i) +
                                    ": self-intersection is " +
                                    std::to_string(fan.self_intersection(i)) + ", not -1");
    std::vector<RayVec> rays;
    rays.reserve(fan.size() - 1);
    for (size_t k = 0; k < fan.size(); ++k)
        if (k != i) rays.push_back(fan.ray(k));
    return Fan2D(std::move(rays));
}

}  // namespace twistor
