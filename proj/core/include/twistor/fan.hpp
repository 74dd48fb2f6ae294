#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistor {

struct RayVec {
    long long x = 0, y = 0;
    friend bool operator==(const RayVec& a, const RayVec& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const RayVec& a, const RayVec& b) { return !(a == b); }
};

inline long long det2(const RayVec& a, const RayVec& b) { return a.x * b.y - a.y * b.x; }

/// Complete smooth fan in Z^2, stored as its counterclockwise primitive ray
/// cycle.  Construction validates det(v_i, v_{i+1}) = 1 for all consecutive
/// pairs and sum(a_i) = 12 - 3n, which pins the winding number to one.
class Fan2D {
public:
    explicit Fan2D(std::vector<RayVec> rays);

    size_t size() const { return rays_.size(); }
    const RayVec& ray(size_t i) const { return rays_.at(i); }
    const std::vector<RayVec>& rays() const { return rays_; }

    // a_i defined by v_{i-1} + v_{i+1} = -a_i v_i
    long long self_intersection(size_t i) const;

    friend bool operator==(const Fan2D& a, const Fan2D& b) { return a.rays_ == b.rays_; }
    friend bool operator!=(const Fan2D& a, const Fan2D& b) { return !(a == b); }

    std::string str() const;
    static Fan2D parse(const std::string& text);

private:
    std::vector<RayVec> rays_;
};

class SelfIntCycle {
public:
    explicit SelfIntCycle(std::vector<long long> values) : values_(std::move(values)) {}

    size_t size() const { return values_.size(); }
    long long at(size_t i) const { return values_.at(i); }
    const std::vector<long long>& values() const { return values_; }
    long long sum() const;

    friend bool operator==(const SelfIntCycle& a, const SelfIntCycle& b) {
        return a.values_ == b.values_;
    }

    // comma-separated integers
    std::string str() const;
    static SelfIntCycle parse(const std::string& text);

private:
    std::vector<long long> values_;
};

/// Equality of cyclic integer sequences up to rotation and reflection,
/// the symmetries a lattice automorphism can induce.
bool cycles_equal_up_to_symmetry(const SelfIntCycle& a, const SelfIntCycle& b);

SelfIntCycle selfint_from_fan(const Fan2D& fan);

/// Reconstructs a fan from its self-intersection cycle in the gauge
/// v1 = (1,0), v2 = (0,1).  Throws if the recurrence fails to close,
/// naming the failing index.
Fan2D fan_from_selfint(const SelfIntCycle& cycle);

/// Inserts v_i + v_{i+1} between rays i and i+1 (indices mod n).
Fan2D blow_up_corner(const Fan2D& fan, size_t corner);

/// Removes ray i; requires a_i = -1 and n >= 4.
Fan2D blow_down_ray(const Fan2D& fan, size_t i);

inline int k_squared(const Fan2D& fan) { return 12 - static_cast<int>(fan.size()); }

}  // namespace twistor
