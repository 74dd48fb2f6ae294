#pragma once

#include "twistor/family.hpp"
#include "twistor/fan.hpp"
#include "twistor/labels.hpp"

#include <map>

namespace twistor::surgery {

enum class Component { Plus, Minus };

inline Component conj(Component c) { return c == Component::Plus ? Component::Minus : Component::Plus; }
inline std::string component_name(Component c) { return c == Component::Plus ? "plus" : "minus"; }

/// Fan whose rays carry curve labels.  Corners are addressed by the label of
/// the ray counterclockwise-before them, which stays stable under blow-ups at
/// other corners.
struct LabeledFan {
    Fan2D fan;
    std::vector<CurveLabel> labels;

    LabeledFan(Fan2D f, std::vector<CurveLabel> l);

    size_t size() const { return labels.size(); }
    bool has(const CurveLabel& label) const;
    size_t index_of(const CurveLabel& label) const;
    long long selfint(const CurveLabel& label) const;
    CurveLabel next(const CurveLabel& label) const;
    CurveLabel prev(const CurveLabel& label) const;

    /// Blows up the corner between `after` and its ccw successor.
    LabeledFan blow_up(const CurveLabel& after, const CurveLabel& exceptional) const;
    LabeledFan blow_down(const CurveLabel& label) const;

    SelfIntCycle cycle() const { return selfint_from_fan(fan); }
};

struct OdpMarker {
    CurveLabel label;       // cycle label contracted onto the node
    bool at_head = false;   // head corner = (conic ray, its ccw successor)
    bool resolved = false;
    Component resolved_into = Component::Plus;
};

struct SectionPos {
    bool pending_odp = false;  // section passes through an unresolved node
    Component host = Component::Plus;
    CurveLabel corner_after;   // corner between this ray and its ccw successor
};

/// Reducible fiber: two cubic components glued along the conic, with node
/// markers and section incidences.
struct GluedFiber {
    int index = 0;  // 1..6
    LabeledFan plus, minus;
    CurveLabel conic;
    long long glue_length = 2;
    std::array<OdpMarker, 2> odps;  // [0] carries the unbarred label
    std::map<CurveLabel, SectionPos> sections;

    const LabeledFan& side(Component c) const { return c == Component::Plus ? plus : minus; }
    LabeledFan& side(Component c) { return c == Component::Plus ? plus : minus; }
};

struct GenericFiber {
    LabeledFan fan;
    std::vector<CurveLabel> corner_labels;  // corner i = between rays i and i+1
};

std::vector<std::pair<CurveLabel, long long>> fiber_cycle(const GenericFiber& fiber);

/// Boundary cycle of the glued fiber: the plus chain followed by the minus
/// chain traversed against its own orientation, joined at the two corners of
/// the conic.  Excludes the conic itself.
std::vector<std::pair<CurveLabel, long long>> fiber_cycle(const GluedFiber& fiber);

/// The minus side must be the conjugate of the plus side: conjugated labels
/// in reversed cyclic order with matching self-intersections, markers and
/// sections mapped onto each other.  Throws on violation.
void check_conjugation_symmetry(const GluedFiber& fiber);

}  // namespace twistor::surgery
