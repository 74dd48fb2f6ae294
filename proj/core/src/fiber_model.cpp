#include "twistor/fiber_model.hpp"

#include <algorithm>

namespace twistor::surgery {

LabeledFan::LabeledFan(Fan2D f, std::vector<CurveLabel> l) : fan(std::move(f)), labels(std::move(l)) {
    if (fan.size() != labels.size())
        throw std::invalid_argument("label count does not match ray count");
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j])
                throw std::invalid_argument("duplicate boundary label " + labels[i].str());
}

bool LabeledFan::has(const CurveLabel& label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

size_t LabeledFan::index_of(const CurveLabel& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw std::invalid_argument("no boundary curve labeled " + label.str());
}

long long LabeledFan::selfint(const CurveLabel& label) const {
    return fan.self_intersection(index_of(label));
}

CurveLabel LabeledFan::next(const CurveLabel& label) const {
    return labels[(index_of(label) + 1) % labels.size()];
}

CurveLabel LabeledFan::prev(const CurveLabel& label) const {
    return labels[(index_of(label) + labels.size() - 1) % labels.size()];
}

LabeledFan LabeledFan::blow_up(const CurveLabel& after, const CurveLabel& exceptional) const {
    size_t corner = index_of(after);
    std::vector<CurveLabel> new_labels;
    new_labels.reserve(labels.size() + 1);
    for (size_t i = 0; i <= corner; ++i) new_labels.push_back(labels[i]);
    new_labels.push_back(exceptional);
    for (size_t i = corner + 1; i < labels.size(); ++i) new_labels.push_back(labels[i]);
    return LabeledFan(blow_up_corner(fan, corner), std::move(new_labels));
}

LabeledFan LabeledFan::blow_down(const CurveLabel& label) const {
    size_t at = index_of(label);
    std::vector<CurveLabel> new_labels;
    new_labels.reserve(labels.size() - 1);
    for (size_t i = 0; i < labels.size(); ++i)
        if (i != at) new_labels.push_back(labels[i]);
    return LabeledFan(blow_down_ray(fan, at), std::move(new_labels));
}

std::vector<std::pair<CurveLabel, long long>> fiber_cycle(const GenericFiber& fiber) {
    std::vector<std::pair<CurveLabel, long long>> out;
    for (size_t i = 0; i < fiber.fan.size(); ++i)
        out.emplace_back(fiber.fan.labels[i], fiber.fan.fan.self_intersection(i));
    return out;
}

namespace {

// labels after the conic ray around to the ray before it, in ccw order
std::vector<std::pair<CurveLabel, long long>> chain_without_conic(const LabeledFan& fan,
                                                                  const CurveLabel& conic) {
    const size_t n = fan.size();
    const size_t glue = fan.index_of(conic);
    std::vector<std::pair<CurveLabel, long long>> out;
    for (size_t k = 1; k < n; ++k) {
        size_t i = (glue + k) % n;
        out.emplace_back(fan.labels[i], fan.fan.self_intersection(i));
    }
    return out;
}

}  // namespace

std::vector<std::pair<CurveLabel, long long>> fiber_cycle(const GluedFiber& fiber) {
    auto plus_chain = chain_without_conic(fiber.plus, fiber.conic);
    auto minus_chain = chain_without_conic(fiber.minus, fiber.conic);
    if (plus_chain.empty() || minus_chain.empty())
        throw std::logic_error("glued boundary is not a cycle: a component chain is empty");
    std::vector<std::pair<CurveLabel, long long>> out = std::move(plus_chain);
    // the head corner of one component is glued to the head corner of the
    // other, so the minus chain is traversed in reverse
    for (auto it = minus_chain.rbegin(); it != minus_chain.rend(); ++it) out.push_back(*it);
    return out;
}

void check_conjugation_symmetry(const GluedFiber& fiber) {
    const size_t n = fiber.plus.size();
    if (fiber.minus.size() != n)
        throw std::logic_error("components of fiber " + std::to_string(fiber.index) +
                               " differ in size");
    bool matched = false;
    for (size_t shift = 0; shift < n && !matched; ++shift) {
        bool ok = true;
        for (size_t k = 0; k < n && ok; ++k) {
            size_t j = (shift + n - k) % n;
            ok = fiber.minus.labels[j] == fiber.plus.labels[k].conj() &&
                 fiber.minus.fan.self_intersection(j) == fiber.plus.fan.self_intersection(k);
        }
        matched = ok;
    }
    if (!matched)
        throw std::logic_error("fiber " + std::to_string(fiber.index) +
                               ": minus component is not the conjugate of plus");
    if (fiber.odps[0].label.conj() != fiber.odps[1].label)
        throw std::logic_error("node markers of fiber " + std::to_string(fiber.index) +
                               " are not conjugate");
    for (const auto& [label, pos] : fiber.sections) {
        auto it = fiber.sections.find(label.conj());
        if (it == fiber.sections.end())
            throw std::logic_error("section " + label.str() + " has no conjugate partner");
        if (pos.pending_odp != it->second.pending_odp)
            throw std::logic_error("sections " + label.str() + " and " + it->first.str() +
                                   " disagree about node incidence");
        if (!pos.pending_odp) {
            // conjugation reverses orientation, so the partner corner sits
            // after the conjugate of this corner's ccw successor
            CurveLabel expected_after = fiber.side(pos.host).next(pos.corner_after).conj();
            if (it->second.host != conj(pos.host) || it->second.corner_after != expected_after)
                throw std::logic_error("section " + label.str() + " not conjugate-placed");
        }
    }
}

}  // namespace twistor::surgery
