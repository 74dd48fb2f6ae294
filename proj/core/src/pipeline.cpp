#include "twistor/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace twistor::surgery {

std::string stage_name(Stage stage) {
    switch (stage) {
        case Stage::X1: return "X1";
        case Stage::X2: return "X2";
        case Stage::X3: return "X3";
        case Stage::Zhat: return "Zhat";
    }
    return "?";
}

namespace {

void require_stage(const PipelineState& state, Stage expected, const std::string& op) {
    if (state.stage != expected)
        throw std::logic_error(op + " expects stage " + stage_name(expected) + ", state is at " +
                               stage_name(state.stage));
}

struct BuiltFan {
    LabeledFan fan;
    std::vector<int> corner_coords;  // corner i = hull vertex between edges i, i+1
};

// Labeled fan of a monomial parametrization: rays follow hull edges, labels
// come from the surviving coordinates of each edge (x0 on the edge marks the
// conic).
BuiltFan build_labeled_fan(const family::FiberComponentParam& param, int fiber_index) {
    const LatticePolygon& polygon = param.polygon;
    std::vector<PolygonEdge> edges = polygon.edges();
    Fan2D fan = polygon.normal_fan();
    std::vector<CurveLabel> labels;
    for (const PolygonEdge& edge : edges) {
        bool conic_edge =
            std::find(edge.on_labels.begin(), edge.on_labels.end(), 0) != edge.on_labels.end();
        if (conic_edge) {
            labels.push_back(CurveLabel::conic(fiber_index));
        } else {
            if (edge.on_labels.size() != 2)
                throw std::logic_error("boundary edge carries " +
                                       std::to_string(edge.on_labels.size()) + " coordinates");
            labels.push_back(family::edge_label(edge.on_labels[0], edge.on_labels[1]));
        }
    }
    std::vector<LatticePoint> hull = polygon.hull();
    std::vector<int> corners;
    for (size_t i = 0; i < hull.size(); ++i) corners.push_back(hull[(i + 1) % hull.size()].label);
    return {LabeledFan(std::move(fan), std::move(labels)), std::move(corners)};
}

}  // namespace

PipelineState initial_fiber_models(const family::FamilyModel& fm) {
    family::FiberComponentParam generic =
        fm.generic_fiber_parametrization(fm.representative_smooth_lambda());
    BuiltFan generic_fan = build_labeled_fan(generic, 0);
    std::vector<CurveLabel> generic_corners;
    for (int coord : generic_fan.corner_coords)
        generic_corners.push_back(family::vertex_label(coord));
    PipelineState state{Stage::X1, GenericFiber{generic_fan.fan, std::move(generic_corners)},
                        {}, {}, {}};

    for (int i = 1; i <= 6; ++i) {
        auto [plus_param, minus_param] = fm.fiber_components(i);
        family::HalvesAssignment halves = fm.halves_assignment(i);
        std::array<int, 2> plane = fm.conic_plane(i);

        BuiltFan plus = build_labeled_fan(plus_param, i);
        BuiltFan minus = build_labeled_fan(minus_param, i);

        GluedFiber fiber{i,
                         plus.fan,
                         minus.fan,
                         CurveLabel::conic(i),
                         /*glue_length=*/0,
                         {},
                         {}};

        size_t glue_plus = fiber.plus.index_of(fiber.conic);
        size_t glue_minus = fiber.minus.index_of(fiber.conic);
        fiber.glue_length = plus_param.polygon.edges()[glue_plus].lattice_length;
        long long minus_length = minus_param.polygon.edges()[glue_minus].lattice_length;
        if (fiber.glue_length != minus_length)
            throw std::logic_error("gluing curve degrees disagree on fiber " + std::to_string(i));

        // the head corner (conic ray, successor) is the same node in both
        // components; identify it through the hull vertex coordinate
        int head_coord = plus.corner_coords[glue_plus];
        if (minus.corner_coords[glue_minus] != head_coord)
            throw std::logic_error("node identification fails on fiber " + std::to_string(i));
        for (int k = 0; k < 2; ++k) {
            const CurveLabel& label = halves.odp_labels[k];
            fiber.odps[k] = OdpMarker{label, family::vertex_coord(label) == head_coord, false,
                                      Component::Plus};
        }

        // section incidence: each fixed-point label sits at the hull corner
        // carrying its coordinate, or at a node when its coordinate spans the
        // conic plane
        for (int coord = 1; coord <= 6; ++coord) {
            CurveLabel label = family::vertex_label(coord);
            SectionPos pos;
            if (coord == plane[0] || coord == plane[1]) {
                pos.pending_odp = true;
            } else {
                bool placed = false;
                for (Component comp : {Component::Plus, Component::Minus}) {
                    const BuiltFan& built = comp == Component::Plus ? plus : minus;
                    for (size_t corner = 0; corner < built.corner_coords.size(); ++corner) {
                        if (built.corner_coords[corner] != coord) continue;
                        if (placed)
                            throw std::logic_error("section " + label.str() +
                                                   " meets fiber " + std::to_string(i) + " twice");
                        pos.host = comp;
                        pos.corner_after = built.fan.labels[corner];
                        placed = true;
                    }
                }
                if (!placed)
                    throw std::logic_error("section " + label.str() + " misses fiber " +
                                           std::to_string(i));
            }
            fiber.sections[label] = pos;
        }
        state.fibers.push_back(std::move(fiber));
    }
    validate_state(state);
    return state;
}

ResolutionChoice ResolutionChoice::default_choice(const family::FamilyModel& fm) {
    ResolutionChoice choice;
    for (int i = 1; i <= 6; ++i) {
        family::HalvesAssignment halves = fm.halves_assignment(i);
        Component unbarred = halves.sides.at(halves.odp_labels[0]) == family::HalfSide::Plus
                                 ? Component::Plus
                                 : Component::Minus;
        choice.assign[i - 1] = {unbarred, conj(unbarred)};
    }
    return choice;
}

ResolutionChoice ResolutionChoice::parse(const std::string& text) {
    ResolutionChoice choice;
    std::istringstream in(text);
    std::string line;
    size_t fiber = 0;
    while (std::getline(in, line)) {
        std::string body = line.substr(0, line.find('#'));
        size_t at = body.find_first_not_of(" \t\r\n");
        if (at == std::string::npos) continue;
        if (fiber >= 6) throw std::invalid_argument("more than six resolution symbols");
        switch (body[at]) {
            case '+': choice.assign[fiber] = {Component::Plus, Component::Minus}; break;
            case '-': choice.assign[fiber] = {Component::Minus, Component::Plus}; break;
            case 'P': choice.assign[fiber] = {Component::Plus, Component::Plus}; break;
            case 'M': choice.assign[fiber] = {Component::Minus, Component::Minus}; break;
            default:
                throw std::invalid_argument("bad resolution symbol '" + body.substr(at, 1) +
                                            "' for fiber " + std::to_string(fiber + 1));
        }
        ++fiber;
    }
    if (fiber != 6)
        throw std::invalid_argument("expected six resolution symbols, found " +
                                    std::to_string(fiber));
    return choice;
}

ResolutionChoice ResolutionChoice::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string ResolutionChoice::str() const {
    std::string out;
    for (const auto& fiber : assign) {
        if (fiber[0] == Component::Plus && fiber[1] == Component::Minus) out += "+\n";
        else if (fiber[0] == Component::Minus && fiber[1] == Component::Plus) out += "-\n";
        else if (fiber[0] == Component::Plus) out += "P\n";
        else out += "M\n";
    }
    return out;
}

void ResolutionChoice::require_equivariant() const {
    for (size_t i = 0; i < 6; ++i)
        if (assign[i][1] != conj(assign[i][0]))
            throw std::invalid_argument("resolution choice is not conjugation-equivariant at fiber " +
                                        std::to_string(i + 1));
}

PipelineState small_resolve(const PipelineState& state, const ResolutionChoice& choice) {
    require_stage(state, Stage::X1, "small_resolve");
    choice.require_equivariant();
    PipelineState out = state;
    for (size_t f = 0; f < out.fibers.size(); ++f) {
        GluedFiber& fiber = out.fibers[f];
        for (int k = 0; k < 2; ++k) {
            OdpMarker& odp = fiber.odps[k];
            Component comp = choice.assign[f][k];
            LabeledFan& target = fiber.side(comp);
            CurveLabel exceptional = CurveLabel::exceptional(odp.label.index, odp.label.bar);
            CurveLabel after = odp.at_head ? fiber.conic : target.prev(fiber.conic);
            target = target.blow_up(after, exceptional);
            odp.resolved = true;
            odp.resolved_into = comp;
            out.exceptional[f][k] = exceptional;
            // the section through the node moves to the corner of the
            // exceptional curve away from the conic
            SectionPos& section = fiber.sections.at(odp.label);
            section.pending_odp = false;
            section.host = comp;
            section.corner_after = odp.at_head ? exceptional : after;
        }
    }
    out.stage = Stage::X2;
    validate_state(out);
    return out;
}

PipelineState blow_up_sections(const PipelineState& state) {
    require_stage(state, Stage::X2, "blow_up_sections");
    PipelineState out = state;

    // generic fiber: all six fixed points are section points
    GenericFiber& generic = out.generic;
    for (size_t corner = 0; corner < generic.corner_labels.size(); ++corner) {
        CurveLabel after = state.generic.fan.labels[corner];
        generic.fan = generic.fan.blow_up(after, state.generic.corner_labels[corner]);
    }
    generic.corner_labels.clear();

    for (GluedFiber& fiber : out.fibers) {
        for (const auto& [label, pos] : fiber.sections) {
            if (pos.pending_odp)
                throw std::logic_error("section " + label.str() + " still sits on a node");
            fiber.side(pos.host) = fiber.side(pos.host).blow_up(pos.corner_after, label);
        }
        fiber.sections.clear();
    }
    out.stage = Stage::X3;
    validate_state(out);
    return out;
}

namespace {

bool single_twelve_cycle_after(const GluedFiber& fiber, const CurveLabel& on_plus,
                               const CurveLabel& on_minus) {
    GluedFiber probe = fiber;
    probe.plus = probe.plus.blow_down(on_plus);
    probe.minus = probe.minus.blow_down(on_minus);
    return fiber_cycle(probe).size() == 12;
}

}  // namespace

std::array<std::pair<CurveLabel, CurveLabel>, 6> find_minus_one_pairs(const PipelineState& state) {
    require_stage(state, Stage::X3, "find_minus_one_pairs");
    std::array<std::pair<CurveLabel, CurveLabel>, 6> out;
    for (size_t f = 0; f < state.fibers.size(); ++f) {
        const GluedFiber& fiber = state.fibers[f];
        std::vector<std::pair<CurveLabel, CurveLabel>> found;
        for (const CurveLabel& candidate : fiber.plus.labels) {
            if (candidate == fiber.conic) continue;
            CurveLabel partner = candidate.conj();
            if (!fiber.minus.has(partner) || partner == fiber.conic) continue;
            // (-1)-curves in their components
            if (fiber.plus.selfint(candidate) != -1) continue;
            if (fiber.minus.selfint(partner) != -1) continue;
            // meeting the conic once: in-fan adjacency to the gluing ray,
            // which is the combinatorial normal-bundle condition
            if (fiber.plus.next(candidate) != fiber.conic && fiber.plus.prev(candidate) != fiber.conic)
                continue;
            if (fiber.minus.next(partner) != fiber.conic && fiber.minus.prev(partner) != fiber.conic)
                continue;
            if (!single_twelve_cycle_after(fiber, candidate, partner)) continue;
            found.emplace_back(candidate, partner);
        }
        if (found.size() != 1) {
            std::string listing;
            for (const auto& [a, b] : found) listing += " (" + a.str() + "," + b.str() + ")";
            throw std::logic_error("fiber " + std::to_string(fiber.index) + ": expected a unique" +
                                   " contractible pair, found " + std::to_string(found.size()) +
                                   listing);
        }
        out[f] = found.front();
    }
    return out;
}

PipelineState contract_pairs(const PipelineState& state,
                             const std::array<std::pair<CurveLabel, CurveLabel>, 6>& pairs) {
    require_stage(state, Stage::X3, "contract_pairs");
    PipelineState out = state;
    for (size_t f = 0; f < out.fibers.size(); ++f) {
        GluedFiber& fiber = out.fibers[f];
        fiber.plus = fiber.plus.blow_down(pairs[f].first);
        fiber.minus = fiber.minus.blow_down(pairs[f].second);
        out.contracted[f] = pairs[f];
    }
    out.stage = Stage::Zhat;
    validate_state(out);
    return out;
}

void validate_state(const PipelineState& state) {
    // Fan2D construction re-checks smoothness and completeness on every
    // transformation; here only the cross-component symmetry remains
    for (const GluedFiber& fiber : state.fibers) check_conjugation_symmetry(fiber);
}

PipelineRun run_pipeline(const family::FamilyModel& fm, const ResolutionChoice& choice) {
    PipelineRun run;
    run.suite.name = "surgery";
    auto claim = [&](const std::string& id, const std::string& description, auto&& body) {
        try {
            std::string witness = body();
            run.suite.add(id, description, true, witness);
            return true;
        } catch (const std::exception& e) {
            run.suite.add(id, description, false, e.what());
            return false;
        }
    };

    std::optional<PipelineState> x1;
    bool ok = claim("surgery.x1.models", "fiber models over the six nodes and a generic value", [&] {
        x1 = initial_fiber_models(fm);
        if (fiber_cycle(x1->generic).size() != 6) throw std::logic_error("generic cycle size");
        if (!cycles_equal_up_to_symmetry(x1->generic.fan.cycle(),
                                         SelfIntCycle({-1, -1, -1, -1, -1, -1})))
            throw std::logic_error("generic fiber cycle is not (-1)^6");
        for (const GluedFiber& fiber : x1->fibers) {
            if (fiber.plus.size() != 4 || fiber.minus.size() != 4)
                throw std::logic_error("component ray counts at X1");
            if (fiber.glue_length != 2) throw std::logic_error("gluing curve degree");
            if (fiber.plus.selfint(fiber.conic) != 1 || fiber.minus.selfint(fiber.conic) != 1)
                throw std::logic_error("gluing curve self-intersection");
            if (!cycles_equal_up_to_symmetry(fiber.plus.cycle(), SelfIntCycle({0, -1, 0, 1})))
                throw std::logic_error("component cycle is not of scroll type");
            // six fixed points: 3 + 3 off-node corners plus the two nodes
            if (fiber.sections.size() != 6) throw std::logic_error("section count");
        }
        return std::string("generic (-1)^6; six glued scroll pairs");
    });
    if (!ok) return run;
    run.stages.push_back(*x1);

    std::optional<PipelineState> x2;
    ok = claim("surgery.step1.resolve", "small resolutions insert one (-1)-curve per node", [&] {
        x2 = small_resolve(*x1, choice);
        for (size_t f = 0; f < x2->fibers.size(); ++f) {
            const GluedFiber& fiber = x2->fibers[f];
            if (fiber.plus.size() + fiber.minus.size() != 10)
                throw std::logic_error("ray count after step 1");
            for (int k = 0; k < 2; ++k) {
                if (!fiber.odps[k].resolved) throw std::logic_error("unresolved node");
                const LabeledFan& host = fiber.side(fiber.odps[k].resolved_into);
                const CurveLabel& e = x2->exceptional[f][k];
                if (host.selfint(e) != -1)
                    throw std::logic_error("exceptional curve is not a (-1)-curve");
                if (host.next(e) != fiber.conic && host.prev(e) != fiber.conic)
                    throw std::logic_error("exceptional curve does not meet the conic");
            }
        }
        return std::string("counts 5+5 per fiber, nodes cleared");
    });
    if (!ok) return run;
    run.stages.push_back(*x2);

    std::optional<PipelineState> x3;
    ok = claim("surgery.step2.sections", "blow-ups along the six sections", [&] {
        x3 = blow_up_sections(*x2);
        if (!cycles_equal_up_to_symmetry(
                x3->generic.fan.cycle(),
                SelfIntCycle({-3, -1, -3, -1, -3, -1, -3, -1, -3, -1, -3, -1})))
            throw std::logic_error("generic fiber cycle is not (-3,-1)^6");
        for (const GluedFiber& fiber : x3->fibers) {
            if (fiber.plus.size() + fiber.minus.size() != 16)
                throw std::logic_error("ray count after step 2");
            if (fiber_cycle(fiber).size() != 14)
                throw std::logic_error("boundary cycle length after step 2");
        }
        return std::string("generic cycle (-3,-1)^6; reducible boundaries of length 14");
    });
    if (!ok) return run;
    run.stages.push_back(*x3);

    std::array<std::pair<CurveLabel, CurveLabel>, 6> pairs;
    ok = claim("surgery.step3.pairs", "unique contractible conjugate pair per reducible fiber", [&] {
        pairs = find_minus_one_pairs(*x3);
        std::string witness;
        for (size_t f = 0; f < 6; ++f) {
            bool is_strict_transform = pairs[f].first == x3->exceptional[f][0] ||
                                       pairs[f].first == x3->exceptional[f][1];
            witness += (f ? " " : "") + pairs[f].first.str() + "/" + pairs[f].second.str() +
                       (is_strict_transform ? "(step-1)" : "");
        }
        return witness;
    });
    if (!ok) return run;

    std::optional<PipelineState> zhat;
    ok = claim("surgery.step3.contract", "contraction leaves a 12-curve cycle on every fiber", [&] {
        zhat = contract_pairs(*x3, pairs);
        if (!cycles_equal_up_to_symmetry(
                zhat->generic.fan.cycle(),
                SelfIntCycle({-3, -1, -3, -1, -3, -1, -3, -1, -3, -1, -3, -1})))
            throw std::logic_error("generic fiber changed under step 3");
        for (const GluedFiber& fiber : zhat->fibers) {
            if (fiber_cycle(fiber).size() != 12)
                throw std::logic_error("fiber cycle is not a 12-cycle");
            if (fiber.plus.size() + fiber.minus.size() != 14)
                throw std::logic_error("ray count after step 3");
        }
        return std::string("all seven tracked fibers carry 12-curve cycles");
    });
    if (!ok) return run;
    run.stages.push_back(*zhat);
    run.completed = true;
    return run;
}

}  // namespace twistor::surgery
