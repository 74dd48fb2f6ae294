#pragma once

#include "twistor/fiber_model.hpp"
#include "twistor/report.hpp"

#include <array>
#include <filesystem>

namespace twistor::surgery {

enum class Stage { X1, X2, X3, Zhat };
std::string stage_name(Stage stage);

/// Which component receives the exceptional curve at each node.  Entry [0]
/// of a fiber is the node with the unbarred cycle label, entry [1] its
/// conjugate.  Equivariant choices assign conjugate components; the file
/// format can express non-equivariant choices so they can be rejected.
struct ResolutionChoice {
    std::array<std::array<Component, 2>, 6> assign;

    /// Per node pair, the exceptional curve goes to the component carrying
    /// the node's resolved half label.
    static ResolutionChoice default_choice(const family::FamilyModel& fm);

    /// Six lines, one symbol per fiber: '+', '-' (equivariant: where the
    /// unbarred node resolves), 'P', 'M' (both nodes to one component).
    static ResolutionChoice from_file(const std::filesystem::path& path);
    static ResolutionChoice parse(const std::string& text);
    std::string str() const;

    /// Throws naming the first offending fiber.
    void require_equivariant() const;
};

struct PipelineState {
    Stage stage = Stage::X1;
    GenericFiber generic;
    std::vector<GluedFiber> fibers;  // index i-1 holds the fiber over lambda_i

    // step-1 exceptional curves per fiber, valid from X2 on
    std::array<std::array<CurveLabel, 2>, 6> exceptional{};
    // contracted pair per fiber (plus side first), valid at Zhat
    std::array<std::pair<CurveLabel, CurveLabel>, 6> contracted{};
};

PipelineState initial_fiber_models(const family::FamilyModel& fm);

PipelineState small_resolve(const PipelineState& state, const ResolutionChoice& choice);

PipelineState blow_up_sections(const PipelineState& state);

/// For each reducible fiber the unique conjugate pair of curves that are
/// (-1)-curves in their components, meet the conic once, and whose
/// contraction leaves a single glued 12-cycle.  Uniqueness is certified by
/// exhaustive search; zero or several qualifying pairs throw.
std::array<std::pair<CurveLabel, CurveLabel>, 6> find_minus_one_pairs(const PipelineState& state);

PipelineState contract_pairs(const PipelineState& state,
                             const std::array<std::pair<CurveLabel, CurveLabel>, 6>& pairs);

/// Fan and conjugation invariants of a state; throws on violation.
void validate_state(const PipelineState& state);

struct PipelineRun {
    bool completed = false;
    report::Suite suite;
    std::vector<PipelineState> stages;  // X1 .. Zhat for the stages reached
};

/// Steps 1-3 composed, with every stage invariant recorded as a claim.
PipelineRun run_pipeline(const family::FamilyModel& fm, const ResolutionChoice& choice);

}  // namespace twistor::surgery
