#include "CLI11.hpp"
#include "json.hpp"
#include "svg.hpp"

#include "twistor/family.hpp"
#include "twistor/pipeline.hpp"
#include "twistor/report.hpp"
#include "twistor/suites.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace twistor;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
    std::string lambdas_path;
    std::string json_path;
    bool quiet = false;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

json lambdas_json(const family::FamilyModel& fm) {
    json out = json::array();
    for (const Rational& l : fm.invariants().lambdas()) out.push_back(rational_str(l));
    return out;
}

json report_json(const report::Report& rep, const std::string& command) {
    json out;
    out["version"] = rep.version;
    out["command"] = command;
    out["lambdas"] = rep.lambdas;
    json suites = json::array();
    for (const auto& suite : rep.suites) {
        json claims = json::array();
        for (const auto& claim : suite.claims)
            claims.push_back({{"id", claim.id},
                              {"description", claim.description},
                              {"status", claim.pass ? "pass" : "fail"},
                              {"witness", claim.witness}});
        suites.push_back({{"name", suite.name}, {"claims", std::move(claims)}});
    }
    out["suites"] = std::move(suites);
    out["overall"] = rep.all_pass() ? "pass" : "fail";
    return out;
}

json cycle_json(const std::vector<std::pair<CurveLabel, long long>>& cycle) {
    json out = json::array();
    for (const auto& [label, a] : cycle) out.push_back({label.str(), a});
    return out;
}

json polygon_json(const LatticePolygon& polygon) {
    json out = json::array();
    for (const LatticePoint& p : polygon.points()) out.push_back({p.x, p.y, p.label});
    return out;
}

std::string cycle_str(const std::vector<std::pair<CurveLabel, long long>>& cycle) {
    std::string out;
    for (const auto& [label, a] : cycle) out += label.str() + ":" + std::to_string(a) + " ";
    if (!out.empty()) out.pop_back();
    return out;
}

void print_report(const report::Report& rep, bool quiet) {
    if (quiet) return;
    for (const auto& suite : rep.suites) {
        for (const auto& claim : suite.claims) {
            std::cout << (claim.pass ? "PASS " : "FAIL ") << claim.id << " - "
                      << claim.description;
            if (!claim.witness.empty()) std::cout << " [" << claim.witness << "]";
            std::cout << "\n";
        }
    }
    std::cout << (rep.all_pass() ? "overall: pass" : "overall: FAIL") << "\n";
}

int cmd_verify(const CommonOptions& common, const std::vector<std::string>& only,
               const std::string& choices_path) {
    family::FamilyModel fm(family::ConformalInvariant::from_file(common.lambdas_path));
    surgery::ResolutionChoice choice = choices_path.empty()
                                           ? surgery::ResolutionChoice::default_choice(fm)
                                           : surgery::ResolutionChoice::from_file(choices_path);
    for (const std::string& name : only)
        if (name != "family" && name != "fiber" && name != "odp" && name != "surgery")
            throw std::invalid_argument("unknown suite '" + name + "'");

    auto start = std::chrono::steady_clock::now();
    report::Report rep = suites::run_verification(fm, choice, only);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    std::cerr << "# timing: verification " << elapsed.count() << " ms\n";

    if (!common.json_path.empty())
        write_file(common.json_path, report_json(rep, "verify").dump(2) + "\n");
    print_report(rep, common.quiet);
    return rep.all_pass() ? kExitPass : kExitClaimFailure;
}

int cmd_fiber(const CommonOptions& common, const std::string& lambda_text,
              const std::string& svg_path) {
    family::FamilyModel fm(family::ConformalInvariant::from_file(common.lambdas_path));
    Rational lambda0 = parse_rational(lambda_text);

    family::FiberClass cls = fm.classify_fiber(GaussianRational(lambda0));
    json out;
    out["version"] = report::kToolVersion;
    out["command"] = "fiber";
    out["lambdas"] = lambdas_json(fm);
    out["lambda"] = rational_str(lambda0);

    if (cls.kind == family::FiberKind::Smooth) {
        family::FiberComponentParam param = fm.generic_fiber_parametrization(lambda0);
        surgery::PipelineState x1 = surgery::initial_fiber_models(fm);
        auto cycle = fiber_cycle(x1.generic);
        if (!common.quiet) {
            std::cout << "Smooth, degree " << param.polygon.degree() << ", cycle (-1)^6\n";
            std::cout << "polygon:";
            for (const LatticePoint& p : param.polygon.points())
                std::cout << " x" << p.label << "=(" << p.x << "," << p.y << ")";
            std::cout << "\ncycle: " << cycle_str(cycle) << "\n";
        }
        out["class"] = "smooth";
        out["degree"] = param.polygon.degree();
        out["polygon"] = polygon_json(param.polygon);
        out["cycle"] = cycle_json(cycle);
        if (!svg_path.empty())
            write_file(svg_path, svg::document({param.polygon}, {"fiber polygon"}, cycle,
                                               "boundary cycle"));
    } else {
        auto [plus, minus] = fm.fiber_components(cls.index);
        surgery::PipelineState x1 = surgery::initial_fiber_models(fm);
        const surgery::GluedFiber& fiber = x1.fibers[cls.index - 1];
        auto cycle = fiber_cycle(fiber);
        if (!common.quiet) {
            std::cout << "Reducible(" << cls.index
                      << "): two cubic components, conic intersection, 2 ODPs\n";
            std::cout << "conic: x" << fm.conic_plane(cls.index)[0] << " x"
                      << fm.conic_plane(cls.index)[1] << " = "
                      << fm.conic_coefficient(cls.index).str() << " x0^2\n";
            std::cout << "cycle: " << cycle_str(cycle) << "\n";
        }
        out["class"] = "reducible";
        out["index"] = cls.index;
        out["components"] = {{"plus",
                              {{"degree", plus.polygon.degree()},
                               {"zero_coords", plus.zero_coords},
                               {"polygon", polygon_json(plus.polygon)}}},
                             {"minus",
                              {{"degree", minus.polygon.degree()},
                               {"zero_coords", minus.zero_coords},
                               {"polygon", polygon_json(minus.polygon)}}}};
        out["conic"] = {{"plane", fm.conic_plane(cls.index)},
                        {"coefficient", fm.conic_coefficient(cls.index).str()}};
        out["cycle"] = cycle_json(cycle);
        if (!svg_path.empty())
            write_file(svg_path,
                       svg::document({plus.polygon, minus.polygon},
                                     {"plus component", "minus component"}, cycle, "fiber cycle"));
    }
    if (!common.json_path.empty()) write_file(common.json_path, out.dump(2) + "\n");
    return kExitPass;
}

json surgery_state_json(const surgery::PipelineState& state) {
    json fibers = json::array();
    for (const surgery::GluedFiber& fiber : state.fibers) {
        json plus = json::array(), minus = json::array();
        for (size_t i = 0; i < fiber.plus.size(); ++i)
            plus.push_back({fiber.plus.labels[i].str(), fiber.plus.fan.self_intersection(i)});
        for (size_t i = 0; i < fiber.minus.size(); ++i)
            minus.push_back({fiber.minus.labels[i].str(), fiber.minus.fan.self_intersection(i)});
        fibers.push_back({{"index", fiber.index},
                          {"plus", std::move(plus)},
                          {"minus", std::move(minus)},
                          {"cycle", cycle_json(fiber_cycle(fiber))}});
    }
    return {{"stage", surgery::stage_name(state.stage)},
            {"generic", cycle_json(fiber_cycle(state.generic))},
            {"fibers", std::move(fibers)}};
}

int cmd_surgery(const CommonOptions& common, const std::string& choices_path,
                const std::string& svg_path) {
    family::FamilyModel fm(family::ConformalInvariant::from_file(common.lambdas_path));
    surgery::ResolutionChoice choice = choices_path.empty()
                                           ? surgery::ResolutionChoice::default_choice(fm)
                                           : surgery::ResolutionChoice::from_file(choices_path);

    auto start = std::chrono::steady_clock::now();
    surgery::PipelineRun run = surgery::run_pipeline(fm, choice);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    std::cerr << "# timing: surgery " << elapsed.count() << " ms\n";

    report::Report rep;
    for (const Rational& l : fm.invariants().lambdas()) rep.lambdas.push_back(rational_str(l));
    rep.suites.push_back(run.suite);

    if (!common.quiet) {
        for (const surgery::PipelineState& state : run.stages) {
            std::cout << surgery::stage_name(state.stage) << ": generic "
                      << cycle_str(fiber_cycle(state.generic)) << "\n";
            for (const surgery::GluedFiber& fiber : state.fibers)
                std::cout << "  fiber " << fiber.index << ": " << cycle_str(fiber_cycle(fiber))
                          << "\n";
        }
    }
    print_report(rep, common.quiet);

    if (!common.json_path.empty()) {
        json out;
        out["version"] = report::kToolVersion;
        out["command"] = "surgery";
        out["lambdas"] = rep.lambdas;
        json choice_sym = json::array();
        {
            std::istringstream lines(choice.str());
            std::string line;
            while (std::getline(lines, line)) choice_sym.push_back(line);
        }
        out["choice"] = std::move(choice_sym);
        json stages = json::array();
        for (const surgery::PipelineState& state : run.stages)
            stages.push_back(surgery_state_json(state));
        out["stages"] = std::move(stages);
        if (run.completed) {
            json contracted = json::array();
            for (const auto& [a, b] : run.stages.back().contracted)
                contracted.push_back({a.str(), b.str()});
            out["contracted"] = std::move(contracted);
        }
        out["claims"] = report_json(rep, "surgery")["suites"][0]["claims"];
        out["overall"] = run.suite.all_pass() ? "pass" : "fail";
        write_file(common.json_path, out.dump(2) + "\n");
    }
    if (!svg_path.empty() && run.completed) {
        const surgery::PipelineState& zhat = run.stages.back();
        write_file(svg_path, svg::document({}, {}, fiber_cycle(zhat.fibers[0]),
                                           "fiber 1 cycle after surgery"));
    }
    return run.suite.all_pass() ? kExitPass : kExitClaimFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anticanonical family toolkit: builds the nine-quadric model from six "
                 "conformal invariants, verifies its geometry, and runs the fiberwise surgery"};
    app.require_subcommand(1);

    CommonOptions common;
    std::vector<std::string> only;
    std::string lambda_text, choices_path, svg_path;
    bool default_choice = false;

    auto add_common = [&](CLI::App* cmd, bool with_choices) {
        cmd->add_option("--lambdas", common.lambdas_path, "file with six increasing rationals")
            ->required();
        cmd->add_option("--json", common.json_path, "write the structured report to this path");
        cmd->add_flag("--quiet", common.quiet, "suppress per-claim output");
        if (with_choices) {
            auto* choices_opt =
                cmd->add_option("--choices", choices_path, "resolution choice file (six symbols)");
            cmd->add_flag("--default", default_choice, "use the default resolution choice")
                ->excludes(choices_opt);
        }
    };

    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    add_common(verify, true);
    verify->add_option("--only", only, "restrict to suites: family, fiber, odp, surgery");

    CLI::App* fiber = app.add_subcommand("fiber", "describe one fiber of the family");
    add_common(fiber, false);
    fiber->add_option("--lambda", lambda_text, "parameter value, rational p/q")->required();
    fiber->add_option("--svg", svg_path, "write a polygon/cycle diagram");

    CLI::App* surgery_cmd = app.add_subcommand("surgery", "run the three-step surgery");
    add_common(surgery_cmd, true);
    surgery_cmd->add_option("--svg", svg_path, "write a cycle diagram of the final state");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (verify->parsed()) return cmd_verify(common, only, choices_path);
        if (fiber->parsed()) return cmd_fiber(common, lambda_text, svg_path);
        return cmd_surgery(common, choices_path, svg_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitClaimFailure;
    }
}
