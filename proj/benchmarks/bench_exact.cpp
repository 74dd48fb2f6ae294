#include <benchmark/benchmark.h>

#include "twistor/exact_matrix.hpp"
#include "twistor/family.hpp"
#include "twistor/pipeline.hpp"

using namespace twistor;

namespace {

const family::FamilyModel& model() {
    static family::FamilyModel fm(family::ConformalInvariant({1, 2, 3, 4, 5, 6}));
    return fm;
}

void BM_coefficient_product(benchmark::State& state) {
    const auto& c = model().coefficients();
    for (auto _ : state) {
        Polynomial abc = c.a * c.b * c.c;
        benchmark::DoNotOptimize(abc);
    }
}
BENCHMARK(BM_coefficient_product);

void BM_build_family(benchmark::State& state) {
    family::ConformalInvariant ci({1, 2, 3, 4, 5, 6});
    for (auto _ : state) {
        family::FamilyModel fm(ci);
        benchmark::DoNotOptimize(fm.generators());
    }
}
BENCHMARK(BM_build_family);

void BM_jacobian_rank(benchmark::State& state) {
    auto param = model().generic_fiber_parametrization(0);
    VarSetPtr chart = make_vars({"l", "x1", "x2", "x3", "x4", "x5", "x6"});
    std::vector<Polynomial> system;
    for (const Polynomial& g : model().generators())
        system.push_back(g.bind("x0", GaussianRational(1)).project(chart));
    auto p = family::param_point(param, GaussianRational(2), GaussianRational(3),
                                 GaussianRational(0));
    std::map<std::string, GaussianRational> at{{"l", p.lambda}};
    for (int coord = 1; coord <= 6; ++coord) at["x" + std::to_string(coord)] = p.x[coord];
    for (auto _ : state) {
        int r = rank(jacobian_at(system, at));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_jacobian_rank);

void BM_verify_odp(benchmark::State& state) {
    auto candidates = model().singular_candidates();
    for (auto _ : state) {
        bool ok = model().verify_odp(candidates.front());
        benchmark::DoNotOptimize(ok);
    }
}
BENCHMARK(BM_verify_odp);

void BM_pipeline(benchmark::State& state) {
    auto choice = surgery::ResolutionChoice::default_choice(model());
    for (auto _ : state) {
        auto run = surgery::run_pipeline(model(), choice);
        benchmark::DoNotOptimize(run.completed);
    }
}
BENCHMARK(BM_pipeline);

}  // namespace

BENCHMARK_MAIN();
