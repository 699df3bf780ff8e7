#include <amerta/assignment.hpp>
#include <amerta/indicators.hpp>
#include <amerta/moea.hpp>
#include <amerta/search.hpp>
#include <amerta/simulator.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace amerta;

namespace {

Instance instance_of(int n, int side) {
    GeneratorSpec spec;
    spec.grid = {side, side};
    spec.task_count = n;
    spec.seed = 7;
    return generate_instance(spec);
}

void BM_SimulateRobot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = instance_of(n, 40);
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    const auto routes = build_routes_greedy(all, inst.params.load_capacity, inst);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_robot(routes, inst));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SimulateRobot)->Arg(40)->Arg(160)->Arg(720);

void BM_Milp1(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> len(100.0, 2000.0);
    std::vector<double> times(static_cast<std::size_t>(state.range(0)));
    for (auto& t : times) t = len(rng);
    for (auto _ : state) benchmark::DoNotOptimize(solve_milp1(times, 4));
}
BENCHMARK(BM_Milp1)->Arg(8)->Arg(12)->Arg(16);

void BM_Drrm(benchmark::State& state) {
    const Instance inst = instance_of(40, 20);
    std::vector<int> tasks;
    double load = 0.0;
    for (int t = 1; t <= inst.task_count() && load + inst.yield(t) <= 300.0; ++t) {
        tasks.push_back(t);
        load += inst.yield(t);
    }
    const Route route(tasks);
    for (auto _ : state) benchmark::DoNotOptimize(drrm(route, inst));
}
BENCHMARK(BM_Drrm);

void BM_NonDominatedSort(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ObjectiveVector> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts) p = {u(rng), u(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(non_dominated_sort(pts));
}
BENCHMARK(BM_NonDominatedSort)->Arg(60)->Arg(240);

void BM_Hypervolume(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts) p = {u(rng), u(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(hypervolume_2d(pts));
}
BENCHMARK(BM_Hypervolume)->Arg(30)->Arg(500);

void BM_HrraGeneration(benchmark::State& state) {
    const Instance inst = instance_of(40, 20);
    SearchConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(hrra_run(inst, 4, cfg, Budget::generations(10)));
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_HrraGeneration)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
