#include "amerta/errors.hpp"
#include "amerta/indicators.hpp"
#include "amerta/moea.hpp"
#include "amerta/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace amerta {

namespace {

constexpr double kCrossoverRate = 0.9;
constexpr double kMutationRate = 0.2;

// Permutation of task ids 1..n and robot separators n+1..n+r-1.
using Genome = std::vector<int>;

struct Individual {
    Genome genome;
    Solution solution;
};

Solution decode(const Genome& genome, int robots, const Instance& instance,
                const SimulationOptions& sim) {
    const int n = instance.task_count();
    Solution s(robots);
    std::size_t robot = 0;
    Route pending;
    auto flush = [&] {
        if (pending.tasks.empty()) return;
        for (auto& piece : split_at_capacity(pending, instance)) {
            s.robots[robot].push_back(std::move(piece));
        }
        pending = Route{};
    };
    for (int g : genome) {
        if (g > n) {
            flush();
            ++robot;
        } else {
            pending.tasks.push_back(g);
        }
    }
    flush();
    evaluate_solution(s, instance, sim);
    return s;
}

Genome random_genome(int n, int robots, Rng& rng) {
    Genome g(static_cast<std::size_t>(n + robots - 1));
    std::iota(g.begin(), g.end(), 1);
    for (std::size_t i = g.size(); i > 1; --i) {
        std::swap(g[i - 1], g[uniform_index(rng, i)]);
    }
    return g;
}

// Order crossover: the slice [a, b] comes from `p1`, the rest keeps p2's order.
Genome order_crossover(const Genome& p1, const Genome& p2, Rng& rng) {
    const std::size_t len = p1.size();
    std::size_t a = uniform_index(rng, len);
    std::size_t b = uniform_index(rng, len);
    if (a > b) std::swap(a, b);
    Genome child(len, 0);
    std::vector<char> used(len + 2, 0);
    for (std::size_t i = a; i <= b; ++i) {
        child[i] = p1[i];
        used[static_cast<std::size_t>(p1[i])] = 1;
    }
    std::size_t write = (b + 1) % len;
    for (std::size_t k = 0; k < len; ++k) {
        const int gene = p2[(b + 1 + k) % len];
        if (used[static_cast<std::size_t>(gene)]) continue;
        child[write] = gene;
        write = (write + 1) % len;
    }
    return child;
}

void mutate(Genome& g, Rng& rng) {
    if (g.size() < 2) return;
    const std::size_t i = uniform_index(rng, g.size());
    std::size_t j = uniform_index(rng, g.size() - 1);
    if (j >= i) ++j;
    if (coin_flip(rng)) {
        std::swap(g[i], g[j]);
    } else {
        const int gene = g[i];
        g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
        g.insert(g.begin() + static_cast<std::ptrdiff_t>(j), gene);
    }
}

std::vector<ObjectiveVector> objectives_of(const std::vector<Individual>& pop) {
    std::vector<ObjectiveVector> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) out.push_back(ind.solution.objectives);
    return out;
}

// Survivors by rank and crowding over distinct genomes, topped up with repeats.
std::vector<Individual> select(std::vector<Individual> merged, std::size_t pnum) {
    std::map<Genome, std::size_t> seen;
    std::vector<std::size_t> unique;
    std::vector<std::size_t> repeats;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        (seen.emplace(merged[i].genome, i).second ? unique : repeats).push_back(i);
    }
    std::vector<ObjectiveVector> objs;
    for (std::size_t i : unique) objs.push_back(merged[i].solution.objectives);
    std::vector<Individual> out;
    for (std::size_t k : environmental_selection(objs, pnum)) out.push_back(std::move(merged[unique[k]]));
    for (std::size_t k = 0; out.size() < pnum && k < repeats.size(); ++k) {
        out.push_back(std::move(merged[repeats[k]]));
    }
    return out;
}

std::size_t tournament(const FrontPartition& part, Rng& rng) {
    const std::size_t n = part.rank.size();
    const std::size_t a = uniform_index(rng, n);
    const std::size_t b = uniform_index(rng, n);
    if (part.rank[a] != part.rank[b]) return part.rank[a] < part.rank[b] ? a : b;
    return part.crowding[b] > part.crowding[a] ? b : a;
}

std::vector<Solution> solutions_of(const std::vector<Individual>& pop) {
    std::vector<Solution> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) out.push_back(ind.solution);
    return out;
}

} // namespace

RunResult nsga2_baseline_run(const Instance& instance, int robots, const SearchConfig& config,
                             const Budget& budget, const RunOptions& options) {
    config.validate();
    if (robots < 1) throw ConfigError("nsga2: need at least one robot");
    const int threads = std::max(1, options.threads);
    const std::size_t pnum = static_cast<std::size_t>(config.pnum);
    const int n = instance.task_count();
    const auto phase = static_cast<std::uint64_t>(Phase::nsga2);
    detail::BudgetClock clock(budget);

    RunResult res;
    res.seed = config.seed;
    std::vector<Individual> pop(pnum);
    parallel_for(pnum, threads, [&](std::size_t p) {
        Rng rng = make_stream(config.seed, 0, phase, p);
        pop[p].genome = random_genome(n, robots, rng);
        pop[p].solution = decode(pop[p].genome, robots, instance, config.sim);
    });
    const auto init_objs = objectives_of(pop);
    for (std::size_t i : distinct_first_front(init_objs)) res.initial_front.push_back(init_objs[i]);
    const std::vector<std::vector<ObjectiveVector>> init_sets{init_objs};
    const Normalization norm = Normalization::enclosing(init_sets, 0.01);

    int gen = 0;
    while (clock.another_generation(gen)) {
        const FrontPartition part = non_dominated_sort(objectives_of(pop));
        const std::size_t pairs = (pnum + 1) / 2;
        std::vector<Individual> children(2 * pairs);
        parallel_for(pairs, threads, [&](std::size_t k) {
            Rng rng = make_stream(config.seed, static_cast<std::uint64_t>(gen + 1), phase, k);
            const Genome& p1 = pop[tournament(part, rng)].genome;
            const Genome& p2 = pop[tournament(part, rng)].genome;
            Genome c1 = p1;
            Genome c2 = p2;
            if (uniform_real(rng) < kCrossoverRate) {
                c1 = order_crossover(p1, p2, rng);
                c2 = order_crossover(p2, p1, rng);
            }
            if (uniform_real(rng) < kMutationRate) mutate(c1, rng);
            if (uniform_real(rng) < kMutationRate) mutate(c2, rng);
            children[2 * k].solution = decode(c1, robots, instance, config.sim);
            children[2 * k].genome = std::move(c1);
            children[2 * k + 1].solution = decode(c2, robots, instance, config.sim);
            children[2 * k + 1].genome = std::move(c2);
        });
        children.resize(pnum);
        for (auto& c : children) pop.push_back(std::move(c));
        pop = select(std::move(pop), pnum);
        ++gen;

        const auto sols = solutions_of(pop);
        if (options.debug_checks) detail::check_population(sols, instance);
        res.log.push_back(detail::summarize_generation(gen, clock.elapsed(), sols, norm));
        if (options.on_generation) options.on_generation(res.log.back());
        if (options.on_population) options.on_population(gen, sols);
    }

    res.generations = gen;
    res.budget_warning = gen == 0;
    auto sols = solutions_of(pop);
    return detail::finish_run(sols, std::move(res));
}

} // namespace amerta
