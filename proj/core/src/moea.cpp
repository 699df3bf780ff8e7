#include "amerta/moea.hpp"

#include "amerta/errors.hpp"
#include "amerta/indicators.hpp"
#include "amerta/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace amerta {

FrontPartition non_dominated_sort(std::span<const ObjectiveVector> objectives) {
    const std::size_t n = objectives.size();
    FrontPartition out;
    out.rank.assign(n, -1);
    out.crowding.assign(n, 0.0);
    if (n == 0) return out;

    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<int> dominator_count(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(objectives[i], objectives[j])) {
                dominated_by_me[i].push_back(j);
                ++dominator_count[j];
            } else if (dominates(objectives[j], objectives[i])) {
                dominated_by_me[j].push_back(i);
                ++dominator_count[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dominator_count[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        std::sort(current.begin(), current.end());
        const int rank = static_cast<int>(out.fronts.size());
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            out.rank[i] = rank;
            for (std::size_t j : dominated_by_me[i]) {
                if (--dominator_count[j] == 0) next.push_back(j);
            }
        }
        out.fronts.push_back(std::move(current));
        current = std::move(next);
    }
    for (const auto& front : out.fronts) {
        const auto cd = crowding_distance(objectives, front);
        for (std::size_t k = 0; k < front.size(); ++k) out.crowding[front[k]] = cd[k];
    }
    return out;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> objectives,
                                      std::span<const std::size_t> front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t m = front.size();
    std::vector<double> cd(m, 0.0);
    if (m <= 2) {
        std::fill(cd.begin(), cd.end(), inf);
        return cd;
    }
    auto accumulate_axis = [&](auto value) {
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return value(objectives[front[a]]) < value(objectives[front[b]]);
        });
        const double lo = value(objectives[front[order.front()]]);
        const double hi = value(objectives[front[order.back()]]);
        cd[order.front()] = inf;
        cd[order.back()] = inf;
        if (hi - lo <= 0.0) return;
        for (std::size_t k = 1; k + 1 < m; ++k) {
            cd[order[k]] += (value(objectives[front[order[k + 1]]]) -
                             value(objectives[front[order[k - 1]]])) /
                            (hi - lo);
        }
    };
    accumulate_axis([](const ObjectiveVector& v) { return v.energy; });
    accumulate_axis([](const ObjectiveVector& v) { return v.makespan; });
    return cd;
}

std::vector<std::size_t> environmental_selection(std::span<const ObjectiveVector> merged,
                                                 std::size_t pnum) {
    std::vector<std::size_t> chosen;
    if (merged.size() <= pnum) {
        chosen.resize(merged.size());
        std::iota(chosen.begin(), chosen.end(), 0);
        return chosen;
    }
    const FrontPartition part = non_dominated_sort(merged);
    for (const auto& front : part.fronts) {
        if (chosen.size() + front.size() <= pnum) {
            chosen.insert(chosen.end(), front.begin(), front.end());
            if (chosen.size() == pnum) break;
            continue;
        }
        std::vector<std::size_t> order = front;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return part.crowding[a] > part.crowding[b];
        });
        order.resize(pnum - chosen.size());
        chosen.insert(chosen.end(), order.begin(), order.end());
        break;
    }
    return chosen;
}

Budget Budget::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("budget must look like secs:X or gens:X");
    }
    const std::string kind(text.substr(0, colon));
    const std::string value(text.substr(colon + 1));
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(value, &used);
        if (used != value.size()) throw ConfigError("trailing characters");
    } catch (...) {
        throw ConfigError("budget value '" + value + "' is not a number");
    }
    if (!(v >= 0.0)) throw ConfigError("budget value must be non-negative");
    if (kind == "secs") return seconds(v);
    if (kind == "gens") {
        if (v != std::floor(v)) throw ConfigError("generation budget must be an integer");
        return {Kind::generations, v};
    }
    throw ConfigError("budget kind must be secs or gens, got '" + kind + "'");
}

std::string Budget::to_string() const {
    if (kind == Kind::generations) {
        return "gens:" + std::to_string(static_cast<long long>(value));
    }
    std::string s = std::to_string(value);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return "secs:" + s;
}

std::vector<std::size_t> distinct_first_front(std::span<const ObjectiveVector> objectives) {
    if (objectives.empty()) return {};
    const FrontPartition part = non_dominated_sort(objectives);
    std::vector<std::size_t> front = part.fronts.front();
    std::stable_sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = objectives[a];
        const auto& y = objectives[b];
        return x.energy < y.energy || (x.energy == y.energy && x.makespan < y.makespan);
    });
    std::vector<std::size_t> out;
    for (std::size_t i : front) {
        if (!out.empty()) {
            const auto& prev = objectives[out.back()];
            if (std::abs(prev.energy - objectives[i].energy) <= 1e-9 &&
                std::abs(prev.makespan - objectives[i].makespan) <= 1e-9) {
                continue;
            }
        }
        out.push_back(i);
    }
    return out;
}

namespace detail {

std::vector<ObjectiveVector> objectives_of(std::span<const Solution> population) {
    std::vector<ObjectiveVector> out;
    out.reserve(population.size());
    for (const auto& s : population) out.push_back(s.objectives);
    return out;
}

std::vector<Solution> select_population(std::vector<Solution> merged, std::size_t pnum) {
    std::map<std::vector<int>, std::size_t> seen;
    std::vector<std::size_t> unique;
    std::vector<std::size_t> repeats;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (seen.emplace(global_from_layers(merged[i]).items, i).second) {
            unique.push_back(i);
        } else {
            repeats.push_back(i);
        }
    }
    std::vector<ObjectiveVector> objs;
    objs.reserve(unique.size());
    for (std::size_t i : unique) objs.push_back(merged[i].objectives);

    std::vector<Solution> out;
    out.reserve(pnum);
    for (std::size_t k : environmental_selection(objs, pnum)) {
        out.push_back(std::move(merged[unique[k]]));
    }
    for (std::size_t k = 0; out.size() < pnum && k < repeats.size(); ++k) {
        out.push_back(std::move(merged[repeats[k]]));
    }
    return out;
}

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace

BudgetClock::BudgetClock(const Budget& budget) : budget_(budget), start_(now_seconds()) {}

double BudgetClock::elapsed() const { return now_seconds() - start_; }

bool BudgetClock::another_generation(int completed) const {
    if (budget_.kind == Budget::Kind::generations) return completed < budget_.value;
    return elapsed() < budget_.value;
}

void BudgetClock::mark_loop_start() { loop_start_ = elapsed(); }

bool BudgetClock::room_for_iteration(int completed) const {
    if (budget_.kind == Budget::Kind::generations) return completed + 1 < budget_.value;
    const double now = elapsed();
    const double mean_iter = completed > 0 ? (now - loop_start_) / completed : 0.0;
    return now + mean_iter < budget_.value;
}

} // namespace detail

namespace {

using detail::objectives_of;

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.energy <= b.energy + 1e-9 && a.makespan <= b.makespan + 1e-9;
}

// Route-level DRRM per member; a rewritten member is kept only if it is no worse
// in both objectives, which keeps the population front from regressing.
void improve_with_drrm(std::vector<Solution>& pop, const Instance& instance,
                       const SearchConfig& config, int threads) {
    parallel_for(pop.size(), threads, [&](std::size_t i) {
        Solution copy = pop[i];
        if (!drrm_solution(copy, instance, config)) return;
        evaluate_solution(copy, instance, config.sim);
        if (weakly_dominates(copy.objectives, pop[i].objectives)) pop[i] = std::move(copy);
    });
}

std::vector<std::size_t> first_front(std::span<const Solution> pop) {
    const auto objs = objectives_of(pop);
    if (objs.empty()) return {};
    return non_dominated_sort(objs).fronts.front();
}

} // namespace

namespace detail {

void check_population(std::span<const Solution> pop, const Instance& instance) {
    for (const auto& s : pop) {
        const auto v = validate(s, instance);
        if (!v.empty()) {
            throw EncodingError("population check failed: " + std::string(to_string(v[0].kind)) +
                                " at " + v[0].where + ": " + v[0].message);
        }
    }
}

GenerationRecord summarize_generation(int generation, double elapsed,
                                      std::span<const Solution> pop, const Normalization& norm) {
    const auto objs = objectives_of(pop);
    const auto front = distinct_first_front(objs);
    GenerationRecord rec;
    rec.generation = generation;
    rec.elapsed_s = elapsed;
    rec.front_size = front.size();
    rec.best_energy = std::numeric_limits<double>::infinity();
    rec.best_makespan = std::numeric_limits<double>::infinity();
    std::vector<Point2> pts;
    for (std::size_t i : front) {
        rec.best_energy = std::min(rec.best_energy, objs[i].energy);
        rec.best_makespan = std::min(rec.best_makespan, objs[i].makespan);
        pts.push_back(norm.apply(objs[i]));
    }
    rec.hv_runlocal = hypervolume_2d(pts);
    return rec;
}

RunResult finish_run(std::vector<Solution>& pop, RunResult res) {
    const auto objs = objectives_of(pop);
    for (std::size_t i : distinct_first_front(objs)) res.front.push_back(pop[i]);
    return res;
}

} // namespace detail

RunResult hrra_run(const Instance& instance, int robots, const SearchConfig& config,
                   const Budget& budget, const RunOptions& options) {
    config.validate();
    if (robots < 1) throw ConfigError("hrra: need at least one robot");
    const int threads = std::max(1, options.threads);
    detail::BudgetClock clock(budget);

    RunResult res;
    res.seed = config.seed;
    std::vector<Solution> pop = vldim_init(instance, robots, config, threads);
    const auto init_objs = objectives_of(pop);
    for (std::size_t i : distinct_first_front(init_objs)) res.initial_front.push_back(init_objs[i]);
    const std::vector<std::vector<ObjectiveVector>> init_sets{init_objs};
    const Normalization norm = Normalization::enclosing(init_sets, 0.01);

    improve_with_drrm(pop, instance, config, threads);

    int gen = 0;
    clock.mark_loop_start();
    while (clock.another_generation(gen)) {
        improve_with_drrm(pop, instance, config, threads);

        const auto f1 = first_front(pop);
        std::vector<Solution> offspring =
            trrm(pop, f1, config, instance, static_cast<std::uint64_t>(gen + 1), threads);

        std::vector<Solution> stage = pop;
        stage.insert(stage.end(), offspring.begin(), offspring.end());

        // Charging-based reconstruction of the non-dominated members.
        const auto f1_stage = first_front(stage);
        std::vector<std::vector<Solution>> rebuilt(f1_stage.size());
        parallel_for(f1_stage.size(), threads, [&](std::size_t k) {
            const Solution& s = stage[f1_stage[k]];
            if (s.swap_count() > 0) rebuilt[k] = crrm(s, instance, config);
        });
        std::vector<Solution> reconstructed;
        for (auto& group : rebuilt) {
            for (auto& s : group) reconstructed.push_back(std::move(s));
        }

        ++gen;
        std::vector<Solution> split;
        if (clock.room_for_iteration(gen)) {
            stage.insert(stage.end(), reconstructed.begin(), reconstructed.end());
            const auto f1_split = first_front(stage);
            split.resize(f1_split.size());
            parallel_for(f1_split.size(), threads, [&](std::size_t k) {
                Rng rng = make_stream(config.seed, static_cast<std::uint64_t>(gen),
                                      static_cast<std::uint64_t>(Phase::srrm), k);
                split[k] = srrm(stage[f1_split[k]], instance, config, rng);
            });
        }

        std::vector<Solution> merged = std::move(pop);
        for (auto* group : {&offspring, &reconstructed, &split}) {
            for (auto& s : *group) merged.push_back(std::move(s));
        }
        pop = detail::select_population(std::move(merged), static_cast<std::size_t>(config.pnum));

        if (options.debug_checks) detail::check_population(pop, instance);
        res.log.push_back(detail::summarize_generation(gen, clock.elapsed(), pop, norm));
        if (options.on_generation) options.on_generation(res.log.back());
        if (options.on_population) options.on_population(gen, pop);
    }

    res.generations = gen;
    res.budget_warning = gen == 0;
    return detail::finish_run(pop, std::move(res));
}

} // namespace amerta
