#include "amerta/search.hpp"

#include "amerta/errors.hpp"
#include "amerta/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace amerta {

namespace {

constexpr double kTol = 1e-9;

struct RouteScore {
    double time = 0.0;
    double energy = 0.0;
};

RouteScore score(const Route& route, const Instance& instance, const SimulationOptions& sim) {
    const RouteCost c = simulate_route(route, instance.params.battery_capacity, instance, sim);
    return {c.time, c.energy};
}

bool pareto_better(const RouteScore& a, const RouteScore& b) {
    return dominates({a.energy, a.time}, {b.energy, b.time}, kTol);
}

double max_yield(const Instance& instance) {
    double m = 0.0;
    for (const auto& n : instance.nodes) m = std::max(m, n.yield);
    return m;
}

// Robot owning the largest completion time, lowest index on ties.
int longest_robot(const Solution& s) {
    int best = 0;
    for (int r = 1; r < s.robot_count(); ++r) {
        if (s.robot_time[static_cast<std::size_t>(r)] >
            s.robot_time[static_cast<std::size_t>(best)] + kTol) {
            best = r;
        }
    }
    return best;
}

// Locates the k-th task (in execution order) of robot r as (route, position).
std::pair<std::size_t, std::size_t> locate(const Solution& s, int r, std::size_t k) {
    const auto& routes = s.robots[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < routes.size(); ++i) {
        if (k < routes[i].size()) return {i, k};
        k -= routes[i].size();
    }
    throw std::out_of_range("locate: task index past end of robot");
}

std::size_t task_count(const Solution& s, int r) {
    std::size_t n = 0;
    for (const auto& route : s.robots[static_cast<std::size_t>(r)]) n += route.size();
    return n;
}

void repair_capacity(std::vector<Route>& routes, const Instance& instance) {
    std::vector<Route> out;
    for (auto& route : routes) {
        if (route.tasks.empty()) continue;
        if (route.load(instance) > instance.params.load_capacity + kTol) {
            for (auto& piece : split_at_capacity(route, instance)) out.push_back(std::move(piece));
        } else {
            out.push_back(std::move(route));
        }
    }
    routes = std::move(out);
}

void task_exchange(Solution& s, const Instance& instance, Rng& rng) {
    std::vector<int> busy;
    for (int r = 0; r < s.robot_count(); ++r) {
        if (task_count(s, r) > 0) busy.push_back(r);
    }
    if (busy.size() < 2) return;
    const std::size_t a_pick = uniform_index(rng, busy.size());
    std::size_t b_pick = uniform_index(rng, busy.size() - 1);
    if (b_pick >= a_pick) ++b_pick;
    const int a = busy[a_pick];
    const int b = busy[b_pick];

    const auto [ra, pa] = locate(s, a, uniform_index(rng, task_count(s, a)));
    const auto [rb, pb] = locate(s, b, uniform_index(rng, task_count(s, b)));
    auto& route_a = s.robots[static_cast<std::size_t>(a)][ra];
    auto& route_b = s.robots[static_cast<std::size_t>(b)][rb];
    std::swap(route_a.tasks[pa], route_b.tasks[pb]);
    route_a.invalidate();
    route_b.invalidate();
    repair_capacity(s.robots[static_cast<std::size_t>(a)], instance);
    repair_capacity(s.robots[static_cast<std::size_t>(b)], instance);
}

void task_reallocation(Solution& s, const Instance& instance, const SimulationOptions& sim,
                       Rng& rng) {
    if (s.robot_count() < 2) return;
    const int source = longest_robot(s);
    const std::size_t n_source = task_count(s, source);
    if (n_source == 0) return;
    std::size_t target_pick = uniform_index(rng, static_cast<std::size_t>(s.robot_count() - 1));
    const int target = static_cast<int>(target_pick) >= source ? static_cast<int>(target_pick) + 1
                                                               : static_cast<int>(target_pick);

    auto& src_routes = s.robots[static_cast<std::size_t>(source)];
    const auto [ri, pi] = locate(s, source, uniform_index(rng, n_source));
    const int task = src_routes[ri].tasks[pi];
    src_routes[ri].tasks.erase(src_routes[ri].tasks.begin() + static_cast<std::ptrdiff_t>(pi));
    src_routes[ri].invalidate();
    if (src_routes[ri].tasks.empty()) {
        src_routes.erase(src_routes.begin() + static_cast<std::ptrdiff_t>(ri));
    }

    // Cheapest feasible insertion by added route energy; a fresh trip is the fallback.
    auto& dst_routes = s.robots[static_cast<std::size_t>(target)];
    const double q = instance.yield(task);
    Route alone({task});
    double best_delta = score(alone, instance, sim).energy;
    std::size_t best_route = dst_routes.size();
    std::size_t best_pos = 0;
    for (std::size_t k = 0; k < dst_routes.size(); ++k) {
        const Route& route = dst_routes[k];
        if (route.load(instance) + q > instance.params.load_capacity + kTol) continue;
        const double before = score(route, instance, sim).energy;
        for (std::size_t pos = 0; pos <= route.size(); ++pos) {
            Route cand = route;
            cand.tasks.insert(cand.tasks.begin() + static_cast<std::ptrdiff_t>(pos), task);
            const double delta = score(cand, instance, sim).energy - before;
            if (delta < best_delta - kTol) {
                best_delta = delta;
                best_route = k;
                best_pos = pos;
            }
        }
    }
    if (best_route == dst_routes.size()) {
        dst_routes.push_back(std::move(alone));
    } else {
        auto& route = dst_routes[best_route];
        route.tasks.insert(route.tasks.begin() + static_cast<std::ptrdiff_t>(best_pos), task);
        route.invalidate();
    }
}

// Robot-level reassembly: each robot executes its assigned pool routes in pool order.
Solution from_assignment(std::vector<Route> pool, const std::vector<int>& item_to_robot,
                         int robots) {
    Solution s(robots);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        s.robots[static_cast<std::size_t>(item_to_robot[i])].push_back(std::move(pool[i]));
    }
    return s;
}

std::vector<double> cached_times(const std::vector<Route>& routes) {
    std::vector<double> t;
    t.reserve(routes.size());
    for (const auto& r : routes) t.push_back(r.time);
    return t;
}

} // namespace

void SearchConfig::validate() const {
    if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("search: theta must lie in (0, 1]");
    if (pnum < 2) throw ConfigError("search: population size must be at least 2");
    if (trrm_move_count < 1) throw ConfigError("search: trrm_move_count must be positive");
    if (two_opt_pass_limit < 1) throw ConfigError("search: two_opt_pass_limit must be positive");
    if (crrm_patterns < 1) throw ConfigError("search: crrm_patterns must be positive");
}

double load_limit(int p, const SearchConfig& config, double capacity) {
    return capacity * (1.0 - (1.0 - config.theta) / static_cast<double>(config.pnum) *
                                 static_cast<double>(p));
}

std::vector<Route> split_at_capacity(const Route& route, const Instance& instance) {
    std::vector<Route> out;
    Route current;
    double load = 0.0;
    for (int t : route.tasks) {
        const double q = instance.yield(t);
        if (!current.tasks.empty() && load + q > instance.params.load_capacity + kTol) {
            out.push_back(std::move(current));
            current = Route{};
            load = 0.0;
        }
        current.tasks.push_back(t);
        load += q;
    }
    if (!current.tasks.empty()) out.push_back(std::move(current));
    return out;
}

std::vector<Route> build_routes_greedy(std::span<const int> tasks, double limit,
                                       const Instance& instance) {
    std::vector<int> open(tasks.begin(), tasks.end());
    std::sort(open.begin(), open.end());
    std::vector<Route> routes;
    while (!open.empty()) {
        Route route;
        double load = 0.0;
        int cur = kDepot;
        for (;;) {
            auto pick = open.end();
            double pick_d = std::numeric_limits<double>::infinity();
            for (auto it = open.begin(); it != open.end(); ++it) {
                if (load + instance.yield(*it) > limit + kTol) continue;
                const double d = instance.distance(cur, *it);
                if (d < pick_d) { // strict: open is id-sorted, so ties keep the lowest id
                    pick_d = d;
                    pick = it;
                }
            }
            if (pick == open.end()) break;
            cur = *pick;
            load += instance.yield(cur);
            route.tasks.push_back(cur);
            open.erase(pick);
        }
        if (route.tasks.empty()) {
            throw ConfigError("route construction: load limit below a task yield");
        }
        refresh_route_cache(route, instance);
        routes.push_back(std::move(route));
    }
    return routes;
}

Solution assign_routes(std::vector<Route> routes, int robots, const Instance& instance, Rng& rng,
                       std::uint64_t node_budget) {
    for (auto& r : routes) {
        if (!r.cache_valid) refresh_route_cache(r, instance);
    }
    if (static_cast<int>(routes.size()) >= robots) {
        const auto times = cached_times(routes);
        const AssignmentResult res = solve_milp1(times, robots, node_budget);
        return from_assignment(std::move(routes), res.item_to_robot, robots);
    }
    while (static_cast<int>(routes.size()) < robots) {
        std::size_t longest = routes.size();
        for (std::size_t k = 0; k < routes.size(); ++k) {
            if (routes[k].size() < 2) continue;
            if (longest == routes.size() || routes[k].time > routes[longest].time + kTol) {
                longest = k;
            }
        }
        if (longest == routes.size()) break; // nothing left to split
        auto [head, tail] = split_balanced(routes[longest], instance, coin_flip(rng));
        routes[longest] = std::move(head);
        routes.insert(routes.begin() + static_cast<std::ptrdiff_t>(longest) + 1, std::move(tail));
    }
    Solution s(robots);
    for (std::size_t k = 0; k < routes.size(); ++k) s.robots[k].push_back(std::move(routes[k]));
    return s;
}

std::vector<Solution> vldim_init(const Instance& instance, int robots, const SearchConfig& config,
                                 int threads) {
    config.validate();
    if (robots < 1) throw ConfigError("vldim: need at least one robot");
    std::vector<int> all(static_cast<std::size_t>(instance.task_count()));
    std::iota(all.begin(), all.end(), 1);
    const double floor_limit = max_yield(instance);

    std::vector<Solution> pop(static_cast<std::size_t>(config.pnum));
    parallel_for(pop.size(), threads, [&](std::size_t p) {
        Rng rng = make_stream(config.seed, 0, static_cast<std::uint64_t>(Phase::init), p);
        const double limit = std::max(
            load_limit(static_cast<int>(p), config, instance.params.load_capacity), floor_limit);
        auto routes = build_routes_greedy(all, limit, instance);
        pop[p] = assign_routes(std::move(routes), robots, instance, rng, config.node_budget);
        evaluate_solution(pop[p], instance, config.sim);
    });
    return pop;
}

Route two_opt_step(const Route& route, int i, int j) {
    const int len = static_cast<int>(route.tasks.size());
    if (i < 0 || j < i || j >= len) {
        throw std::out_of_range("two_opt_step: need 0 <= i <= j < route length");
    }
    Route out(route.tasks);
    std::reverse(out.tasks.begin() + i, out.tasks.begin() + j + 1);
    return out;
}

Route two_opt(const Route& route, const Instance& instance, int pass_limit,
              const SimulationOptions& sim) {
    Route cur(route.tasks);
    RouteScore cur_score = score(cur, instance, sim);
    const int len = static_cast<int>(cur.tasks.size());
    for (int pass = 0; pass < pass_limit; ++pass) {
        bool improved = false;
        for (int i = 0; i + 1 < len; ++i) {
            for (int j = i + 1; j < len; ++j) {
                Route cand = two_opt_step(cur, i, j);
                const RouteScore s = score(cand, instance, sim);
                if (pareto_better(s, cur_score)) {
                    cur = std::move(cand);
                    cur_score = s;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    cur.time = cur_score.time;
    cur.energy = cur_score.energy;
    cur.cache_valid = true;
    return cur;
}

Route drrm(const Route& route, const Instance& instance, const SearchConfig& config) {
    Route sorted(route.tasks);
    std::stable_sort(sorted.tasks.begin(), sorted.tasks.end(), [&](int a, int b) {
        const double da = instance.distance(kDepot, a);
        const double db = instance.distance(kDepot, b);
        return da > db || (da == db && a < b);
    });
    Route best = two_opt(sorted, instance, config.two_opt_pass_limit, config.sim);
    const RouteScore original = score(route, instance, config.sim);
    if (pareto_better(original, {best.time, best.energy})) {
        best = two_opt(route, instance, config.two_opt_pass_limit, config.sim);
    }
    return best;
}

bool drrm_solution(Solution& solution, const Instance& instance, const SearchConfig& config) {
    bool changed = false;
    for (auto& routes : solution.robots) {
        for (auto& route : routes) {
            if (route.size() < 2) continue;
            Route better = drrm(route, instance, config);
            if (better.tasks != route.tasks) {
                route = std::move(better);
                changed = true;
            }
        }
    }
    if (changed) solution.mark_dirty();
    return changed;
}

Solution trrm_offspring(const Solution& parent, const Instance& instance,
                        const SearchConfig& config, Rng& rng) {
    Solution child = parent;
    for (int m = 0; m < config.trrm_move_count; ++m) {
        if (coin_flip(rng)) {
            task_exchange(child, instance, rng);
        } else {
            if (!child.evaluated) evaluate_solution(child, instance, config.sim);
            task_reallocation(child, instance, config.sim, rng);
        }
        child.mark_dirty();
    }
    evaluate_solution(child, instance, config.sim);
    return child;
}

std::vector<Solution> trrm(std::span<const Solution> population,
                           std::span<const std::size_t> front, const SearchConfig& config,
                           const Instance& instance, std::uint64_t generation, int threads) {
    std::vector<Solution> out(front.size());
    parallel_for(front.size(), threads, [&](std::size_t k) {
        Rng rng = make_stream(config.seed, generation, static_cast<std::uint64_t>(Phase::trrm), k);
        out[k] = trrm_offspring(population[front[k]], instance, config, rng);
    });
    return out;
}

std::vector<Solution> crrm(const Solution& solution, const Instance& instance,
                           const SearchConfig& config) {
    if (!solution.evaluated || solution.swap_count() == 0) return {solution};

    const int robots = solution.robot_count();
    std::vector<std::vector<Route>> kept(static_cast<std::size_t>(robots));
    std::vector<double> initial(static_cast<std::size_t>(robots), 0.0);
    std::vector<int> pool;

    for (int r = 0; r < robots; ++r) {
        const auto ru = static_cast<std::size_t>(r);
        const auto& routes = solution.robots[ru];
        std::size_t trips_kept = 0;
        if (!solution.charging_positions[ru].empty()) {
            // Trips completed up to and including the depot visit of the last swap.
            const int last = solution.charging_positions[ru].back();
            const auto& seq = solution.robot_tasks[ru];
            trips_kept = static_cast<std::size_t>(
                std::count(seq.begin() + 1, seq.begin() + last + 1, kDepot));
        }
        kept[ru].assign(routes.begin(), routes.begin() + static_cast<std::ptrdiff_t>(trips_kept));
        if (trips_kept > 0) initial[ru] = simulate_robot(kept[ru], instance, config.sim).total_time;
        for (std::size_t k = trips_kept; k < routes.size(); ++k) {
            pool.insert(pool.end(), routes[k].tasks.begin(), routes[k].tasks.end());
        }
    }

    const double q = instance.params.load_capacity;
    const double floor_limit = max_yield(instance);
    std::vector<Solution> out;
    for (int pattern = 0; pattern < config.crrm_patterns; ++pattern) {
        const double ratio = config.crrm_patterns == 1
                                 ? 1.0
                                 : 1.0 - (1.0 - config.theta) * pattern / (config.crrm_patterns - 1);
        auto segments = build_routes_greedy(pool, std::max(q * ratio, floor_limit), instance);
        for (auto& seg : segments) seg = drrm(seg, instance, config);
        const auto times = cached_times(segments);
        const AssignmentResult res =
            solve_milp2(times, initial, instance.params.swap_time, config.node_budget);

        Solution child(robots);
        child.robots = kept;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            child.robots[static_cast<std::size_t>(res.item_to_robot[i])].push_back(segments[i]);
        }
        evaluate_solution(child, instance, config.sim);
        out.push_back(std::move(child));
    }
    return out;
}

Solution srrm(const Solution& solution, const Instance& instance, const SearchConfig& config,
              Rng& rng) {
    std::vector<Route> pool = solution.route_pool();
    if (pool.empty()) return solution;
    for (auto& r : pool) {
        if (!r.cache_valid) refresh_route_cache(r, instance, config.sim);
    }
    std::size_t longest = 0;
    for (std::size_t k = 1; k < pool.size(); ++k) {
        if (pool[k].time > pool[longest].time + kTol) longest = k;
    }
    if (pool[longest].size() < 2) return solution;

    auto [head, tail] = split_balanced(pool[longest], instance, coin_flip(rng));
    pool[longest] = std::move(head);
    pool.insert(pool.begin() + static_cast<std::ptrdiff_t>(longest) + 1, std::move(tail));

    const auto times = cached_times(pool);
    const AssignmentResult res = solve_milp1(times, solution.robot_count(), config.node_budget);
    Solution child = from_assignment(std::move(pool), res.item_to_robot, solution.robot_count());
    evaluate_solution(child, instance, config.sim);
    return child;
}

} // namespace amerta
