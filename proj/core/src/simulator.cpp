#include "amerta/simulator.hpp"

#include "amerta/errors.hpp"
#include "amerta/parallel.hpp"

#include <algorithm>
#include <deque>

namespace amerta {

namespace {

constexpr double kEnergyTol = 1e-9;

void check_capacity(const Route& route, const Instance& instance) {
    if (route.load(instance) > instance.params.load_capacity + 1e-9) {
        throw SimulationError("route load exceeds capacity");
    }
}

} // namespace

double lookahead_energy(int from, int to, double load, const Instance& instance,
                        LookaheadMode mode) {
    const Params& p = instance.params;
    const double q = instance.yield(to);
    double need = travel_energy(instance.distance(from, to), load, p) + picking_cost(q, p).energy;
    if (mode == LookaheadMode::with_return) {
        need += travel_energy(instance.distance(to, kDepot), load + q, p);
    }
    return need;
}

RouteCost simulate_route(const Route& route, double start_battery, const Instance& instance,
                         const SimulationOptions& options) {
    check_capacity(route, instance);
    const Params& p = instance.params;
    RouteCost cost;
    double battery = start_battery;
    double load = 0.0;
    int cur = kDepot;
    for (std::size_t k = 0; k < route.tasks.size(); ++k) {
        const int next = route.tasks[k];
        if (cost.feasible &&
            battery + kEnergyTol < lookahead_energy(cur, next, load, instance, options.lookahead)) {
            cost.feasible = false;
            cost.fail_index = static_cast<int>(k);
        }
        const double leg = travel_energy(instance.distance(cur, next), load, p);
        const PickingCost pick = picking_cost(instance.yield(next), p);
        cost.energy += leg + pick.energy;
        cost.time += leg / p.max_power + pick.time;
        battery -= leg + pick.energy;
        load += instance.yield(next);
        cur = next;
    }
    const double back = travel_energy(instance.distance(cur, kDepot), load, p);
    cost.energy += back;
    cost.time += back / p.max_power;
    cost.end_battery = battery - back;
    return cost;
}

RobotTrace simulate_robot(std::span<const Route> routes, const Instance& instance,
                          const SimulationOptions& options) {
    const Params& p = instance.params;
    RobotTrace tr;
    if (routes.empty()) return tr;
    for (const auto& r : routes) check_capacity(r, instance);

    std::deque<std::vector<int>> pending;
    for (const auto& r : routes) {
        if (!r.tasks.empty()) pending.push_back(r.tasks);
    }
    if (pending.empty()) return tr;

    double battery = p.battery_capacity;
    double time = 0.0;
    double energy = 0.0;
    tr.events.push_back({kDepot, battery, battery, 0.0, false, false, 0.0, 0.0});

    auto swap_at_last_event = [&](bool forced) {
        TraceEvent& ev = tr.events.back();
        ev.swapped = true;
        ev.forced_swap = forced;
        battery = p.battery_capacity;
        time += p.swap_time;
        ev.battery = battery;
        ev.elapsed_time = time;
        ++tr.swap_count;
        if (forced) ++tr.forced_swap_count;
    };

    while (!pending.empty()) {
        std::vector<int> trip = std::move(pending.front());
        pending.pop_front();

        std::vector<int> executed;
        double load = 0.0;
        int cur = kDepot;
        for (std::size_t k = 0; k < trip.size();) {
            const int next = trip[k];
            const double need = lookahead_energy(cur, next, load, instance, options.lookahead);
            if (battery + kEnergyTol < need) {
                if (cur != kDepot) {
                    pending.emplace_front(trip.begin() + static_cast<std::ptrdiff_t>(k), trip.end());
                    ++tr.truncation_count;
                    break;
                }
                // Standing at the depot: only a fresh battery can help.
                if (battery < p.battery_capacity) {
                    swap_at_last_event(true);
                    continue;
                }
                throw InfeasibleInstance("task " + std::to_string(next) +
                                             " cannot be served from a full battery",
                                         next);
            }
            const double leg = travel_energy(instance.distance(cur, next), load, p);
            battery -= leg;
            energy += leg;
            time += leg / p.max_power;
            tr.travel_energy += leg;
            tr.travel_time += leg / p.max_power;
            const double arrival = battery;

            const PickingCost pick = picking_cost(instance.yield(next), p);
            battery -= pick.energy;
            energy += pick.energy;
            time += pick.time;
            tr.pick_energy += pick.energy;
            tr.pick_time += pick.time;
            load += instance.yield(next);

            tr.events.push_back({next, arrival, battery, load, false, false, time, energy});
            executed.push_back(next);
            cur = next;
            ++k;
        }

        const double back = travel_energy(instance.distance(cur, kDepot), load, p);
        battery -= back;
        energy += back;
        time += back / p.max_power;
        tr.travel_energy += back;
        tr.travel_time += back / p.max_power;
        tr.events.push_back({kDepot, battery, battery, 0.0, false, false, time, energy});
        tr.trips.push_back(std::move(executed));

        // No swap at the robot's final depot arrival.
        if (!pending.empty() && battery <= p.battery_threshold) swap_at_last_event(false);
    }

    tr.total_time = time;
    tr.total_energy = energy;
    return tr;
}

void refresh_route_cache(Route& route, const Instance& instance,
                         const SimulationOptions& options) {
    const RouteCost c = simulate_route(route, instance.params.battery_capacity, instance, options);
    route.time = c.time;
    route.energy = c.energy;
    route.cache_valid = true;
}

ObjectiveVector evaluate_solution(Solution& s, const Instance& instance,
                                  const SimulationOptions& options) {
    const auto r_count = s.robots.size();
    s.robot_tasks.assign(r_count, {});
    s.robot_energy.assign(r_count, 0.0);
    s.robot_time.assign(r_count, 0.0);
    s.charging_positions.assign(r_count, {});

    ObjectiveVector obj;
    for (std::size_t r = 0; r < r_count; ++r) {
        auto& routes = s.robots[r];
        const RobotTrace tr = simulate_robot(routes, instance, options);

        for (std::size_t k = 0; k < tr.events.size(); ++k) {
            s.robot_tasks[r].push_back(tr.events[k].node);
            if (tr.events[k].swapped) s.charging_positions[r].push_back(static_cast<int>(k));
        }
        s.robot_energy[r] = tr.total_energy;
        s.robot_time[r] = tr.total_time;
        obj.energy += tr.total_energy;
        obj.makespan = std::max(obj.makespan, tr.total_time);

        // Keep layer 1 in step with what was executed; untouched trips keep their cache.
        bool same = tr.trips.size() == routes.size();
        for (std::size_t k = 0; same && k < routes.size(); ++k) {
            same = routes[k].tasks == tr.trips[k];
        }
        if (!same) {
            std::vector<Route> rebuilt;
            rebuilt.reserve(tr.trips.size());
            for (const auto& trip : tr.trips) {
                auto it = std::find_if(routes.begin(), routes.end(),
                                       [&](const Route& old) { return old.tasks == trip; });
                rebuilt.push_back(it != routes.end() ? *it : Route(trip));
            }
            routes = std::move(rebuilt);
        }
        for (auto& route : routes) {
            if (!route.cache_valid) refresh_route_cache(route, instance, options);
        }
    }
    s.objectives = obj;
    s.evaluated = true;
    return obj;
}

void evaluate_all(std::span<Solution> population, const Instance& instance, int threads,
                  const SimulationOptions& options) {
    parallel_for(population.size(), threads, [&](std::size_t i) {
        evaluate_solution(population[i], instance, options);
    });
}

} // namespace amerta
