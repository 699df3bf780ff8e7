#pragma once

#include "amerta/encoding.hpp"
#include "amerta/model.hpp"

#include <span>
#include <vector>

namespace amerta {

/// Energy check made before leaving a node for the next task.
enum class LookaheadMode {
    /// Leg + picking + the loaded return leg to the depot must fit in the battery.
    with_return,
    /// Leg + picking only. The return leg may then drain the battery below zero.
    reach_and_serve,
};

struct SimulationOptions {
    LookaheadMode lookahead = LookaheadMode::with_return;
};

struct RouteCost {
    double time = 0.0;
    double energy = 0.0;
    double end_battery = 0.0;
    bool feasible = true;
    int fail_index = -1; // first task index whose lookahead failed
};

/// One trip depot -> tasks -> depot with an empty start load. Costs are always
/// computed for the whole trip; `feasible` reports whether the lookahead held.
/// Throws SimulationError if the trip exceeds the load capacity.
RouteCost simulate_route(const Route& route, double start_battery, const Instance& instance,
                         const SimulationOptions& options = {});

/// Energy the lookahead requires before departing `from` (carrying `load`) to serve `to`.
double lookahead_energy(int from, int to, double load, const Instance& instance,
                        LookaheadMode mode);

struct TraceEvent {
    int node = kDepot;
    double battery_arrival = 0.0; // before picking / swapping
    double battery = 0.0;         // on departure (after picking or swap)
    double load = 0.0;            // on departure
    bool swapped = false;
    bool forced_swap = false;     // swap above threshold because the next task was out of reach
    double elapsed_time = 0.0;    // s, after this event's service
    double cumulative_energy = 0.0;
};

struct RobotTrace {
    std::vector<TraceEvent> events;
    std::vector<std::vector<int>> trips; // trips as actually executed
    double total_time = 0.0;
    double total_energy = 0.0;
    double travel_energy = 0.0;
    double pick_energy = 0.0;
    double travel_time = 0.0;
    double pick_time = 0.0;
    int swap_count = 0;
    int forced_swap_count = 0;
    int truncation_count = 0;
};

/// Replays one robot's trips from a full battery. On each depot arrival with
/// tasks remaining and battery <= B_th the battery is swapped. A trip whose next
/// task fails the lookahead is cut short; its remaining tasks run as a new trip.
/// Throws InfeasibleInstance if a task cannot be served from a full battery.
RobotTrace simulate_robot(std::span<const Route> routes, const Instance& instance,
                          const SimulationOptions& options = {});

/// Recomputes a route's cached time and energy (full battery, empty load).
void refresh_route_cache(Route& route, const Instance& instance,
                         const SimulationOptions& options = {});

/// Simulates every robot, fills the layer-2 metrics, replaces each robot's routes
/// with the trips it actually executed and refreshes stale route caches.
ObjectiveVector evaluate_solution(Solution& solution, const Instance& instance,
                                  const SimulationOptions& options = {});

/// Parallel evaluate_solution over a population; results do not depend on `threads`.
void evaluate_all(std::span<Solution> population, const Instance& instance, int threads,
                  const SimulationOptions& options = {});

} // namespace amerta
