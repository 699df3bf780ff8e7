#pragma once

#include "amerta/model.hpp"

#include <string>
#include <vector>

namespace amerta {

inline constexpr int kRouteSeparator = 0;
inline constexpr int kRobotSeparator = -1;

/// (E_total kJ, T_max s); both objectives are minimised.
struct ObjectiveVector {
    double energy = 0.0;
    double makespan = 0.0;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// One depot-to-depot trip. Depot endpoints are implicit: `tasks` never holds 0.
/// `time`/`energy` cache the trip's cost from a full battery with an empty load.
struct Route {
    std::vector<int> tasks;
    double time = 0.0;
    double energy = 0.0;
    bool cache_valid = false;

    Route() = default;
    explicit Route(std::vector<int> t) : tasks(std::move(t)) {}

    double load(const Instance& instance) const;
    void invalidate() noexcept { cache_valid = false; }
    std::size_t size() const noexcept { return tasks.size(); }
};

/// Separator-encoded layer-2 sequence: task ids, 0 between trips of one robot,
/// -1 between robots.
struct GlobalSequence {
    std::vector<int> items;

    int robot_count() const;
    friend bool operator==(const GlobalSequence&, const GlobalSequence&) = default;
};

/// Two-layer individual. Layer 1 is the route pool, kept grouped by owning robot
/// in execution order; layer 2 metrics are filled in by evaluate_solution.
struct Solution {
    std::vector<std::vector<Route>> robots;

    // Executed node sequence per robot, depot visits included ([0, a, b, 0, c, 0]).
    std::vector<std::vector<int>> robot_tasks;
    std::vector<double> robot_energy;
    std::vector<double> robot_time;
    // Indices into robot_tasks[r] of depot visits where the battery was swapped.
    std::vector<std::vector<int>> charging_positions;
    ObjectiveVector objectives;
    bool evaluated = false;

    Solution() = default;
    explicit Solution(int robot_count) : robots(static_cast<std::size_t>(robot_count)) {}

    int robot_count() const noexcept { return static_cast<int>(robots.size()); }
    int route_count() const noexcept;
    int swap_count() const noexcept;

    /// Flattened route pool in robot order.
    std::vector<Route> route_pool() const;
    /// Task ids of robot `r` in execution order (no depot markers).
    std::vector<int> tasks_of(int r) const;

    /// Drops layer-2 metrics after a structural edit.
    void mark_dirty() noexcept { evaluated = false; }
};

/// Splits a separator sequence into robots and routes. Caches are left invalid.
/// Throws EncodingError (carrying the offending id) on duplicates, unknown ids,
/// missing tasks or empty routes.
Solution layers_from_global(const GlobalSequence& seq, const Instance& instance);

GlobalSequence global_from_layers(const Solution& solution);

struct Violation {
    enum class Kind { coverage, duplicate, unknown_task, capacity, empty_route, objectives, charging };
    Kind kind;
    std::string where;
    std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// Empty iff coverage, capacity and grammar invariants hold (plus the metric
/// invariants when the solution has been evaluated).
std::vector<Violation> validate(const Solution& solution, const Instance& instance);

/// True when `a` is no worse than `b` in both objectives and strictly better in one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, double tol = 1e-9) noexcept;

} // namespace amerta
