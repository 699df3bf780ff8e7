#pragma once

#include "amerta/encoding.hpp"
#include "amerta/model.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace amerta {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

struct AssignmentResult {
    std::vector<int> item_to_robot; // robot index (0-based) per input item
    double makespan = 0.0;          // C_max
    std::vector<double> completion; // C_j per robot
    bool optimal = false;           // search finished inside the node budget
    std::uint64_t nodes = 0;
};

/// Routes -> identical robots, minimising the largest summed route time.
AssignmentResult solve_milp1(std::span<const double> route_times, int robots,
                             std::uint64_t node_budget = kDefaultNodeBudget);

/// Segments -> robots that already worked `initial_times[j]`. A robot receiving at
/// least one segment additionally pays `swap_time`; robots may receive nothing.
AssignmentResult solve_milp2(std::span<const double> segment_times,
                             std::span<const double> initial_times, double swap_time,
                             std::uint64_t node_budget = kDefaultNodeBudget);

/// Cuts a route (>= 2 tasks) into an order-preserving head/tail pair whose
/// fresh-battery execution times differ least. Split points are scanned starting
/// from the tail end when `from_tail`, which only decides ties.
/// Throws std::invalid_argument for single-task routes.
std::pair<Route, Route> split_balanced(const Route& route, const Instance& instance,
                                       bool from_tail);

} // namespace amerta
