#include "amerta/encoding.hpp"

#include "amerta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace amerta {

double Route::load(const Instance& instance) const {
    double total = 0.0;
    for (int t : tasks) total += instance.yield(t);
    return total;
}

int GlobalSequence::robot_count() const {
    return 1 + static_cast<int>(std::count(items.begin(), items.end(), kRobotSeparator));
}

int Solution::route_count() const noexcept {
    int count = 0;
    for (const auto& r : robots) count += static_cast<int>(r.size());
    return count;
}

int Solution::swap_count() const noexcept {
    int count = 0;
    for (const auto& c : charging_positions) count += static_cast<int>(c.size());
    return count;
}

std::vector<Route> Solution::route_pool() const {
    std::vector<Route> pool;
    for (const auto& r : robots) pool.insert(pool.end(), r.begin(), r.end());
    return pool;
}

std::vector<int> Solution::tasks_of(int r) const {
    std::vector<int> out;
    for (const auto& route : robots[static_cast<std::size_t>(r)]) {
        out.insert(out.end(), route.tasks.begin(), route.tasks.end());
    }
    return out;
}

Solution layers_from_global(const GlobalSequence& seq, const Instance& instance) {
    const int n = instance.task_count();
    Solution s(seq.robot_count());
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);

    auto chunk_begin = seq.items.begin();
    for (int robot = 0; robot < s.robot_count(); ++robot) {
        const auto chunk_end = std::find(chunk_begin, seq.items.end(), kRobotSeparator);
        // An empty chunk is an idle robot; otherwise every 0-delimited piece is a route.
        if (chunk_begin != chunk_end) {
            Route current;
            for (auto it = chunk_begin;; ++it) {
                if (it == chunk_end || *it == kRouteSeparator) {
                    if (current.tasks.empty()) {
                        throw EncodingError("empty route in robot " + std::to_string(robot + 1));
                    }
                    s.robots[static_cast<std::size_t>(robot)].push_back(std::move(current));
                    current = Route{};
                    if (it == chunk_end) break;
                    continue;
                }
                const int item = *it;
                if (item < 1 || item > n) {
                    throw EncodingError("unknown task id " + std::to_string(item), item);
                }
                if (seen[static_cast<std::size_t>(item)]) {
                    throw EncodingError("duplicate task id " + std::to_string(item), item);
                }
                seen[static_cast<std::size_t>(item)] = 1;
                current.tasks.push_back(item);
            }
        }
        chunk_begin = chunk_end == seq.items.end() ? chunk_end : std::next(chunk_end);
    }

    for (int id = 1; id <= n; ++id) {
        if (!seen[static_cast<std::size_t>(id)]) {
            throw EncodingError("missing task id " + std::to_string(id), id);
        }
    }
    return s;
}

GlobalSequence global_from_layers(const Solution& solution) {
    GlobalSequence seq;
    for (std::size_t r = 0; r < solution.robots.size(); ++r) {
        if (r > 0) seq.items.push_back(kRobotSeparator);
        const auto& routes = solution.robots[r];
        for (std::size_t k = 0; k < routes.size(); ++k) {
            if (k > 0) seq.items.push_back(kRouteSeparator);
            seq.items.insert(seq.items.end(), routes[k].tasks.begin(), routes[k].tasks.end());
        }
    }
    return seq;
}

std::string_view to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::coverage: return "coverage";
    case Violation::Kind::duplicate: return "duplicate";
    case Violation::Kind::unknown_task: return "unknown_task";
    case Violation::Kind::capacity: return "capacity";
    case Violation::Kind::empty_route: return "empty_route";
    case Violation::Kind::objectives: return "objectives";
    case Violation::Kind::charging: return "charging";
    }
    return "unknown";
}

std::vector<Violation> validate(const Solution& solution, const Instance& instance) {
    std::vector<Violation> out;
    const int n = instance.task_count();
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);

    for (std::size_t r = 0; r < solution.robots.size(); ++r) {
        for (std::size_t k = 0; k < solution.robots[r].size(); ++k) {
            const Route& route = solution.robots[r][k];
            const std::string where =
                "robot " + std::to_string(r + 1) + " route " + std::to_string(k + 1);
            if (route.tasks.empty()) {
                out.push_back({Violation::Kind::empty_route, where, "route has no tasks"});
            }
            double load = 0.0;
            for (int t : route.tasks) {
                if (t < 1 || t > n) {
                    out.push_back({Violation::Kind::unknown_task, where,
                                   "task id " + std::to_string(t) + " is not in the instance"});
                    continue;
                }
                ++count[static_cast<std::size_t>(t)];
                load += instance.yield(t);
            }
            if (load > instance.params.load_capacity + 1e-9) {
                out.push_back({Violation::Kind::capacity, where,
                               "load " + std::to_string(load) + " kg exceeds capacity"});
            }
        }
    }
    for (int id = 1; id <= n; ++id) {
        const int c = count[static_cast<std::size_t>(id)];
        if (c == 0) {
            out.push_back({Violation::Kind::coverage, "task " + std::to_string(id),
                           "task " + std::to_string(id) + " is not assigned"});
        } else if (c > 1) {
            out.push_back({Violation::Kind::duplicate, "task " + std::to_string(id),
                           "task " + std::to_string(id) + " appears " + std::to_string(c) +
                               " times"});
        }
    }

    if (solution.evaluated) {
        const double e_sum = std::accumulate(solution.robot_energy.begin(),
                                             solution.robot_energy.end(), 0.0);
        const double t_max = solution.robot_time.empty()
                                 ? 0.0
                                 : *std::max_element(solution.robot_time.begin(),
                                                     solution.robot_time.end());
        if (std::abs(e_sum - solution.objectives.energy) > 1e-6 ||
            std::abs(t_max - solution.objectives.makespan) > 1e-6) {
            out.push_back({Violation::Kind::objectives, "objectives",
                           "objectives disagree with per-robot metrics"});
        }
        for (std::size_t r = 0; r < solution.charging_positions.size(); ++r) {
            const auto& seq = solution.robot_tasks[r];
            for (int pos : solution.charging_positions[r]) {
                if (pos < 0 || pos >= static_cast<int>(seq.size()) ||
                    seq[static_cast<std::size_t>(pos)] != kDepot) {
                    out.push_back({Violation::Kind::charging, "robot " + std::to_string(r + 1),
                                   "charging position " + std::to_string(pos) +
                                       " is not a depot visit"});
                }
            }
        }
    }
    return out;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, double tol) noexcept {
    const bool no_worse = a.energy <= b.energy + tol && a.makespan <= b.makespan + tol;
    const bool better = a.energy < b.energy - tol || a.makespan < b.makespan - tol;
    return no_worse && better;
}

} // namespace amerta
