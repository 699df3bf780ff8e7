#include "amerta/assignment.hpp"

#include "amerta/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace amerta {

namespace {

constexpr double kEps = 1e-9;

// Depth-first branch and bound over item->robot maps. Robot j finishes at
// base[j] + (activation if it receives anything) + sum of its item times.
class MakespanSearch {
public:
    MakespanSearch(std::span<const double> times, std::vector<double> base, double activation,
                   std::uint64_t budget)
        : times_(times.begin(), times.end()), base_(std::move(base)), activation_(activation),
          budget_(budget) {
        for (double t : times_) {
            if (!(t >= 0.0) || !std::isfinite(t)) {
                throw std::invalid_argument("assignment: item times must be finite and >= 0");
            }
        }
        order_.resize(times_.size());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return times_[a] > times_[b]; });
        suffix_.assign(order_.size() + 1, 0.0);
        for (std::size_t k = order_.size(); k-- > 0;) {
            suffix_[k] = suffix_[k + 1] + times_[static_cast<std::size_t>(order_[k])];
        }
    }

    AssignmentResult run() {
        const std::size_t r = base_.size();
        seed_incumbent();
        const double bound = root_lower_bound();
        bool optimal = best_ <= bound + kEps;
        if (!optimal) {
            loads_ = base_;
            used_.assign(r, 0);
            current_.assign(times_.size(), -1);
            load_sum_ = std::accumulate(base_.begin(), base_.end(), 0.0);
            dfs(0, *std::max_element(base_.begin(), base_.end()));
            optimal = !exhausted_;
        }
        AssignmentResult out;
        out.item_to_robot = best_assignment_;
        out.nodes = nodes_;
        out.optimal = optimal;
        out.completion = base_;
        std::vector<char> used(r, 0);
        for (std::size_t i = 0; i < times_.size(); ++i) {
            const auto j = static_cast<std::size_t>(best_assignment_[i]);
            if (!used[j]) out.completion[j] += activation_;
            used[j] = 1;
            out.completion[j] += times_[i];
        }
        out.makespan = *std::max_element(out.completion.begin(), out.completion.end());
        return out;
    }

private:
    // Longest-processing-time greedy: each item to the robot finishing it first.
    void seed_incumbent() {
        std::vector<double> loads = base_;
        std::vector<char> used(base_.size(), 0);
        best_assignment_.assign(times_.size(), 0);
        for (int item : order_) {
            std::size_t pick = 0;
            double pick_end = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < loads.size(); ++j) {
                const double end = loads[j] + times_[static_cast<std::size_t>(item)] +
                                   (used[j] ? 0.0 : activation_);
                if (end < pick_end - kEps) {
                    pick_end = end;
                    pick = j;
                }
            }
            loads[pick] = pick_end;
            used[pick] = 1;
            best_assignment_[static_cast<std::size_t>(item)] = static_cast<int>(pick);
        }
        best_ = *std::max_element(loads.begin(), loads.end());
    }

    double root_lower_bound() const {
        const auto r = static_cast<double>(base_.size());
        double lb = *std::max_element(base_.begin(), base_.end());
        lb = std::max(lb, (std::accumulate(base_.begin(), base_.end(), 0.0) + suffix_[0]) / r);
        if (!order_.empty()) {
            const double largest = times_[static_cast<std::size_t>(order_[0])];
            const double min_base = *std::min_element(base_.begin(), base_.end());
            lb = std::max(lb, min_base + activation_ + largest);
        }
        return lb;
    }

    void dfs(std::size_t depth, double current_max) {
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (depth == order_.size()) {
            if (current_max < best_ - kEps) {
                best_ = current_max;
                best_assignment_ = current_;
            }
            return;
        }
        const double spread = (load_sum_ + suffix_[depth]) / static_cast<double>(base_.size());
        if (std::max(current_max, spread) >= best_ - kEps) return;

        const auto item = static_cast<std::size_t>(order_[depth]);
        const double t = times_[item];
        for (std::size_t j = 0; j < loads_.size(); ++j) {
            // Robots in identical states are interchangeable; branch on the first only.
            bool duplicate = false;
            for (std::size_t prev = 0; prev < j && !duplicate; ++prev) {
                duplicate = loads_[prev] == loads_[j] && used_[prev] == used_[j];
            }
            if (duplicate) continue;

            const double add = t + (used_[j] ? 0.0 : activation_);
            const double end = loads_[j] + add;
            if (std::max(current_max, end) >= best_ - kEps) continue;

            const double saved_load = loads_[j];
            const char saved_used = used_[j];
            loads_[j] = end;
            used_[j] = 1;
            load_sum_ += add;
            current_[item] = static_cast<int>(j);
            dfs(depth + 1, std::max(current_max, end));
            loads_[j] = saved_load;
            used_[j] = saved_used;
            load_sum_ -= add;
            if (exhausted_) return;
        }
    }

    std::vector<double> times_;
    std::vector<double> base_;
    double activation_;
    std::uint64_t budget_;
    std::vector<int> order_;
    std::vector<double> suffix_;

    std::vector<double> loads_;
    std::vector<char> used_;
    std::vector<int> current_;
    double load_sum_ = 0.0;

    double best_ = std::numeric_limits<double>::infinity();
    std::vector<int> best_assignment_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

} // namespace

AssignmentResult solve_milp1(std::span<const double> route_times, int robots,
                             std::uint64_t node_budget) {
    if (robots < 1) throw std::invalid_argument("solve_milp1: need at least one robot");
    return MakespanSearch(route_times, std::vector<double>(static_cast<std::size_t>(robots), 0.0),
                          0.0, node_budget)
        .run();
}

AssignmentResult solve_milp2(std::span<const double> segment_times,
                             std::span<const double> initial_times, double swap_time,
                             std::uint64_t node_budget) {
    if (initial_times.empty()) throw std::invalid_argument("solve_milp2: need at least one robot");
    if (!(swap_time >= 0.0)) throw std::invalid_argument("solve_milp2: negative swap time");
    for (double t : initial_times) {
        if (!(t >= 0.0)) throw std::invalid_argument("solve_milp2: negative initial time");
    }
    return MakespanSearch(segment_times,
                          std::vector<double>(initial_times.begin(), initial_times.end()),
                          swap_time, node_budget)
        .run();
}

std::pair<Route, Route> split_balanced(const Route& route, const Instance& instance,
                                       bool from_tail) {
    const std::size_t len = route.tasks.size();
    if (len < 2) throw std::invalid_argument("split_balanced: route needs at least two tasks");

    double best_gap = std::numeric_limits<double>::infinity();
    Route best_head;
    Route best_tail;
    for (std::size_t moved = 1; moved < len; ++moved) {
        const std::size_t cut = from_tail ? len - moved : moved;
        Route head(std::vector<int>(route.tasks.begin(),
                                    route.tasks.begin() + static_cast<std::ptrdiff_t>(cut)));
        Route tail(std::vector<int>(route.tasks.begin() + static_cast<std::ptrdiff_t>(cut),
                                    route.tasks.end()));
        refresh_route_cache(head, instance);
        refresh_route_cache(tail, instance);
        const double gap = std::abs(head.time - tail.time);
        if (gap < best_gap - kEps) {
            best_gap = gap;
            best_head = std::move(head);
            best_tail = std::move(tail);
        }
    }
    return {std::move(best_head), std::move(best_tail)};
}

} // namespace amerta
