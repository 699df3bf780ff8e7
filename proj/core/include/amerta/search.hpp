#pragma once

#include "amerta/assignment.hpp"
#include "amerta/encoding.hpp"
#include "amerta/model.hpp"
#include "amerta/random.hpp"
#include "amerta/simulator.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace amerta {

struct SearchConfig {
    double theta = 0.8736;       // smallest load-limit ratio in the initial population
    int pnum = 30;               // population size
    std::uint64_t seed = 1;
    int trrm_move_count = 1;     // exchange/reallocation moves per TRRM offspring
    int two_opt_pass_limit = 20;
    int crrm_patterns = 2;       // reconstruction load limits, spaced from Q down to theta*Q
    std::uint64_t node_budget = kDefaultNodeBudget;
    SimulationOptions sim;

    /// Throws ConfigError.
    void validate() const;
};

// Random-stream phases; each operator call uses make_stream(seed, gen, phase, index).
enum class Phase : std::uint64_t { init = 0, trrm = 1, srrm = 2, nsga2 = 3 };

/// Load limit of population member p: Q * (1 - (1 - theta) * p / pnum).
double load_limit(int p, const SearchConfig& config, double capacity);

/// Nearest-neighbour trip construction over `tasks`: each trip starts at the
/// depot and repeatedly takes the closest unvisited task that still fits under
/// `limit` (ties to the lowest id). Returned routes carry fresh caches.
std::vector<Route> build_routes_greedy(std::span<const int> tasks, double limit,
                                       const Instance& instance);

/// Distributes routes over r robots: exact makespan assignment when there are
/// at least r routes, otherwise the longest route is split until there are r.
/// The result is not evaluated.
Solution assign_routes(std::vector<Route> routes, int robots, const Instance& instance, Rng& rng,
                       std::uint64_t node_budget = kDefaultNodeBudget);

/// Initial population; member p is built under load_limit(p) and evaluated.
std::vector<Solution> vldim_init(const Instance& instance, int robots, const SearchConfig& config,
                                 int threads = 1);

/// Reverses tasks[i..j]. Throws std::out_of_range on bad indices.
Route two_opt_step(const Route& route, int i, int j);

/// 2-opt with Pareto acceptance on (time, energy), first improvement, i then j ascending.
Route two_opt(const Route& route, const Instance& instance, int pass_limit,
              const SimulationOptions& sim = {});

/// Depot-distance descending reorder followed by 2-opt. Never returns a route the
/// input dominates.
Route drrm(const Route& route, const Instance& instance, const SearchConfig& config = {});

/// drrm on every route of a solution. Returns true if any route changed
/// (the solution is then marked for re-evaluation).
bool drrm_solution(Solution& solution, const Instance& instance, const SearchConfig& config);

/// One TRRM child of an evaluated parent (exchange or reallocation with equal
/// probability, repeated trrm_move_count times). The child is evaluated.
Solution trrm_offspring(const Solution& parent, const Instance& instance,
                        const SearchConfig& config, Rng& rng);

/// TRRM children for each member of `front`, one per member.
std::vector<Solution> trrm(std::span<const Solution> population,
                           std::span<const std::size_t> front, const SearchConfig& config,
                           const Instance& instance, std::uint64_t generation, int threads = 1);

/// Charging-based reconstruction. Returns {solution} unchanged when no robot
/// swapped; otherwise one evaluated reconstruction per load-limit pattern.
std::vector<Solution> crrm(const Solution& solution, const Instance& instance,
                           const SearchConfig& config);

/// Split-based reconstruction of an evaluated solution.
Solution srrm(const Solution& solution, const Instance& instance, const SearchConfig& config,
              Rng& rng);

/// Cuts an overloaded route at the capacity boundary, as often as needed.
std::vector<Route> split_at_capacity(const Route& route, const Instance& instance);

} // namespace amerta
