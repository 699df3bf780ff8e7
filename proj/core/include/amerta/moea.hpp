#pragma once

#include "amerta/encoding.hpp"
#include "amerta/model.hpp"
#include "amerta/search.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amerta {

struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts; // fronts[0] is the first front
    std::vector<int> rank;                        // front index per input point
    std::vector<double> crowding;                 // per input point, within its own front
};

/// Pareto ranking of minimisation objectives plus per-front crowding distance.
FrontPartition non_dominated_sort(std::span<const ObjectiveVector> objectives);

/// Crowding distance of the members of one front, normalised by the front's
/// own min-max range. Boundary members get +infinity.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> objectives,
                                      std::span<const std::size_t> front);

/// Survivor indices: whole fronts in order, then the splitting front by
/// descending crowding distance. Returns every index if fewer than `pnum`.
std::vector<std::size_t> environmental_selection(std::span<const ObjectiveVector> merged,
                                                 std::size_t pnum);

/// Termination: wall-clock seconds or a fixed number of generations.
struct Budget {
    enum class Kind { seconds, generations };
    Kind kind = Kind::generations;
    double value = 0.0;

    /// "secs:X" or "gens:X". Throws ConfigError.
    static Budget parse(std::string_view text);
    static Budget seconds(double s) { return {Kind::seconds, s}; }
    static Budget generations(int g) { return {Kind::generations, static_cast<double>(g)}; }
    std::string to_string() const;
};

struct GenerationRecord {
    int generation = 0;
    double elapsed_s = 0.0;
    std::size_t front_size = 0;
    double best_energy = 0.0;
    double best_makespan = 0.0;
    double hv_runlocal = 0.0; // HV under the normalisation fixed from the initial population
};

struct RunOptions {
    int threads = 1;
    /// Validate every population member after each generation (throws on violation).
    bool debug_checks = false;
    std::function<void(const GenerationRecord&)> on_generation;
    /// Called with the surviving population after every generation.
    std::function<void(int generation, std::span<const Solution> population)> on_population;
};

struct RunResult {
    std::vector<Solution> front; // non-dominated, distinct objective vectors, sorted by energy
    std::vector<ObjectiveVector> initial_front;
    std::vector<GenerationRecord> log;
    int generations = 0;
    bool budget_warning = false; // the budget ran out before any generation completed
    std::uint64_t seed = 0;
};

/// Hierarchical route reconstruction main loop.
RunResult hrra_run(const Instance& instance, int robots, const SearchConfig& config,
                   const Budget& budget, const RunOptions& options = {});

/// NSGA-II on separator-token permutations with order crossover and
/// swap/insert mutation, decoded through the same simulator.
RunResult nsga2_baseline_run(const Instance& instance, int robots, const SearchConfig& config,
                             const Budget& budget, const RunOptions& options = {});

/// Indices of the first front with duplicate objective vectors removed,
/// ordered by energy then makespan.
std::vector<std::size_t> distinct_first_front(std::span<const ObjectiveVector> objectives);

struct Normalization;

namespace detail {

/// Log entry for one generation: distinct first front, best objectives, HV under `norm`.
GenerationRecord summarize_generation(int generation, double elapsed,
                                      std::span<const Solution> pop, const Normalization& norm);

/// Throws EncodingError on the first violation found.
void check_population(std::span<const Solution> pop, const Instance& instance);

/// Moves the distinct first front of `pop` into `res.front`.
RunResult finish_run(std::vector<Solution>& pop, RunResult res);

/// Keeps `pnum` survivors from `merged`, preferring distinct encodings.
std::vector<Solution> select_population(std::vector<Solution> merged, std::size_t pnum);

std::vector<ObjectiveVector> objectives_of(std::span<const Solution> population);

/// Elapsed-time / generation bookkeeping shared by both algorithms.
class BudgetClock {
public:
    explicit BudgetClock(const Budget& budget);
    double elapsed() const;
    bool another_generation(int completed) const;
    /// Start of the generation loop; iteration times are measured from here.
    void mark_loop_start();
    /// SRRM gate after `completed` iterations: is there room for one more
    /// iteration of mean length before the budget runs out?
    bool room_for_iteration(int completed) const;

private:
    Budget budget_;
    double start_;
    double loop_start_ = 0.0;
};

} // namespace detail

} // namespace amerta
