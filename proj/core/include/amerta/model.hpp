#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace amerta {

inline constexpr int kDepot = 0;

/// Physical robot and harvesting parameters. Units: kg, kJ, m/s^2, kJ/kg, s/kg, kW, s.
struct Params {
    double load_capacity = 300.0;      // Q
    double empty_weight = 100.0;       // W
    double battery_capacity = 432.0;   // B
    double battery_threshold = 86.4;   // B_th, swap only at or below this level
    double gravity = 9.81;
    double rolling_resistance = 0.05;  // mu
    double efficiency = 0.8;           // eta
    double pick_energy = 0.5;          // e, kJ per kg picked
    double pick_time = 7.0;            // tau, s per kg picked
    double max_power = 3.9;            // P_max, kW
    double swap_time = 150.0;          // t_swap

    /// Throws ConfigError when a field is out of range.
    void validate() const;

    friend bool operator==(const Params&, const Params&) = default;
};

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

struct TaskNode {
    int id = 0;
    Position position;
    double yield = 0.0; // kg

    friend bool operator==(const TaskNode&, const TaskNode&) = default;
};

enum class DistanceMode { corridor, euclidean };
enum class DepotMode { center, corner };

std::string_view to_string(DistanceMode mode);
std::string_view to_string(DepotMode mode);
DistanceMode parse_distance_mode(std::string_view text);
DepotMode parse_depot_mode(std::string_view text);

/// Dense symmetric (n+1)x(n+1) matrix of shortest-path metres; index 0 is the depot.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t size) : size_(size), d_(size * size, 0.0) {}

    std::size_t size() const noexcept { return size_; }

    double operator()(int i, int j) const noexcept {
        return d_[static_cast<std::size_t>(i) * size_ + static_cast<std::size_t>(j)];
    }

    void set(int i, int j, double value) noexcept {
        d_[static_cast<std::size_t>(i) * size_ + static_cast<std::size_t>(j)] = value;
        d_[static_cast<std::size_t>(j) * size_ + static_cast<std::size_t>(i)] = value;
    }

    const std::vector<double>& row_major() const noexcept { return d_; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t size_ = 0;
    std::vector<double> d_;
};

struct GridSize {
    int rows = 0;
    int cols = 0;

    friend bool operator==(const GridSize&, const GridSize&) = default;
};

struct Instance {
    GridSize grid;
    Position depot;
    std::vector<TaskNode> nodes; // nodes[k].id == k + 1
    DistanceMatrix distances;
    Params params;
    std::uint64_t seed = 0;
    DistanceMode distance_mode = DistanceMode::corridor;
    DepotMode depot_mode = DepotMode::center;

    int task_count() const noexcept { return static_cast<int>(nodes.size()); }

    /// Yield of node `id`; the depot yields nothing.
    double yield(int id) const noexcept {
        return id == kDepot ? 0.0 : nodes[static_cast<std::size_t>(id - 1)].yield;
    }

    double distance(int i, int j) const noexcept { return distances(i, j); }

    double total_yield() const noexcept;
    double max_depot_distance() const noexcept;

    /// Checks id density, yields and matrix shape. Throws ConfigError.
    void validate() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

// Cost formulas. All throw std::domain_error on negative inputs.

/// Energy (kJ) to drive `distance` metres carrying `load` kg.
double travel_energy(double distance, double load, const Params& params);

/// Travel time (s): the travel energy drained at maximum power.
double travel_time(double distance, double load, const Params& params);

struct PickingCost {
    double energy = 0.0; // kJ
    double time = 0.0;   // s
};

PickingCost picking_cost(double yield, const Params& params);

DistanceMatrix compute_distances(const Position& depot, const std::vector<TaskNode>& nodes,
                                 DistanceMode mode);

struct GeneratorSpec {
    GridSize grid{20, 20};
    int task_count = 40;
    int yield_min = 40;
    int yield_max = 70;
    DepotMode depot_mode = DepotMode::center;
    DistanceMode distance_mode = DistanceMode::corridor;
    std::uint64_t seed = 1;
    Params params{};
};

/// Seeded orchard scenario: distinct grid cells, integer yields, precomputed distances.
Instance generate_instance(const GeneratorSpec& spec);

/// Grid shape and task count of the fifteen benchmark scenarios (index 1..15).
GeneratorSpec table1_preset(int problem, std::uint64_t seed);

} // namespace amerta
