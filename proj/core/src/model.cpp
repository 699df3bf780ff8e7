#include "amerta/model.hpp"

#include "amerta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace amerta {

void Params::validate() const {
    const double fields[] = {load_capacity, empty_weight, battery_capacity, battery_threshold,
                             gravity,       rolling_resistance, efficiency, pick_energy,
                             pick_time,     max_power,    swap_time};
    for (double f : fields) {
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw ConfigError("params: every field must be finite and strictly positive");
        }
    }
    if (battery_threshold >= battery_capacity) {
        throw ConfigError("params: battery threshold must be below battery capacity");
    }
    if (efficiency > 1.0) {
        throw ConfigError("params: efficiency must lie in (0, 1]");
    }
}

std::string_view to_string(DistanceMode mode) {
    return mode == DistanceMode::corridor ? "corridor" : "euclidean";
}

std::string_view to_string(DepotMode mode) {
    return mode == DepotMode::center ? "center" : "corner";
}

DistanceMode parse_distance_mode(std::string_view text) {
    if (text == "corridor") return DistanceMode::corridor;
    if (text == "euclidean") return DistanceMode::euclidean;
    throw ConfigError("unknown distance mode '" + std::string(text) + "'");
}

DepotMode parse_depot_mode(std::string_view text) {
    if (text == "center") return DepotMode::center;
    if (text == "corner") return DepotMode::corner;
    throw ConfigError("unknown depot mode '" + std::string(text) + "'");
}

double Instance::total_yield() const noexcept {
    return std::accumulate(nodes.begin(), nodes.end(), 0.0,
                           [](double acc, const TaskNode& n) { return acc + n.yield; });
}

double Instance::max_depot_distance() const noexcept {
    double best = 0.0;
    for (const auto& n : nodes) best = std::max(best, distances(kDepot, n.id));
    return best;
}

void Instance::validate() const {
    params.validate();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto& n = nodes[k];
        if (n.id != static_cast<int>(k) + 1) {
            throw ConfigError("instance: node ids must be dense 1..n, found " + std::to_string(n.id) +
                              " at position " + std::to_string(k));
        }
        if (!(n.yield > 0.0) || n.yield > params.load_capacity) {
            throw ConfigError("instance: node " + std::to_string(n.id) +
                              " yield must lie in (0, Q]");
        }
    }
    if (distances.size() != nodes.size() + 1) {
        throw ConfigError("instance: distance matrix must be (n+1)x(n+1)");
    }
}

double travel_energy(double distance, double load, const Params& params) {
    if (distance < 0.0) throw std::domain_error("travel_energy: negative distance");
    if (load < 0.0) throw std::domain_error("travel_energy: negative load");
    return distance * (params.empty_weight + load) * params.gravity * params.rolling_resistance /
           params.efficiency * 1e-3;
}

double travel_time(double distance, double load, const Params& params) {
    return travel_energy(distance, load, params) / params.max_power;
}

PickingCost picking_cost(double yield, const Params& params) {
    if (yield < 0.0) throw std::domain_error("picking_cost: negative yield");
    return {params.pick_energy * yield, params.pick_time * yield};
}

namespace {

double point_distance(const Position& a, const Position& b, DistanceMode mode) {
    const double dx = std::abs(a.x - b.x);
    const double dy = std::abs(a.y - b.y);
    // Lanes run along rows and columns, so the shortest lane path is rectilinear.
    return mode == DistanceMode::corridor ? dx + dy : std::hypot(dx, dy);
}

} // namespace

DistanceMatrix compute_distances(const Position& depot, const std::vector<TaskNode>& nodes,
                                 DistanceMode mode) {
    DistanceMatrix d(nodes.size() + 1);
    auto position_of = [&](std::size_t k) { return k == 0 ? depot : nodes[k - 1].position; };
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            d.set(static_cast<int>(i), static_cast<int>(j),
                  point_distance(position_of(i), position_of(j), mode));
        }
    }
    return d;
}

Instance generate_instance(const GeneratorSpec& spec) {
    spec.params.validate();
    if (spec.grid.rows <= 0 || spec.grid.cols <= 0) {
        throw ConfigError("generator: grid dimensions must be positive");
    }
    const long cells = static_cast<long>(spec.grid.rows) * spec.grid.cols;
    if (spec.task_count < 0 || spec.task_count > cells) {
        throw ConfigError("generator: " + std::to_string(spec.task_count) +
                          " tasks do not fit a " + std::to_string(spec.grid.rows) + "x" +
                          std::to_string(spec.grid.cols) + " grid");
    }
    if (spec.yield_min <= 0 || spec.yield_min > spec.yield_max ||
        spec.yield_max > spec.params.load_capacity) {
        throw ConfigError("generator: yield range must satisfy 0 < min <= max <= Q");
    }

    std::mt19937_64 rng(spec.seed);

    // Partial Fisher-Yates over cell indices; written out so the draw sequence
    // does not depend on the standard library's shuffle.
    std::vector<long> cell(static_cast<std::size_t>(cells));
    std::iota(cell.begin(), cell.end(), 0L);
    for (int k = 0; k < spec.task_count; ++k) {
        const auto remaining = static_cast<std::uint64_t>(cells - k);
        const auto pick = static_cast<long>(k + static_cast<long>(rng() % remaining));
        std::swap(cell[static_cast<std::size_t>(k)], cell[static_cast<std::size_t>(pick)]);
    }

    Instance inst;
    inst.grid = spec.grid;
    inst.params = spec.params;
    inst.seed = spec.seed;
    inst.depot_mode = spec.depot_mode;
    inst.distance_mode = spec.distance_mode;
    inst.depot = spec.depot_mode == DepotMode::center
                     ? Position{static_cast<double>(spec.grid.cols / 2),
                                static_cast<double>(spec.grid.rows / 2)}
                     : Position{0.0, 0.0};

    const auto span = static_cast<std::uint64_t>(spec.yield_max - spec.yield_min + 1);
    inst.nodes.reserve(static_cast<std::size_t>(spec.task_count));
    for (int k = 0; k < spec.task_count; ++k) {
        const long c = cell[static_cast<std::size_t>(k)];
        TaskNode node;
        node.id = k + 1;
        node.position = {static_cast<double>(c % spec.grid.cols),
                         static_cast<double>(c / spec.grid.cols)};
        node.yield = static_cast<double>(spec.yield_min + static_cast<int>(rng() % span));
        inst.nodes.push_back(node);
    }
    inst.distances = compute_distances(inst.depot, inst.nodes, inst.distance_mode);
    return inst;
}

GeneratorSpec table1_preset(int problem, std::uint64_t seed) {
    struct Row {
        int size;
        int n;
    };
    static constexpr Row rows[] = {{20, 40},  {20, 60},  {20, 80},  {30, 90},  {30, 135},
                                   {30, 180}, {40, 160}, {40, 240}, {40, 320}, {50, 250},
                                   {50, 375}, {50, 500}, {60, 360}, {60, 540}, {60, 720}};
    if (problem < 1 || problem > 15) {
        throw ConfigError("preset: problem index must be 1..15");
    }
    const Row& r = rows[problem - 1];
    GeneratorSpec spec;
    spec.grid = {r.size, r.size};
    spec.task_count = r.n;
    spec.seed = seed;
    return spec;
}

} // namespace amerta
