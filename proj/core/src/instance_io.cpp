#include "amerta/instance_io.hpp"

#include "amerta/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace amerta {

using nlohmann::json;

namespace {

json params_to_json(const Params& p) {
    return json{{"Q", p.load_capacity},       {"W", p.empty_weight},
                {"B", p.battery_capacity},    {"B_th", p.battery_threshold},
                {"g", p.gravity},             {"mu", p.rolling_resistance},
                {"eta", p.efficiency},        {"e", p.pick_energy},
                {"tau", p.pick_time},         {"P_max", p.max_power},
                {"t_swap", p.swap_time}};
}

Params params_from_json(const json& j) {
    Params p;
    p.load_capacity = j.at("Q").get<double>();
    p.empty_weight = j.at("W").get<double>();
    p.battery_capacity = j.at("B").get<double>();
    p.battery_threshold = j.at("B_th").get<double>();
    p.gravity = j.at("g").get<double>();
    p.rolling_resistance = j.at("mu").get<double>();
    p.efficiency = j.at("eta").get<double>();
    p.pick_energy = j.at("e").get<double>();
    p.pick_time = j.at("tau").get<double>();
    p.max_power = j.at("P_max").get<double>();
    p.swap_time = j.at("t_swap").get<double>();
    return p;
}

} // namespace

std::string instance_to_json(const Instance& inst, const InstanceWriteOptions& options) {
    json doc;
    doc["meta"] = {{"seed", inst.seed},
                   {"grid", {inst.grid.rows, inst.grid.cols}},
                   {"modes",
                    {{"depot", to_string(inst.depot_mode)},
                     {"distance", to_string(inst.distance_mode)}}}};
    doc["params"] = params_to_json(inst.params);
    doc["depot"] = {{"x", inst.depot.x}, {"y", inst.depot.y}};
    json nodes = json::array();
    for (const auto& n : inst.nodes) {
        nodes.push_back({{"id", n.id}, {"x", n.position.x}, {"y", n.position.y}, {"q", n.yield}});
    }
    doc["nodes"] = std::move(nodes);
    if (options.embed_distances) {
        doc["distances"] = inst.distances.row_major();
    } else {
        doc["distances"] = "recompute";
    }
    return doc.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        Instance inst;
        const auto& meta = doc.at("meta");
        inst.seed = meta.at("seed").get<std::uint64_t>();
        inst.grid = {meta.at("grid").at(0).get<int>(), meta.at("grid").at(1).get<int>()};
        inst.depot_mode = parse_depot_mode(meta.at("modes").at("depot").get<std::string>());
        inst.distance_mode =
            parse_distance_mode(meta.at("modes").at("distance").get<std::string>());
        inst.params = params_from_json(doc.at("params"));
        inst.depot = {doc.at("depot").at("x").get<double>(), doc.at("depot").at("y").get<double>()};
        for (const auto& jn : doc.at("nodes")) {
            inst.nodes.push_back({jn.at("id").get<int>(),
                                  {jn.at("x").get<double>(), jn.at("y").get<double>()},
                                  jn.at("q").get<double>()});
        }
        const auto& jd = doc.at("distances");
        if (jd.is_string()) {
            if (jd.get<std::string>() != "recompute") {
                throw ConfigError("instance: distances must be \"recompute\" or a matrix");
            }
            inst.distances = compute_distances(inst.depot, inst.nodes, inst.distance_mode);
        } else {
            const auto flat = jd.get<std::vector<double>>();
            const std::size_t size = inst.nodes.size() + 1;
            if (flat.size() != size * size) {
                throw ConfigError("instance: distance matrix has " + std::to_string(flat.size()) +
                                  " entries, expected " + std::to_string(size * size));
            }
            DistanceMatrix d(size);
            for (std::size_t i = 0; i < size; ++i) {
                for (std::size_t j = 0; j < size; ++j) {
                    if (flat[i * size + j] != flat[j * size + i]) {
                        throw ConfigError("instance: distance matrix is not symmetric");
                    }
                    d.set(static_cast<int>(i), static_cast<int>(j), flat[i * size + j]);
                }
            }
            inst.distances = std::move(d);
        }
        inst.validate();
        return inst;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("instance: malformed document: ") + e.what());
    }
}

void save_instance(const Instance& instance, const std::filesystem::path& path,
                   const InstanceWriteOptions& options) {
    write_text_file(path, instance_to_json(instance, options));
}

Instance load_instance(const std::filesystem::path& path) {
    return instance_from_json(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

} // namespace amerta
