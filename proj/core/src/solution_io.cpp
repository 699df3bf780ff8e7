#include "amerta/solution_io.hpp"

#include "amerta/errors.hpp"

#include <json.hpp>

namespace amerta {

using nlohmann::json;

namespace {

json to_json_value(const Solution& s) {
    json doc;
    doc["global_seq"] = global_from_layers(s).items;
    if (s.evaluated) {
        json robots = json::array();
        for (int r = 0; r < s.robot_count(); ++r) {
            const auto k = static_cast<std::size_t>(r);
            robots.push_back({{"energy_kJ", s.robot_energy[k]},
                              {"time_s", s.robot_time[k]},
                              {"charging_positions", s.charging_positions[k]},
                              {"executed", s.robot_tasks[k]}});
        }
        doc["robots"] = std::move(robots);
        doc["objectives"] = {{"E_total_kJ", s.objectives.energy},
                             {"T_max_s", s.objectives.makespan}};
    }
    return doc;
}

Solution from_json_value(const json& j, const Instance& instance) {
    GlobalSequence seq;
    seq.items = j.at("global_seq").get<std::vector<int>>();
    return layers_from_global(seq, instance);
}

} // namespace

std::string solution_to_json(const Solution& solution, int indent) {
    return to_json_value(solution).dump(indent) + "\n";
}

std::string solutions_to_json(std::span<const Solution> solutions, int indent) {
    json arr = json::array();
    for (const auto& s : solutions) arr.push_back(to_json_value(s));
    return json{{"solutions", std::move(arr)}}.dump(indent) + "\n";
}

std::vector<Solution> solutions_from_json(std::string_view text, const Instance& instance) {
    try {
        const json doc = json::parse(text);
        std::vector<Solution> out;
        if (doc.contains("solutions")) {
            for (const auto& j : doc.at("solutions")) out.push_back(from_json_value(j, instance));
        } else {
            out.push_back(from_json_value(doc, instance));
        }
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("solution: malformed document: ") + e.what());
    }
}

} // namespace amerta
