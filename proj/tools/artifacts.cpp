#include "artifacts.hpp"

#include <amerta/errors.hpp>
#include <amerta/instance_io.hpp>

#include <cstdio>
#include <sstream>

namespace amerta::cli {

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string metadata_line(const Provenance& p) {
    return "# amerta " + p.version + " seed=" + std::to_string(p.seed) +
           " config=" + p.config_hash;
}

std::string front_csv(std::span<const Solution> front, const Provenance& p) {
    std::string out = metadata_line(p) + "\n" + std::string(kFrontHeader) + "\n";
    for (std::size_t i = 0; i < front.size(); ++i) {
        const auto& s = front[i];
        out += std::to_string(i) + "," + fixed(s.objectives.energy) + "," +
               fixed(s.objectives.makespan) + "," + std::to_string(s.route_count()) + "," +
               std::to_string(s.swap_count()) + "\n";
    }
    return out;
}

std::vector<FrontRow> read_front_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    bool header_seen = false;
    std::vector<FrontRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kFrontHeader) {
                throw ConfigError("'" + path.string() + "' is not a front CSV (bad header)");
            }
            header_seen = true;
            continue;
        }
        FrontRow row;
        char extra = 0;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%d,%d%c", &row.solution_id, &row.energy,
                        &row.makespan, &row.routes, &row.swaps, &extra) != 5) {
            throw ConfigError("'" + path.string() + "': bad row '" + line + "'");
        }
        rows.push_back(row);
    }
    if (!header_seen) throw ConfigError("'" + path.string() + "' has no front header");
    return rows;
}

} // namespace amerta::cli
