#pragma once

#include <amerta/encoding.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amerta::cli {

inline constexpr std::string_view kFrontHeader = "solution_id,E_total_kJ,T_max_s,n_routes,n_swaps";

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t value);

/// Fixed-point text for a double; locale independent.
std::string fixed(double value, int decimals = 6);

struct Provenance {
    std::string version;
    std::uint64_t seed = 0;
    std::string config_hash;
};

std::string metadata_line(const Provenance& p);

/// Front CSV: metadata comment, header, one row per solution.
std::string front_csv(std::span<const Solution> front, const Provenance& p);

struct FrontRow {
    int solution_id = 0;
    double energy = 0.0;
    double makespan = 0.0;
    int routes = 0;
    int swaps = 0;
};

/// Reads a front CSV written by front_csv. Throws ConfigError on a bad header or row.
std::vector<FrontRow> read_front_csv(const std::filesystem::path& path);

} // namespace amerta::cli
