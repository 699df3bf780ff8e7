#pragma once

#include <amerta/model.hpp>
#include <amerta/moea.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace amerta::cli {

// Where a command gets its instance from: a file, a preset, or explicit generator flags.
struct InstanceSource {
    std::string path;
    std::string preset;
    std::string grid;
    int n = 40;
    int yield_min = 40;
    int yield_max = 70;
    std::string depot = "center";
    std::string distance = "corridor";
    CLI::Option* n_opt = nullptr;
    CLI::Option* ymin_opt = nullptr;
    CLI::Option* ymax_opt = nullptr;
};

void add_instance_flags(CLI::App& app, InstanceSource& src, bool allow_path);
Instance resolve_instance(const InstanceSource& src, std::uint64_t seed);
GeneratorSpec generator_spec(const InstanceSource& src, std::uint64_t seed);

int threads_default();

/// "hrra" or "nsga2"; throws ConfigError otherwise.
RunResult run_algorithm(const std::string& algo, const Instance& instance, int robots,
                        const SearchConfig& config, const Budget& budget,
                        const RunOptions& options);

struct BenchArgs {
    std::string suite;
    std::string out = "amerta_bench";
};
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

struct PlotArgs {
    std::vector<std::string> fronts;
    std::string out;
    std::string title;
};
int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err);

/// Deterministic SVG scatter of one or more fronts in (T_max, E_total) space.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; // (T_max_s, E_total_kJ)
};
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title);

} // namespace amerta::cli
