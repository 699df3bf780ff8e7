#include "cli.hpp"

#include "artifacts.hpp"
#include "commands.hpp"

#include <amerta/errors.hpp>
#include <amerta/instance_io.hpp>
#include <amerta/moea.hpp>
#include <amerta/parallel.hpp>
#include <amerta/simulator.hpp>
#include <amerta/solution_io.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <thread>

namespace amerta::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

GridSize parse_grid(const std::string& text) {
    const auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) throw ConfigError("");
        std::size_t a = 0;
        std::size_t b = 0;
        const std::string rows = text.substr(0, x);
        const std::string cols = text.substr(x + 1);
        GridSize g{std::stoi(rows, &a), std::stoi(cols, &b)};
        if (a != rows.size() || b != cols.size() || g.rows < 1 || g.cols < 1) throw ConfigError("");
        return g;
    } catch (...) {
        throw ConfigError("--grid expects RxC with positive integers, got '" + text + "'");
    }
}

int parse_preset(const std::string& text) {
    constexpr std::string_view prefix = "table1-p";
    if (text.rfind(prefix, 0) == 0) {
        try {
            std::size_t used = 0;
            const std::string tail = text.substr(prefix.size());
            const int k = std::stoi(tail, &used);
            if (used == tail.size()) return k;
        } catch (...) {
        }
    }
    throw ConfigError("--preset expects table1-p1 .. table1-p15, got '" + text + "'");
}

std::string version() { return AMERTA_VERSION; }

json record_json(const GenerationRecord& r, const Provenance& p) {
    return {{"gen", r.generation},       {"elapsed_s", r.elapsed_s},
            {"front_size", r.front_size}, {"best_E", r.best_energy},
            {"best_T", r.best_makespan}, {"hv_runlocal", r.hv_runlocal},
            {"seed", p.seed},            {"config_hash", p.config_hash},
            {"version", p.version}};
}

// ---- gen ----

struct GenArgs {
    InstanceSource src;
    std::uint64_t seed = 1;
    std::string out;
    bool embed = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
    const Instance inst = resolve_instance(a.src, a.seed);
    const std::string text = instance_to_json(inst, {a.embed});
    std::ostream& info = a.out.empty() ? err : out;
    if (a.out.empty()) {
        out << text;
    } else {
        write_text_file(a.out, text);
    }
    info << "# amerta " << version() << " seed=" << a.seed
         << " config=" << hex64(fnv1a(text)) << "\n"
         << "grid=" << inst.grid.rows << "x" << inst.grid.cols << " n=" << inst.task_count()
         << " total_yield_kg=" << fixed(inst.total_yield(), 1)
         << " max_depot_distance_m=" << fixed(inst.max_depot_distance(), 1) << "\n";
    return ok;
}

// ---- solve ----

struct SolveArgs {
    InstanceSource src;
    std::uint64_t seed = 1;
    std::uint64_t instance_seed = 0;
    CLI::Option* instance_seed_opt = nullptr;
    std::string algo = "hrra";
    int robots = 4;
    int pop = 30;
    double theta = 0.8736;
    std::string budget;
    std::string out = "amerta_out";
    bool debug_checks = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    const std::uint64_t iseed = a.instance_seed_opt->count() > 0 ? a.instance_seed : a.seed;
    const Instance inst = resolve_instance(a.src, iseed);
    const Budget budget =
        a.budget.empty() ? Budget::seconds(0.5 * inst.task_count()) : Budget::parse(a.budget);

    SearchConfig cfg;
    cfg.theta = a.theta;
    cfg.pnum = a.pop;
    cfg.seed = a.seed;
    cfg.validate();
    if (a.robots < 1) throw ConfigError("--r must be at least 1");

    const std::string config_text =
        "instance=" + hex64(fnv1a(instance_to_json(inst))) + ";algo=" + a.algo +
        ";r=" + std::to_string(a.robots) + ";pop=" + std::to_string(a.pop) +
        ";theta=" + fixed(a.theta) + ";budget=" + budget.to_string();
    const Provenance prov{version(), a.seed, hex64(fnv1a(config_text))};

    RunOptions opts;
    opts.threads = threads_default();
    opts.debug_checks = a.debug_checks;
    const RunResult res = run_algorithm(a.algo, inst, a.robots, cfg, budget, opts);
    if (res.budget_warning) {
        err << "warning: budget " << budget.to_string()
            << " allowed no generation; reporting the initial front\n";
    }

    const fs::path dir(a.out);
    const std::string csv = front_csv(res.front, prov);
    write_text_file(dir / "front.csv", csv);

    json sols = json::parse(solutions_to_json(res.front));
    sols["meta"] = {{"version", prov.version}, {"seed", prov.seed},
                    {"config_hash", prov.config_hash}};
    write_text_file(dir / "solutions.json", sols.dump(2) + "\n");

    std::string log;
    for (const auto& r : res.log) log += record_json(r, prov).dump() + "\n";
    write_text_file(dir / "run_log.jsonl", log);

    json manifest = {{"version", prov.version},
                     {"seed", prov.seed},
                     {"config_hash", prov.config_hash},
                     {"algorithm", a.algo},
                     {"r", a.robots},
                     {"pop", a.pop},
                     {"theta", a.theta},
                     {"budget", budget.to_string()},
                     {"generations", res.generations},
                     {"output_dir", dir.string()}};
    if (!a.src.path.empty()) {
        manifest["instance"] = {{"path", a.src.path}};
    } else {
        const GeneratorSpec spec = generator_spec(a.src, iseed);
        manifest["instance"] = {{"grid", std::to_string(spec.grid.rows) + "x" +
                                             std::to_string(spec.grid.cols)},
                                {"n", spec.task_count},
                                {"yield_min", spec.yield_min},
                                {"yield_max", spec.yield_max},
                                {"seed", iseed}};
    }
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

    out << csv;
    err << a.algo << ": " << res.front.size() << " front solutions after " << res.generations
        << " generations -> " << (dir / "front.csv").string() << "\n";
    return ok;
}

// ---- eval ----

struct EvalArgs {
    InstanceSource src;
    std::uint64_t seed = 1;
    std::string solution;
    std::string trace;
    std::size_t index = 0;
    std::string out;
};

std::string trace_csv(const Solution& s, const Instance& inst) {
    std::string csv = "robot,event_index,node,battery,load,swapped,t,E\n";
    for (int r = 0; r < s.robot_count(); ++r) {
        const RobotTrace tr = simulate_robot(s.robots[static_cast<std::size_t>(r)], inst);
        for (std::size_t k = 0; k < tr.events.size(); ++k) {
            const auto& e = tr.events[k];
            csv += std::to_string(r) + "," + std::to_string(k) + "," + std::to_string(e.node) +
                   "," + fixed(e.battery) + "," + fixed(e.load) + "," +
                   (e.swapped ? "1" : "0") + "," + fixed(e.elapsed_time) + "," +
                   fixed(e.cumulative_energy) + "\n";
        }
    }
    return csv;
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
    const Instance inst = resolve_instance(a.src, a.seed);
    const std::string text = read_text_file(a.solution);
    std::vector<Solution> sols = solutions_from_json(text, inst);
    if (a.index >= sols.size()) {
        throw ConfigError("--index " + std::to_string(a.index) + " out of range (" +
                          std::to_string(sols.size()) + " solutions)");
    }
    // Structural problems (e.g. a route over capacity for this instance) are reported
    // before anything is simulated.
    int status = ok;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (const auto& v : validate(sols[i], inst)) {
            err << "solution " << i << ": " << to_string(v.kind) << " at " << v.where << ": "
                << v.message << "\n";
            status = usage;
        }
    }
    if (status != ok) return status;
    if (!a.trace.empty()) write_text_file(a.trace, trace_csv(sols[a.index], inst));

    // Recorded objectives, when present, are compared against the re-evaluation.
    std::vector<json> recorded;
    {
        const json doc = json::parse(text);
        if (doc.contains("solutions")) {
            for (const auto& j : doc.at("solutions")) recorded.push_back(j);
        } else {
            recorded.push_back(doc);
        }
    }

    for (std::size_t i = 0; i < sols.size(); ++i) {
        evaluate_solution(sols[i], inst);
        const auto& o = sols[i].objectives;
        out << "solution " << i << ": E_total_kJ=" << fixed(o.energy) << " T_max_s="
            << fixed(o.makespan) << " routes=" << sols[i].route_count()
            << " swaps=" << sols[i].swap_count() << "\n";
        for (const auto& v : validate(sols[i], inst)) {
            err << "solution " << i << ": " << to_string(v.kind) << " at " << v.where << ": "
                << v.message << "\n";
            status = usage;
        }
        if (recorded[i].contains("objectives")) {
            const auto& ro = recorded[i].at("objectives");
            const double e = ro.at("E_total_kJ").get<double>();
            const double t = ro.at("T_max_s").get<double>();
            if (std::abs(e - o.energy) > 1e-6 || std::abs(t - o.makespan) > 1e-6) {
                err << "warning: solution " << i << " recorded objectives (" << fixed(e) << ", "
                    << fixed(t) << ") differ from the re-evaluation\n";
            }
        }
    }
    if (!a.out.empty()) write_text_file(a.out, solutions_to_json(sols));
    return status;
}

} // namespace

int threads_default() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return std::max(1, threads_from_env(static_cast<int>(hw)));
}

RunResult run_algorithm(const std::string& algo, const Instance& instance, int robots,
                        const SearchConfig& config, const Budget& budget,
                        const RunOptions& options) {
    if (algo == "hrra") return hrra_run(instance, robots, config, budget, options);
    if (algo == "nsga2") return nsga2_baseline_run(instance, robots, config, budget, options);
    throw ConfigError("unknown algorithm '" + algo + "' (expected hrra or nsga2)");
}

void add_instance_flags(CLI::App& app, InstanceSource& src, bool allow_path) {
    if (allow_path) app.add_option("--instance", src.path, "Instance JSON file");
    app.add_option("--preset", src.preset, "Benchmark scenario table1-p1 .. table1-p15");
    app.add_option("--grid", src.grid, "Orchard grid RxC");
    src.n_opt = app.add_option("--n", src.n, "Number of tasks");
    src.ymin_opt = app.add_option("--yield-min", src.yield_min, "Smallest task yield (kg)");
    src.ymax_opt = app.add_option("--yield-max", src.yield_max, "Largest task yield (kg)");
    app.add_option("--depot", src.depot, "Depot placement")
        ->check(CLI::IsMember({"center", "corner"}));
    app.add_option("--distance", src.distance, "Distance model")
        ->check(CLI::IsMember({"corridor", "euclidean"}));
}

GeneratorSpec generator_spec(const InstanceSource& src, std::uint64_t seed) {
    GeneratorSpec spec;
    if (!src.preset.empty()) spec = table1_preset(parse_preset(src.preset), seed);
    if (!src.grid.empty()) spec.grid = parse_grid(src.grid);
    if (src.n_opt->count() > 0 || src.preset.empty()) spec.task_count = src.n;
    if (src.ymin_opt->count() > 0) spec.yield_min = src.yield_min;
    if (src.ymax_opt->count() > 0) spec.yield_max = src.yield_max;
    spec.depot_mode = parse_depot_mode(src.depot);
    spec.distance_mode = parse_distance_mode(src.distance);
    spec.seed = seed;
    return spec;
}

Instance resolve_instance(const InstanceSource& src, std::uint64_t seed) {
    if (!src.path.empty()) return load_instance(src.path);
    return generate_instance(generator_spec(src, seed));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-robot harvest task allocation: instance generation, solving and benchmarking",
                 "amerta"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded orchard instance");
    add_instance_flags(*gen_cmd, gen.src, false);
    gen_cmd->add_option("--seed", gen.seed, "Instance seed");
    gen_cmd->add_option("--out", gen.out, "Output file (stdout if omitted)");
    gen_cmd->add_flag("--embed-distances", gen.embed, "Write the full distance matrix");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run HRRA or the NSGA-II baseline");
    add_instance_flags(*solve_cmd, solve.src, true);
    solve_cmd->add_option("--seed", solve.seed, "Algorithm seed");
    solve.instance_seed_opt = solve_cmd->add_option(
        "--instance-seed", solve.instance_seed, "Seed for a generated instance (default --seed)");
    solve_cmd->add_option("--algo", solve.algo, "Algorithm")
        ->check(CLI::IsMember({"hrra", "nsga2"}));
    solve_cmd->add_option("--r", solve.robots, "Number of robots");
    solve_cmd->add_option("--pop", solve.pop, "Population size");
    solve_cmd->add_option("--theta", solve.theta, "Smallest load-limit ratio");
    solve_cmd->add_option("--budget", solve.budget, "secs:X or gens:X (default secs:0.5n)");
    solve_cmd->add_option("--out", solve.out, "Output directory");
    solve_cmd->add_flag("--debug-checks", solve.debug_checks,
                        "Validate every population member each generation");

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Re-evaluate stored solutions");
    add_instance_flags(*eval_cmd, eval.src, true);
    eval_cmd->add_option("--seed", eval.seed, "Seed for a generated instance");
    eval_cmd->add_option("--solution", eval.solution, "Solution JSON")->required();
    eval_cmd->add_option("--trace", eval.trace, "Write the event trace CSV of one solution");
    eval_cmd->add_option("--index", eval.index, "Solution traced with --trace");
    eval_cmd->add_option("--out", eval.out, "Write re-evaluated solutions JSON");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and its statistics");
    bench_cmd->add_option("--suite", bench.suite, "Suite JSON")->required();
    bench_cmd->add_option("--out", bench.out, "Report directory");

    PlotArgs plot;
    auto* plot_cmd = app.add_subcommand("plot", "Scatter plot of front CSVs as SVG");
    plot_cmd->add_option("fronts", plot.fronts, "Front CSV files")->required();
    plot_cmd->add_option("--out", plot.out, "SVG file (stdout if omitted)");
    plot_cmd->add_option("--title", plot.title, "Plot title");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out, err);
        if (*solve_cmd) return cmd_solve(solve, out, err);
        if (*eval_cmd) return cmd_eval(eval, out, err);
        if (*bench_cmd) return cmd_bench(bench, out, err);
        if (*plot_cmd) return cmd_plot(plot, out, err);
    } catch (const InfeasibleInstance& e) {
        err << "infeasible: " << e.what() << "\n";
        return infeasible;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const EncodingError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
    return usage;
}

} // namespace amerta::cli
