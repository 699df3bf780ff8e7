#include "artifacts.hpp"
#include "cli.hpp"
#include "commands.hpp"

#include <amerta/errors.hpp>
#include <amerta/indicators.hpp>
#include <amerta/instance_io.hpp>
#include <amerta/parallel.hpp>
#include <amerta/stats.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>

namespace amerta::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SuiteInstance {
    std::string name;
    Instance instance;
};

struct SuiteAlgorithm {
    std::string name;
    std::string algo;
    std::string budget; // empty: 0.5 n seconds
    int pop = 30;
    double theta = 0.8736;
};

struct Suite {
    std::vector<SuiteInstance> instances;
    std::vector<SuiteAlgorithm> algorithms;
    std::vector<int> robots;
    int runs = 10;
    std::uint64_t seed = 1;
    std::string reference;
};

Instance suite_instance(const json& j, const fs::path& base) {
    if (j.contains("path")) {
        fs::path p = j.at("path").get<std::string>();
        if (p.is_relative()) p = base / p;
        return load_instance(p);
    }
    GeneratorSpec spec;
    if (j.contains("preset")) {
        const std::string preset = j.at("preset").get<std::string>();
        constexpr std::string_view prefix = "table1-p";
        if (preset.rfind(prefix, 0) != 0) throw ConfigError("suite: bad preset '" + preset + "'");
        spec = table1_preset(std::stoi(preset.substr(prefix.size())), 1);
    }
    if (j.contains("grid")) {
        const std::string g = j.at("grid").get<std::string>();
        const auto x = g.find('x');
        if (x == std::string::npos) throw ConfigError("suite: grid must be RxC");
        spec.grid = {std::stoi(g.substr(0, x)), std::stoi(g.substr(x + 1))};
    }
    spec.task_count = j.value("n", spec.task_count);
    spec.yield_min = j.value("yield_min", spec.yield_min);
    spec.yield_max = j.value("yield_max", spec.yield_max);
    spec.seed = j.value("seed", std::uint64_t{1});
    return generate_instance(spec);
}

Suite load_suite(const fs::path& path) {
    try {
        const json doc = json::parse(read_text_file(path));
        Suite s;
        s.runs = doc.value("runs", 10);
        s.seed = doc.value("seed", std::uint64_t{1});
        s.robots = doc.value("robots", std::vector<int>{4});
        const std::string default_budget = doc.value("budget", std::string{});
        for (const auto& j : doc.at("instances")) {
            s.instances.push_back({j.at("name").get<std::string>(),
                                   suite_instance(j, path.parent_path())});
        }
        for (const auto& j : doc.at("algorithms")) {
            SuiteAlgorithm a;
            a.name = j.at("name").get<std::string>();
            a.algo = j.value("algo", a.name);
            a.budget = j.value("budget", default_budget);
            a.pop = j.value("pop", a.pop);
            a.theta = j.value("theta", a.theta);
            s.algorithms.push_back(a);
        }
        s.reference = doc.value("reference", s.algorithms.empty() ? "" : s.algorithms[0].name);
        if (s.instances.empty() || s.algorithms.empty() || s.robots.empty() || s.runs < 1) {
            throw ConfigError("suite: needs instances, algorithms, robots and runs >= 1");
        }
        bool found = false;
        for (const auto& a : s.algorithms) found = found || a.name == s.reference;
        if (!found) throw ConfigError("suite: reference '" + s.reference + "' is not listed");
        return s;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("suite: malformed document: ") + e.what());
    }
}

struct Cell {
    std::size_t instance = 0;
    int robots = 0;
    std::size_t algorithm = 0;
    int run = 0;
    std::uint64_t seed = 0;
    std::optional<RunResult> result;
    std::string error;
    double igd = 0.0;
    double hv = 0.0;
};

std::vector<ObjectiveVector> front_objectives(const RunResult& r) {
    std::vector<ObjectiveVector> out;
    for (const auto& s : r.front) out.push_back(s.objectives);
    return out;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? NAN : s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string num(double v) { return std::isnan(v) ? "NA" : fixed(v, 9); }

std::string verdict(const WilcoxonResult& w) {
    if (w.inconclusive) return "inconclusive";
    return w.significant ? "significant" : "not_significant";
}

} // namespace

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    const Suite suite = load_suite(args.suite);
    const fs::path dir(args.out);

    std::vector<Cell> cells;
    for (std::size_t i = 0; i < suite.instances.size(); ++i) {
        for (int r : suite.robots) {
            for (std::size_t a = 0; a < suite.algorithms.size(); ++a) {
                for (int k = 0; k < suite.runs; ++k) {
                    cells.push_back({i, r, a, k, suite.seed + static_cast<std::uint64_t>(k),
                                     std::nullopt, {}, 0.0, 0.0});
                }
            }
        }
    }

    // Each cell owns its seed and runs single-threaded, so the report does not
    // depend on how many cells run at once.
    parallel_for(cells.size(), threads_default(), [&](std::size_t c) {
        Cell& cell = cells[c];
        const auto& alg = suite.algorithms[cell.algorithm];
        const Instance& inst = suite.instances[cell.instance].instance;
        try {
            SearchConfig cfg;
            cfg.pnum = alg.pop;
            cfg.theta = alg.theta;
            cfg.seed = cell.seed;
            const Budget budget = alg.budget.empty() ? Budget::seconds(0.5 * inst.task_count())
                                                     : Budget::parse(alg.budget);
            cell.result = run_algorithm(alg.algo, inst, cell.robots, cfg, budget, RunOptions{});
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    });

    // Indicators per experiment (instance x robot count), normalised over every run.
    const std::size_t per_experiment = suite.algorithms.size() * static_cast<std::size_t>(suite.runs);
    const std::size_t experiments = cells.size() / per_experiment;
    for (std::size_t e = 0; e < experiments; ++e) {
        std::vector<std::vector<ObjectiveVector>> fronts;
        for (std::size_t c = e * per_experiment; c < (e + 1) * per_experiment; ++c) {
            if (cells[c].result) fronts.push_back(front_objectives(*cells[c].result));
        }
        if (fronts.empty()) continue;
        const ReferenceFront ref = build_reference_front(fronts);
        const Normalization hv_norm = Normalization::enclosing(fronts, 0.01);
        for (std::size_t c = e * per_experiment; c < (e + 1) * per_experiment; ++c) {
            if (!cells[c].result) continue;
            const auto objs = front_objectives(*cells[c].result);
            cells[c].igd = igd_plus(ref.normalization.apply(objs), ref.points);
            cells[c].hv = hypervolume_2d(hv_norm.apply(objs));
        }
    }

    std::string metrics = "instance,r,algorithm,run,seed,igd_plus,hv,n_front\n";
    std::size_t missing = 0;
    for (const auto& c : cells) {
        const auto& alg = suite.algorithms[c.algorithm];
        const std::string& iname = suite.instances[c.instance].name;
        metrics += iname + "," + std::to_string(c.robots) + "," + alg.name + "," +
                   std::to_string(c.run) + "," + std::to_string(c.seed) + ",";
        if (c.result) {
            metrics += fixed(c.igd, 9) + "," + fixed(c.hv, 9) + "," +
                       std::to_string(c.result->front.size()) + "\n";
            write_text_file(dir / "fronts" /
                                (iname + "_r" + std::to_string(c.robots) + "_" + alg.name +
                                 "_run" + std::to_string(c.run) + ".csv"),
                            front_csv(c.result->front, {AMERTA_VERSION, c.seed, "bench"}));
        } else {
            metrics += "NA,NA,NA\n";
            ++missing;
            err << "warning: " << iname << " r=" << c.robots << " " << alg.name << " run "
                << c.run << " failed: " << c.error << "\n";
        }
    }

    // Per experiment and algorithm means; these are the paired samples of the tests.
    const std::size_t k = suite.algorithms.size();
    std::vector<std::vector<double>> igd_means(experiments, std::vector<double>(k, NAN));
    std::vector<std::vector<double>> hv_means(experiments, std::vector<double>(k, NAN));
    std::string summary =
        "instance,r,algorithm,runs_ok,runs_missing,igd_mean,igd_std,hv_mean,hv_std\n";
    for (std::size_t e = 0; e < experiments; ++e) {
        for (std::size_t a = 0; a < k; ++a) {
            std::vector<double> igd;
            std::vector<double> hv;
            const std::size_t first = e * per_experiment + a * static_cast<std::size_t>(suite.runs);
            for (std::size_t c = first; c < first + static_cast<std::size_t>(suite.runs); ++c) {
                if (!cells[c].result) continue;
                igd.push_back(cells[c].igd);
                hv.push_back(cells[c].hv);
            }
            igd_means[e][a] = mean(igd);
            hv_means[e][a] = mean(hv);
            const Cell& c0 = cells[first];
            summary += suite.instances[c0.instance].name + "," + std::to_string(c0.robots) + "," +
                       suite.algorithms[a].name + "," + std::to_string(igd.size()) + "," +
                       std::to_string(static_cast<std::size_t>(suite.runs) - igd.size()) + "," +
                       num(mean(igd)) + "," + num(stddev(igd)) + "," + num(mean(hv)) + "," +
                       num(stddev(hv)) + "\n";
        }
    }

    // Blocks with a gap in any algorithm are left out of the tests.
    std::vector<std::size_t> complete;
    for (std::size_t e = 0; e < experiments; ++e) {
        bool all = true;
        for (std::size_t a = 0; a < k; ++a) all = all && !std::isnan(igd_means[e][a]);
        if (all) complete.push_back(e);
    }

    std::size_t ref = 0;
    while (suite.algorithms[ref].name != suite.reference) ++ref;
    std::string wilcoxon = "reference,algorithm,blocks,igd_r_plus,igd_r_minus,igd_p,igd_verdict,"
                           "hv_r_plus,hv_r_minus,hv_p,hv_verdict\n";
    for (std::size_t a = 0; a < k; ++a) {
        if (a == ref) continue;
        // Positive differences favour the reference algorithm on both indicators.
        std::vector<double> d_igd;
        std::vector<double> d_hv;
        for (std::size_t e : complete) {
            d_igd.push_back(igd_means[e][a] - igd_means[e][ref]);
            d_hv.push_back(hv_means[e][ref] - hv_means[e][a]);
        }
        const WilcoxonResult wi = wilcoxon_signed_rank(d_igd);
        const WilcoxonResult wh = wilcoxon_signed_rank(d_hv);
        wilcoxon += suite.reference + "," + suite.algorithms[a].name + "," +
                    std::to_string(complete.size()) + "," + fixed(wi.r_plus, 1) + "," +
                    fixed(wi.r_minus, 1) + "," + fixed(wi.p_value, 6) + "," + verdict(wi) + "," +
                    fixed(wh.r_plus, 1) + "," + fixed(wh.r_minus, 1) + "," +
                    fixed(wh.p_value, 6) + "," + verdict(wh) + "\n";
    }

    std::string friedman;
    if (k >= 2 && complete.size() >= 2) {
        std::vector<std::vector<double>> bi;
        std::vector<std::vector<double>> bh;
        for (std::size_t e : complete) {
            bi.push_back(igd_means[e]);
            bh.push_back(hv_means[e]);
        }
        const FriedmanResult fi = friedman_ranks(bi, true);
        const FriedmanResult fh = friedman_ranks(bh, false);
        friedman = "# blocks=" + std::to_string(complete.size()) +
                   " chi2_igd=" + fixed(fi.statistic) + " chi2_hv=" + fixed(fh.statistic) +
                   "\nalgorithm,mean_rank_igd,mean_rank_hv\n";
        for (std::size_t a = 0; a < k; ++a) {
            friedman += suite.algorithms[a].name + "," + fixed(fi.mean_ranks[a]) + "," +
                        fixed(fh.mean_ranks[a]) + "\n";
        }
    } else {
        friedman = "# needs at least 2 algorithms and 2 complete blocks\n"
                   "algorithm,mean_rank_igd,mean_rank_hv\n";
    }

    write_text_file(dir / "metrics.csv", metrics);
    write_text_file(dir / "summary.csv", summary);
    write_text_file(dir / "wilcoxon.csv", wilcoxon);
    write_text_file(dir / "friedman.csv", friedman);

    out << "bench: " << cells.size() << " runs (" << missing << " missing) over " << experiments
        << " experiments -> " << dir.string() << "\n";
    return ok;
}

} // namespace amerta::cli
