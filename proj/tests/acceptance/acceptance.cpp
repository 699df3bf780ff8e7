// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "artifacts.hpp"
#include "cli.hpp"

#include <amerta/assignment.hpp>
#include <amerta/indicators.hpp>
#include <amerta/instance_io.hpp>
#include <amerta/moea.hpp>
#include <amerta/parallel.hpp>
#include <amerta/search.hpp>
#include <amerta/simulator.hpp>
#include <amerta/stats.hpp>

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace amerta;

namespace {

struct Check {
    bool ok = true;
    std::string first_failure;
    std::size_t failures = 0;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        if (ok) first_failure = what;
        ok = false;
        ++failures;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

// ---- 1. formula fidelity ----

Check c1_formulas(std::string& detail) {
    Check c;
    const Params p;
    c.expect(close(travel_energy(10, 0, p), 0.613125, 1e-9), "E(10,0)");
    c.expect(close(travel_energy(0, 123, p), 0.0, 1e-9), "E(0,L)");
    c.expect(close(travel_energy(100, 300, p), 24.525, 1e-9), "E(100,300)");
    c.expect(close(travel_time(10, 0, p), 0.613125 / 3.9, 1e-9), "T(10,0)");
    c.expect(close(travel_time(0, 0, p), 0.0, 1e-9), "T(0,0)");
    c.expect(close(travel_time(100, 300, p), 24.525 / 3.9, 1e-9), "T(100,300)");
    c.expect(close(travel_time(100, 300, p), 6.288462, 1e-6), "T(100,300) printed value");
    const auto pick = picking_cost(50, p);
    c.expect(close(pick.energy, 25, 1e-9) && close(pick.time, 350, 1e-9), "pick(50)");
    const auto zero = picking_cost(0, p);
    c.expect(zero.energy == 0.0 && zero.time == 0.0, "pick(0)");

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(0.0, 500.0);
    std::uniform_real_distribution<double> load(0.0, 300.0);
    for (int i = 0; i < 10; ++i) {
        const double d = dist(rng);
        const double l = load(rng);
        const double q = load(rng);
        c.expect(close(travel_energy(d, l, p), oracle::energy(d, l), 1e-9), "random E");
        c.expect(close(travel_time(d, l, p), oracle::time(d, l), 1e-9), "random T");
        const auto pc = picking_cost(q, p);
        c.expect(close(pc.energy, 0.5 * q, 1e-9) && close(pc.time, 7.0 * q, 1e-9), "random pick");
    }
    detail = "9 worked examples + 10 random inputs, tol 1e-9";
    return c;
}

// ---- 2. simulator invariants ----

Solution random_schedule(const Instance& inst, int robots, std::mt19937_64& rng) {
    std::vector<int> order(static_cast<std::size_t>(inst.task_count()));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    Solution s(robots);
    const double cap = inst.params.load_capacity;
    for (int t : order) {
        auto& routes = s.robots[rng() % static_cast<std::size_t>(robots)];
        const bool fresh = routes.empty() || rng() % 10 < 3;
        if (fresh || routes.back().load(inst) + inst.yield(t) > cap) routes.emplace_back();
        routes.back().tasks.push_back(t);
    }
    return s;
}

Check c2_simulator(std::string& detail) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(77);
    const Params p;
    std::size_t swaps = 0;
    std::size_t truncations = 0;
    std::size_t forced = 0;
    std::size_t events = 0;
    for (int trial = 0; trial < 500; ++trial) {
        GeneratorSpec spec;
        spec.grid = {5 + static_cast<int>(rng() % 16), 5 + static_cast<int>(rng() % 16)};
        spec.task_count = 1 + static_cast<int>(rng() % 30);
        spec.seed = rng();
        spec.distance_mode = rng() % 2 ? DistanceMode::corridor : DistanceMode::euclidean;
        spec.depot_mode = rng() % 2 ? DepotMode::center : DepotMode::corner;
        const Instance inst = generate_instance(spec);
        const int robots = 1 + static_cast<int>(rng() % 3);
        const Solution schedule = random_schedule(inst, robots, rng);
        const std::string where = "instance " + std::to_string(trial);

        double trace_energy = 0.0;
        double trace_time_max = 0.0;
        for (int r = 0; r < robots; ++r) {
            const auto& routes = schedule.robots[static_cast<std::size_t>(r)];
            const RobotTrace tr = simulate_robot(routes, inst);
            swaps += static_cast<std::size_t>(tr.swap_count);
            truncations += static_cast<std::size_t>(tr.truncation_count);
            forced += static_cast<std::size_t>(tr.forced_swap_count);
            events += tr.events.size();
            const auto& ev = tr.events;
            if (ev.empty()) {
                c.expect(routes.empty(), where + ": no events for a busy robot");
                continue;
            }
            c.expect(ev.front().node == kDepot && !ev.front().swapped, where + ": start event");
            c.expect(!ev.back().swapped, where + ": swap at terminal event");

            double legs_e = 0.0;
            double legs_t = 0.0;
            double picks_e = 0.0;
            double picks_t = 0.0;
            int swap_events = 0;
            for (std::size_t k = 0; k < ev.size(); ++k) {
                const auto& e = ev[k];
                c.expect(e.battery_arrival >= -1e-9 && e.battery_arrival <= p.battery_capacity + 1e-9,
                         where + ": arrival battery out of range");
                c.expect(e.battery >= -1e-9 && e.battery <= p.battery_capacity + 1e-9,
                         where + ": battery out of range");
                bool tasks_remain = false;
                for (std::size_t j = k + 1; j < ev.size(); ++j) tasks_remain |= ev[j].node != kDepot;
                if (e.swapped) {
                    ++swap_events;
                    c.expect(e.node == kDepot, where + ": swap away from the depot");
                    c.expect(e.battery_arrival <= p.battery_threshold + 1e-9,
                             where + ": swap above threshold");
                    c.expect(tasks_remain, where + ": swap with no task left");
                    c.expect(close(e.battery, p.battery_capacity, 1e-9), where + ": swap not full");
                } else if (k > 0 && e.node == kDepot && tasks_remain) {
                    c.expect(e.battery_arrival > p.battery_threshold,
                             where + ": missed swap at the depot");
                }
                if (k > 0) {
                    const auto& prev = ev[k - 1];
                    const double leg = oracle::energy(inst.distance(prev.node, e.node), prev.load);
                    legs_e += leg;
                    legs_t += leg / 3.9;
                }
                if (e.node != kDepot) {
                    picks_e += 0.5 * inst.yield(e.node);
                    picks_t += 7.0 * inst.yield(e.node);
                }
            }
            c.expect(swap_events == tr.swap_count, where + ": swap count");
            c.expect(close(legs_e + picks_e, tr.total_energy, 1e-6), where + ": energy sum");
            c.expect(close(ev.back().cumulative_energy, tr.total_energy, 1e-6),
                     where + ": cumulative energy");
            c.expect(close(legs_t + picks_t + 150.0 * swap_events, tr.total_time, 1e-6),
                     where + ": time sum");
            trace_energy += legs_e + picks_e;
            trace_time_max = std::max(trace_time_max, tr.total_time);
        }
        Solution s = schedule;
        const ObjectiveVector obj = evaluate_solution(s, inst);
        c.expect(close(obj.energy, trace_energy, 1e-6), where + ": E_total vs trace");
        c.expect(close(obj.makespan, trace_time_max, 1e-6), where + ": T_max vs trace");
        c.expect(validate(s, inst).empty(), where + ": evaluated solution invalid");
    }
    const double secs = seconds_since(t0);
    c.expect(forced == 0, "forced swaps occurred");
    c.expect(secs < 60.0, "runtime " + fmt(secs) + " s");
    detail = "500 instances, " + std::to_string(events) + " events, " + std::to_string(swaps) +
             " swaps, " + std::to_string(truncations) + " truncations, " + fmt(secs, 3) + " s";
    return c;
}

// ---- 3. assignment subproblems ----

Check c3_milp(std::string& detail) {
    Check c;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> len(1.0, 1000.0);
    std::uniform_real_distribution<double> init(0.0, 2000.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng() % 8;
        const int r = 1 + static_cast<int>(rng() % 4);
        std::vector<double> times(m);
        // Every third case draws from a few integer lengths, so ties are common.
        const bool ties = trial % 3 == 0;
        for (auto& t : times) t = ties ? static_cast<double>(100 * (1 + rng() % 4)) : len(rng);
        const auto t0 = std::chrono::steady_clock::now();
        const AssignmentResult res = solve_milp1(times, r);
        const double secs = seconds_since(t0);
        worst = std::max(worst, secs);
        const std::string where = "milp1 case " + std::to_string(trial);
        c.expect(res.optimal, where + ": not proven optimal");
        c.expect(secs < 1.0, where + ": slow");
        c.expect(close(res.makespan, oracle::milp1(times, r), 1e-9), where + ": makespan");
        std::vector<double> load(static_cast<std::size_t>(r), 0.0);
        for (std::size_t i = 0; i < m; ++i) load[static_cast<std::size_t>(res.item_to_robot[i])] += times[i];
        c.expect(close(*std::max_element(load.begin(), load.end()), res.makespan, 1e-9),
                 where + ": assignment does not realise the makespan");
    }
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng() % 8;
        const std::size_t r = 1 + rng() % 4;
        std::vector<double> segs(m);
        std::vector<double> start(r);
        for (auto& t : segs) t = len(rng);
        for (auto& t : start) t = rng() % 4 == 0 ? 0.0 : init(rng);
        const auto t0 = std::chrono::steady_clock::now();
        const AssignmentResult res = solve_milp2(segs, start, 150.0);
        const double secs = seconds_since(t0);
        worst = std::max(worst, secs);
        const std::string where = "milp2 case " + std::to_string(trial);
        c.expect(res.optimal, where + ": not proven optimal");
        c.expect(secs < 1.0, where + ": slow");
        c.expect(close(res.makespan, oracle::milp2(segs, start, 150.0), 1e-9), where + ": makespan");
    }
    detail = "200 + 200 cases, slowest " + fmt(worst * 1e3, 3) + " ms";
    return c;
}

// ---- 4. route improvement ----

bool dominated_by(const oracle::Cost& a, const oracle::Cost& b) {
    return b.energy <= a.energy + 1e-9 && b.time <= a.time + 1e-9 &&
           (b.energy < a.energy - 1e-9 || b.time < a.time - 1e-9);
}

bool two_opt_stable(const std::vector<int>& tasks, const Instance& inst) {
    const auto base = oracle::route(tasks, inst);
    for (std::size_t i = 0; i + 1 < tasks.size(); ++i) {
        for (std::size_t j = i + 1; j < tasks.size(); ++j) {
            std::vector<int> v = tasks;
            std::reverse(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(j) + 1);
            if (dominated_by(base, oracle::route(v, inst))) return false;
        }
    }
    return true;
}

Check c4_drrm(std::string& detail) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(404);
    int improved = 0;
    for (int trial = 0; trial < 100; ++trial) {
        GeneratorSpec spec;
        spec.grid = {8 + static_cast<int>(rng() % 13), 8 + static_cast<int>(rng() % 13)};
        spec.task_count = 5;
        spec.yield_min = 40;
        spec.yield_max = 60;
        spec.seed = rng();
        spec.distance_mode = rng() % 2 ? DistanceMode::corridor : DistanceMode::euclidean;
        const Instance inst = generate_instance(spec);
        std::vector<int> tasks{1, 2, 3, 4, 5};
        std::shuffle(tasks.begin(), tasks.end(), rng);
        const Route out = drrm(Route(tasks), inst);
        const std::string where = "route " + std::to_string(trial);

        const auto before = oracle::route(tasks, inst);
        const auto after = oracle::route(out.tasks, inst);
        c.expect(!dominated_by(after, before), where + ": input dominates output");
        c.expect(two_opt_stable(out.tasks, inst), where + ": not 2-opt stable");
        if (dominated_by(before, after)) ++improved;

        std::vector<int> perm{1, 2, 3, 4, 5};
        bool in_optima = false;
        do {
            if (perm == out.tasks) in_optima = two_opt_stable(perm, inst);
        } while (std::next_permutation(perm.begin(), perm.end()));
        c.expect(in_optima, where + ": output is not a 2-opt local optimum of the enumeration");
    }
    const double secs = seconds_since(t0);
    c.expect(secs < 30.0, "runtime " + fmt(secs) + " s");
    detail = "100 routes, " + std::to_string(improved) + " strictly improved, " + fmt(secs, 3) + " s";
    return c;
}

// ---- 5. exact front recovery ----

struct Recovery {
    double coverage = 0.0;
    std::size_t true_points = 0;
    std::vector<std::string> dominated; // instances with a returned point beaten by the true front
};

Recovery recover_fronts(int trrm_moves) {
    Recovery out;
    double coverage_sum = 0.0;
    for (int k = 0; k < 20; ++k) {
        GeneratorSpec spec;
        spec.grid = {6 + k % 5, 6 + (k * 3) % 5};
        spec.task_count = 4 + k % 3;
        spec.seed = 500 + static_cast<std::uint64_t>(k);
        const Instance inst = generate_instance(spec);
        const auto truth = oracle::exhaustive_front_two_robots(inst);
        out.true_points += truth.size();

        SearchConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(k) + 1;
        cfg.trrm_move_count = trrm_moves;
        const RunResult res = hrra_run(inst, 2, cfg, Budget::generations(200));
        std::size_t covered = 0;
        for (const auto& t : truth) {
            const bool hit = std::any_of(res.front.begin(), res.front.end(), [&](const Solution& s) {
                return close(s.objectives.energy, t.energy, 1e-6 * std::max(1.0, t.energy)) &&
                       close(s.objectives.makespan, t.makespan, 1e-6 * std::max(1.0, t.makespan));
            });
            if (hit) ++covered;
        }
        const bool beaten = std::any_of(res.front.begin(), res.front.end(), [&](const Solution& s) {
            return std::any_of(truth.begin(), truth.end(), [&](const ObjectiveVector& t) {
                return oracle::dominates(t, s.objectives, 1e-7);
            });
        });
        if (beaten) out.dominated.push_back(std::to_string(k));
        coverage_sum += static_cast<double>(covered) / static_cast<double>(truth.size());
    }
    out.coverage = coverage_sum / 20.0;
    return out;
}

Check c5_exact_front(std::string& detail) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const Recovery def = recover_fronts(SearchConfig{}.trrm_move_count);
    const double secs = seconds_since(t0);
    for (const auto& k : def.dominated) {
        c.expect(false, "instance " + k + ": a returned point is dominated by the true front");
    }
    c.expect(def.coverage >= 0.9, "mean coverage " + fmt(def.coverage));
    c.expect(secs < 300.0, "runtime " + fmt(secs) + " s");
    // Informational only: the same runs with two TRRM moves per offspring.
    const Recovery two = recover_fronts(2);
    detail = "20 instances, " + std::to_string(def.true_points) + " true-front points, mean coverage " +
             fmt(100.0 * def.coverage, 4) + "%, " + std::to_string(def.dominated.size()) +
             " instances with dominated points, " + fmt(secs, 3) + " s [trrm_move_count=2, not scored: " +
             fmt(100.0 * two.coverage, 4) + "%, " + std::to_string(two.dominated.size()) + " dominated]";
    return c;
}

// ---- 6. improvement over the initial front and over the baseline ----

Check c6_improvement(std::string& detail) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    struct Pair {
        RunResult hrra;
        RunResult nsga2;
    };
    std::vector<Pair> runs(10);
    // Two independent runs at a time at most: both algorithms get the same wall budget.
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int workers = std::clamp(hw / 2, 1, 20);
    parallel_for(20, workers, [&](std::size_t job) {
        const std::size_t seed = job / 2;
        GeneratorSpec spec;
        spec.grid = {20, 20};
        spec.task_count = 40;
        spec.seed = seed + 1;
        const Instance inst = generate_instance(spec);
        SearchConfig cfg;
        cfg.pnum = 30;
        cfg.seed = seed + 1;
        const Budget budget = Budget::seconds(20.0);
        if (job % 2 == 0) {
            runs[seed].hrra = hrra_run(inst, 4, cfg, budget);
        } else {
            runs[seed].nsga2 = nsga2_baseline_run(inst, 4, cfg, budget);
        }
    });

    auto objs = [](const RunResult& r) {
        std::vector<ObjectiveVector> out;
        for (const auto& s : r.front) out.push_back(s.objectives);
        return out;
    };
    int elitist = 0;
    int wins = 0;
    std::string hv_list;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto h = objs(runs[k].hrra);
        const auto n = objs(runs[k].nsga2);
        const std::vector<std::vector<ObjectiveVector>> sets{h, n, runs[k].hrra.initial_front};
        const Normalization norm = Normalization::enclosing(sets, 0.01);
        const double hv_h = hypervolume_2d(norm.apply(h));
        const double hv_n = hypervolume_2d(norm.apply(n));
        const double hv_i = hypervolume_2d(norm.apply(runs[k].hrra.initial_front));
        if (hv_h >= hv_i - 1e-12) ++elitist;
        if (hv_h >= hv_n) ++wins;
        hv_list += (k ? " " : "") + fmt(hv_h, 3) + "/" + fmt(hv_n, 3);
    }
    c.expect(elitist == 10, "HV(final) >= HV(initial) in " + std::to_string(elitist) + "/10");
    c.expect(wins >= 7, "HRRA HV >= NSGA-II HV in " + std::to_string(wins) + "/10");
    detail = "elitism " + std::to_string(elitist) + "/10, HRRA >= NSGA-II " + std::to_string(wins) +
             "/10 (HV hrra/nsga2: " + hv_list + "), " + fmt(seconds_since(t0), 4) + " s";
    return c;
}

// ---- 7. indicators ----

std::vector<Point2> random_front(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.2);
    std::vector<Point2> pts(1 + rng() % 8);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

Check c7_indicators(std::string& detail) {
    Check c;
    const std::vector<Point2> one{{0.5, 0.5}};
    const std::vector<Point2> corner{{1.0, 1.0}};
    const std::vector<Point2> two{{0.2, 0.8}, {0.8, 0.2}};
    const std::vector<Point2> origin{{0.0, 0.0}};
    const std::vector<Point2> r3{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    c.expect(close(hypervolume_2d(one), 0.25, 1e-12), "HV single point");
    c.expect(close(hypervolume_2d(corner), 0.0, 1e-12), "HV reference point");
    c.expect(close(hypervolume_2d(two), 0.28, 1e-12), "HV two points");
    c.expect(close(igd_plus(corner, origin), std::sqrt(2.0), 1e-12), "IGD+ sqrt 2");
    c.expect(close(igd_plus(origin, origin), 0.0, 1e-12), "IGD+ identical");
    c.expect(close(igd_plus(r3, r3), 0.0, 1e-12), "IGD+ front equals reference");
    const std::vector<std::vector<ObjectiveVector>> seg{{{0, 1}, {1, 0}}};
    const auto ref = build_reference_front(seg, 3);
    c.expect(ref.points.size() == 3 && close(ref.points[1].f1, 0.5, 1e-12) &&
                 close(ref.points[1].f2, 0.5, 1e-12),
             "reference midpoint");

    std::mt19937_64 rng(707);
    for (int trial = 0; trial < 1000; ++trial) {
        auto front = random_front(rng);
        const auto reference = random_front(rng);
        const double hv = hypervolume_2d(front);
        const double igd = igd_plus(front, reference);
        const bool covered = std::all_of(reference.begin(), reference.end(), [&](const Point2& z) {
            return std::any_of(front.begin(), front.end(),
                               [&](const Point2& a) { return a.f1 <= z.f1 && a.f2 <= z.f2; });
        });
        c.expect((igd == 0.0) == covered, "IGD+ zero iff dominance, trial " + std::to_string(trial));
        front.push_back(random_front(rng)[0]);
        c.expect(hypervolume_2d(front) >= hv - 1e-15, "HV monotone, trial " + std::to_string(trial));
        c.expect(igd_plus(front, reference) <= igd + 1e-15,
                 "IGD+ monotone, trial " + std::to_string(trial));
    }
    detail = "7 closed-form examples (tol 1e-12), 1000 random fronts";
    return c;
}

// ---- 8. statistics ----

Check c8_stats(std::string& detail) {
    Check c;
    std::vector<double> d(45);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = 0.01 * static_cast<double>(i + 1);
    const auto w = wilcoxon_signed_rank(d);
    c.expect(w.r_plus == 1035.0 && w.r_minus == 0.0, "R+ = 1035, R- = 0");

    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> v(-20, 20);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x(1 + rng() % 60);
        for (auto& e : x) e = 0.5 * v(rng);
        const auto r = wilcoxon_signed_rank(x);
        const double m = static_cast<double>(r.pairs_used);
        c.expect(close(r.r_plus + r.r_minus, m * (m + 1) / 2, 1e-9),
                 "rank-sum identity, trial " + std::to_string(trial));
    }

    const std::vector<std::vector<double>> m{{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {1, 2, 3}};
    const auto f = friedman_ranks(m);
    c.expect(close(f.mean_ranks[0], 1.25, 1e-12) && close(f.mean_ranks[1], 2.0, 1e-12) &&
                 close(f.mean_ranks[2], 2.75, 1e-12),
             "Friedman mean ranks");
    c.expect(close(f.statistic, 4.5, 1e-12), "Friedman statistic");
    detail = "45-pair extreme, 1000 random rank-sum checks, 4x3 Friedman example";
    return c;
}

// ---- 9. reproducibility ----

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::vector<std::string>& args, const char* threads) {
    ::setenv("AMERTA_THREADS", threads, 1);
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::run_cli(args, out, err);
    r.out = out.str();
    return r;
}

Check c9_reproducible(std::string& detail) {
    Check c;
    const fs::path root = fs::path(AMERTA_TEST_TMPDIR) / "reproducibility";
    fs::remove_all(root);
    fs::create_directories(root);
    int compared = 0;

    auto same_files = [&](const fs::path& a, const fs::path& b, const std::string& what) {
        c.expect(fs::exists(a) && fs::exists(b), what + ": missing output");
        if (fs::exists(a) && fs::exists(b)) {
            c.expect(read_text_file(a) == read_text_file(b), what + ": outputs differ");
            ++compared;
        }
    };

    const std::vector<std::string> gen{"gen", "--preset", "table1-p2", "--seed", "9"};
    const auto g1 = cli(gen, "1");
    const auto g2 = cli(gen, "4");
    c.expect(g1.code == 0 && g1.out == g2.out, "gen output differs");
    ++compared;

    for (const std::string algo : {"hrra", "nsga2"}) {
        std::vector<fs::path> dirs;
        for (const char* threads : {"1", "1", "4"}) {
            const fs::path dir = root / (algo + "_" + std::to_string(dirs.size()));
            dirs.push_back(dir);
            const auto r = cli({"solve", "--preset", "table1-p1", "--algo", algo, "--r", "4", "--seed",
                                "7", "--budget", "gens:15", "--out", dir.string()},
                               threads);
            c.expect(r.code == 0, algo + ": solve failed");
        }
        for (std::size_t k = 1; k < dirs.size(); ++k) {
            same_files(dirs[0] / "front.csv", dirs[k] / "front.csv", algo + " front.csv");
            same_files(dirs[0] / "solutions.json", dirs[k] / "solutions.json", algo + " solutions.json");
        }
    }

    write_text_file(root / "suite.json", R"({
      "runs": 2, "seed": 4, "robots": [2, 3], "budget": "gens:5",
      "instances": [{"name": "a", "grid": "10x10", "n": 12, "seed": 1},
                    {"name": "b", "grid": "10x10", "n": 12, "seed": 2}],
      "algorithms": [{"name": "hrra", "pop": 10}, {"name": "nsga2", "pop": 10}]
    })");
    const auto b1 = cli({"bench", "--suite", (root / "suite.json").string(), "--out",
                         (root / "bench1").string()},
                        "1");
    const auto b4 = cli({"bench", "--suite", (root / "suite.json").string(), "--out",
                         (root / "bench4").string()},
                        "4");
    c.expect(b1.code == 0 && b4.code == 0, "bench failed");
    for (const char* f : {"metrics.csv", "summary.csv", "wilcoxon.csv", "friedman.csv",
                          "fronts/a_r2_hrra_run0.csv", "fronts/b_r3_nsga2_run1.csv"}) {
        same_files(root / "bench1" / f, root / "bench4" / f, std::string("bench ") + f);
    }
    ::unsetenv("AMERTA_THREADS");
    detail = std::to_string(compared) + " byte comparisons (gen, solve hrra/nsga2, bench; 1 vs 4 threads)";
    return c;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check(std::string&)> run;
    };
    const std::vector<Criterion> criteria{
        {"1 formula fidelity", c1_formulas},
        {"2 simulator invariants", c2_simulator},
        {"3 assignment oracles", c3_milp},
        {"4 route improvement quality", c4_drrm},
        {"5 exact front recovery", c5_exact_front},
        {"6 improvement and dominance", c6_improvement},
        {"7 indicator correctness", c7_indicators},
        {"8 statistics", c8_stats},
        {"9 reproducibility", c9_reproducible},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        std::string detail;
        Check result;
        try {
            result = cr.run(detail);
        } catch (const std::exception& e) {
            result.expect(false, std::string("exception: ") + e.what());
        }
        if (result.ok) {
            std::printf("PASS %s: %s\n", cr.name, detail.c_str());
        } else {
            ++failed;
            std::printf("FAIL %s: %s (%zu failed checks; first: %s)\n", cr.name, detail.c_str(),
                        result.failures, result.first_failure.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
