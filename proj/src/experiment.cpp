#include "pnav/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "pnav/controller.hpp"
#include "pnav/explore.hpp"

namespace pnav {

Config ExperimentConfig::to_config() const {
    Config c;
    c.exploration.d = d;
    c.exploration.veer_clearance = veer_clearance;
    c.exploration.decision_cap = decision_cap;
    c.exploration.time_budget = exploration_budget;
    c.controller.action_cap = action_cap;
    return c;
}

ExperimentConfig load_experiment_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r\n") != std::string::npos)
                throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            const auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "world") cfg.world = val;
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "num_tasks") cfg.num_tasks = std::stoi(val);
            else if (key == "reps") cfg.reps = std::stoi(val);
            else if (key == "task_lists") cfg.task_lists = std::stoi(val);
            else if (key == "exploration_budget") cfg.exploration_budget = std::stod(val);
            else if (key == "decision_cap") cfg.decision_cap = std::stoi(val);
            else if (key == "action_cap") cfg.action_cap = std::stoi(val);
            else if (key == "d") cfg.d = std::stod(val);
            else if (key == "veer_clearance") cfg.veer_clearance = std::stod(val);
            else if (key == "jobs") cfg.jobs = std::stoi(val);
            else if (key == "start") {
                Pose p;
                char comma;
                std::istringstream ss(val);
                if (!(ss >> p.pos.x >> comma >> p.pos.y >> comma >> p.theta))
                    throw ParseError("bad start pose");
                cfg.start = p;
            } else {
                throw ParseError("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    if (cfg.num_tasks < 0 || cfg.reps < 1 || cfg.task_lists < 1 || cfg.action_cap < 1 ||
        cfg.decision_cap < 1 || cfg.exploration_budget <= 0 || cfg.d <= 0)
        throw ValidationError("experiment config values out of range");
    return cfg;
}

std::vector<Vec2> generate_targets(const World& world, int n, std::uint64_t seed,
                                   double clearance) {
    std::vector<Vec2> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, world.width());
    std::uniform_real_distribution<double> uy(0.0, world.height());
    int rejects = 0;
    while (static_cast<int>(out.size()) < n) {
        const Vec2 p{ux(rng), uy(rng)};
        if (world.clearance(p, clearance + 1.0) >= clearance) {
            out.push_back(p);
            rejects = 0;
        } else if (++rejects >= 10000) {
            throw WorldTooClutteredError("10000 consecutive target rejections");
        }
    }
    return out;
}

double coverage(const PassageGrid& grid, const Skeleton& skeleton, const World& world,
                double robot_radius) {
    const double cell = grid.cell_size();
    int free = 0, covered = 0;
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const Vec2 center = cell_center({i, j}, cell);
            if (!world.in_bounds(center) ||
                world.clearance(center, robot_radius + 1.0) < robot_radius)
                continue;
            ++free;
            if (grid.label({i, j}) == CellLabel::Passage || skeleton.region_at(center))
                ++covered;
        }
    }
    return free == 0 ? 0.0 : static_cast<double>(covered) / free;
}

namespace {

RunMetrics run_one(const BenchmarkWorld& bw, const ExperimentConfig& ecfg, const Config& cfg,
                   const std::vector<Vec2>& targets, bool with_exploration, int list, int rep) {
    RunMetrics m;
    m.system = with_exploration ? "explore" : "ablated";
    m.task_list = list;
    m.rep = rep;
    m.targets = static_cast<int>(targets.size());

    const Pose start = ecfg.start.value_or(bw.start);
    try {
        PassageGrid grid(bw.world.width(), bw.world.height(), cfg.model.grid_cell);
        Skeleton skeleton(cfg.model);
        Pose pose = start;

        if (with_exploration) {
            ExplorationResult er = explore(bw.world, start, cfg, default_classifier(cfg.exploration.d));
            grid = std::move(er.grid);
            skeleton = std::move(er.skeleton);
            pose = er.final_pose;
            m.time_total += er.elapsed;
            m.dist_total += er.distance;
        }
        m.initial_coverage = coverage(grid, skeleton, bw.world, cfg.motion.robot_radius);

        int plan_rule = 0, heuristic = 0;
        double plan_seconds = 0;
        for (const Vec2& target : targets) {
            const TaskResult tr = run_task(bw.world, pose, target, skeleton, cfg);
            pose = tr.final_pose;
            if (tr.reached) ++m.reached;
            m.time_tasks += tr.sim_time;
            m.dist_tasks += tr.distance;
            plan_rule += tr.plan_rule_decisions;
            heuristic += tr.heuristic_decisions;
            plan_seconds += tr.plan_seconds;
        }
        m.time_total += m.time_tasks;
        m.dist_total += m.dist_tasks;
        m.heuristic_fraction =
            plan_rule + heuristic == 0
                ? 0.0
                : static_cast<double>(heuristic) / (plan_rule + heuristic);
        m.plan_seconds_per_task = targets.empty() ? 0.0 : plan_seconds / targets.size();
        m.final_coverage = coverage(grid, skeleton, bw.world, cfg.motion.robot_radius);
        m.skeleton_regions = static_cast<int>(skeleton.region_count());
        m.skeleton_edges = static_cast<int>(skeleton.edge_count());
    } catch (const std::exception&) {
        m.failed = true;
    }
    return m;
}

MetricsReport aggregate(const std::string& system, const std::vector<RunMetrics>& runs) {
    MetricsReport rep;
    rep.system = system;
    for (const RunMetrics& m : runs) {
        if (m.system != system) continue;
        ++rep.runs;
        if (m.failed) {
            ++rep.failed_runs;
            continue;
        }
        rep.success_rate += m.success_rate();
        rep.travel_time_tasks += m.time_tasks;
        rep.travel_time_total += m.time_total;
        rep.distance_tasks += m.dist_tasks;
        rep.distance_total += m.dist_total;
        rep.initial_coverage += m.initial_coverage;
        rep.final_coverage += m.final_coverage;
        rep.heuristic_decision_fraction += m.heuristic_fraction;
        rep.mean_planning_time += m.plan_seconds_per_task;
        rep.skeleton_regions += m.skeleton_regions;
        rep.skeleton_edges += m.skeleton_edges;
    }
    const int ok = rep.runs - rep.failed_runs;
    if (ok > 0) {
        rep.success_rate /= ok;
        rep.travel_time_tasks /= ok;
        rep.travel_time_total /= ok;
        rep.distance_tasks /= ok;
        rep.distance_total /= ok;
        rep.initial_coverage /= ok;
        rep.final_coverage /= ok;
        rep.heuristic_decision_fraction /= ok;
        rep.mean_planning_time /= ok;
        rep.skeleton_regions /= ok;
        rep.skeleton_edges /= ok;
    }
    return rep;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& ecfg) {
    const BenchmarkWorld bw = resolve_world(ecfg.world);
    const Config cfg = ecfg.to_config();

    std::vector<std::vector<Vec2>> target_lists;
    for (int l = 0; l < ecfg.task_lists; ++l)
        target_lists.push_back(
            generate_targets(bw.world, ecfg.num_tasks, ecfg.seed + static_cast<std::uint64_t>(l),
                             cfg.motion.robot_radius));

    struct Job {
        bool with_exploration;
        int list, rep;
    };
    std::vector<Job> jobs;
    const std::vector<bool> systems = ecfg.ablate_only ? std::vector<bool>{false}
                                                       : std::vector<bool>{true, false};
    for (const bool sys : systems)
        for (int l = 0; l < ecfg.task_lists; ++l)
            for (int r = 0; r < ecfg.reps; ++r) jobs.push_back({sys, l, r});

    ExperimentResult result;
    result.runs.resize(jobs.size());
    const int workers = std::max(1, std::min<int>(ecfg.jobs, static_cast<int>(jobs.size())));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            const Job& j = jobs[i];
            result.runs[i] = run_one(bw, ecfg, cfg, target_lists[j.list], j.with_exploration,
                                     j.list, j.rep);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const bool sys : systems)
        result.reports.push_back(aggregate(sys ? "explore" : "ablated", result.runs));
    return result;
}

std::string report_text(const ExperimentResult& result) {
    std::ostringstream out;
    char buf[512];
    out << "system,task_list,rep,targets,reached,success_rate,time_tasks,time_total,"
           "dist_tasks,dist_total,initial_coverage,final_coverage,heuristic_fraction,"
           "skeleton_regions,skeleton_edges,failed\n";
    for (const RunMetrics& m : result.runs) {
        std::snprintf(buf, sizeof(buf),
                      "%s,%d,%d,%d,%d,%.6f,%.3f,%.3f,%.3f,%.3f,%.6f,%.6f,%.6f,%d,%d,%d\n",
                      m.system.c_str(), m.task_list, m.rep, m.targets, m.reached,
                      m.success_rate(), m.time_tasks, m.time_total, m.dist_tasks, m.dist_total,
                      m.initial_coverage, m.final_coverage, m.heuristic_fraction,
                      m.skeleton_regions, m.skeleton_edges, m.failed ? 1 : 0);
        out << buf;
    }
    out << "\n";
    for (const MetricsReport& r : result.reports) {
        std::snprintf(
            buf, sizeof(buf),
            "[%s] runs=%d failed=%d success_rate=%.2f%% time_tasks=%.1fs time_total=%.1fs "
            "dist_tasks=%.1fm dist_total=%.1fm initial_coverage=%.2f%% final_coverage=%.2f%% "
            "heuristic_fraction=%.2f%% skeleton=%.1f regions / %.1f edges\n",
            r.system.c_str(), r.runs, r.failed_runs, 100 * r.success_rate, r.travel_time_tasks,
            r.travel_time_total, r.distance_tasks, r.distance_total, 100 * r.initial_coverage,
            100 * r.final_coverage, 100 * r.heuristic_decision_fraction, r.skeleton_regions,
            r.skeleton_edges);
        out << buf;
    }
    return out.str();
}

std::string timing_text(const ExperimentResult& result) {
    std::ostringstream out;
    char buf[128];
    out << "system,task_list,rep,plan_seconds_per_task\n";
    for (const RunMetrics& m : result.runs) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.6f\n", m.system.c_str(), m.task_list, m.rep,
                      m.plan_seconds_per_task);
        out << buf;
    }
    for (const MetricsReport& r : result.reports) {
        std::snprintf(buf, sizeof(buf), "[%s] mean_planning_time=%.6fs\n", r.system.c_str(),
                      r.mean_planning_time);
        out << buf;
    }
    return out.str();
}

}  // namespace pnav
