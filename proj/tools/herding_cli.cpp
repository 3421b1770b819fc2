// herding: run single trials, batches, sweeps and robot replays; re-render
// plots from stored results.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "herding/harness.hpp"
#include "herding/io.hpp"
#include "herding/metrics.hpp"
#include "herding/plots.hpp"
#include "herding/robot.hpp"

namespace fs = std::filesystem;
using namespace herding;

namespace {

constexpr int kExitAborted = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::string strategy;
    std::string out;
    std::size_t workers{std::max(1u, std::thread::hardware_concurrency())};
    bool keep_going{false};
    bool trial_plots{false};
    std::vector<std::string> axes;
};

ConfigFile load(const Options& opt)
{
    ConfigFile file = opt.config_path.empty() ? ConfigFile{} : load_config_file(opt.config_path);
    if (opt.seed) {
        file.config.seed = *opt.seed;
    }
    if (!opt.strategy.empty()) {
        file.config.strategy = parse_strategy(opt.strategy);
    }
    file.config.validate();
    return file;
}

SweepAxis parse_axis(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
        throw std::invalid_argument("axis must look like key=v1,v2,...: '" + text + "'");
    }
    SweepAxis axis;
    axis.key = text.substr(0, eq);
    std::stringstream ss(text.substr(eq + 1));
    for (std::string v; std::getline(ss, v, ',');) {
        if (!v.empty()) {
            axis.values.push_back(v);
        }
    }
    return axis;
}

SweepAxis strategy_axis()
{
    return {"strategy", {"global", "static", "leader_follower", "peer_to_peer"}};
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j)
{
    write_text_file(path, j.dump(2) + "\n");
}

int report_abort(const std::string& what, bool keep_going)
{
    std::cerr << "trial aborted: " << what << "\n";
    return keep_going ? 0 : kExitAborted;
}

int cmd_run(const Options& opt)
{
    const SimulationConfig config = load(opt).config;
    const fs::path out = opt.out.empty() ? fs::path("out/run") : fs::path(opt.out);
    TrialResult trial;
    try {
        trial = run_trial(config);
    } catch (const TrialAborted& e) {
        return report_abort(e.what(), opt.keep_going);
    }
    std::ostringstream csv;
    write_trajectory_csv(csv, trial.trajectory);
    write_text_file(out / "trajectory.csv", csv.str());
    write_json(out / "trajectory.json", trajectory_metadata(config, "simulation"));
    write_json(out / "metrics.json", report_to_json(trial.metrics));
    plot_trajectory(trial.trajectory, config.arena, out / "plots" / "trajectory.svg",
                    std::string(to_string(config.strategy)) + ", seed " + std::to_string(config.seed));
    plot_spectra(trial.trajectory, config, out / "plots" / "spectrum.svg");
    std::cout << report_to_json(trial.metrics).dump(2) << "\n";
    return 0;
}

int cmd_robot(const Options& opt)
{
    ConfigFile file = load(opt);
    SimulationConfig& config = file.config;
    if (opt.config_path.empty()) {
        // the robot replay scenario: two herders, three targets, static sectors
        config.n_targets = 3;
        if (opt.strategy.empty()) {
            config.strategy = StrategyKind::StaticPartition;
        }
    }
    config.robot.enabled = true;
    config.validate();
    const fs::path out = opt.out.empty() ? fs::path("out/robot") : fs::path(opt.out);
    RobotTrial trial;
    try {
        trial = run_robot_trial(config);
    } catch (const TrialAborted& e) {
        return report_abort(e.what(), opt.keep_going);
    }
    std::ostringstream csv;
    write_robot_csv(csv, trial);
    write_text_file(out / "trajectory.csv", csv.str());
    write_json(out / "trajectory.json", trajectory_metadata(config, "robot"));
    write_json(out / "metrics.json", report_to_json(trial.metrics));
    plot_robot_trial(trial, config.arena, out / "plots" / "robot.svg",
                     std::string(to_string(config.strategy)) + " robots, seed " + std::to_string(config.seed));
    std::cout << report_to_json(trial.metrics).dump(2) << "\n";
    return 0;
}

int run_experiment(const Options& opt, ExperimentSpec spec, const fs::path& out, bool sweep)
{
    spec.workers = opt.workers;
    spec.seed_base = opt.seed.value_or(0);
    if (opt.trial_plots) {
        spec.trial_plot_dir = out / "plots" / "trials";
    }
    const SweepResult result = sweep ? run_sweep(spec) : run_batch(spec);
    write_experiment(spec, result, out);
    std::cout << table_csv(result);
    const std::size_t aborted = result.aborted_trials();
    if (aborted > 0) {
        std::cerr << aborted << " trial(s) aborted; see " << (out / "trials").string() << "\n";
        return opt.keep_going ? 0 : kExitAborted;
    }
    return 0;
}

int cmd_batch(const Options& opt)
{
    const ConfigFile file = load(opt);
    ExperimentSpec spec;
    spec.base = file.config;
    spec.trials = opt.trials.value_or(file.trials.value_or(50));
    if (opt.strategy.empty()) {
        spec.axes.push_back(strategy_axis());
    }
    for (const auto& a : opt.axes) {
        spec.axes.push_back(parse_axis(a));
    }
    return run_experiment(opt, spec, opt.out.empty() ? fs::path("out/batch") : fs::path(opt.out), false);
}

int cmd_sweep(const Options& opt)
{
    const ConfigFile file = load(opt);
    ExperimentSpec spec;
    spec.base = file.config;
    spec.trials = opt.trials.value_or(file.trials.value_or(5));
    if (opt.strategy.empty()) {
        spec.axes.push_back(strategy_axis());
    }
    std::vector<SweepAxis> axes = file.sweep;
    for (const auto& a : opt.axes) {
        axes.push_back(parse_axis(a));
    }
    if (axes.empty()) {
        axes = {{"n_targets", {"3", "15", "30"}}, {"params.alpha_r", {"0.1", "1", "2"}}};
    }
    spec.axes.insert(spec.axes.end(), axes.begin(), axes.end());
    return run_experiment(opt, spec, opt.out.empty() ? fs::path("out/sweep") : fs::path(opt.out), true);
}

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) {
        out.push_back(f);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

int cmd_plot(const Options& opt)
{
    if (opt.out.empty()) {
        throw std::invalid_argument("plot needs --out pointing at a results directory");
    }
    const fs::path dir = opt.out;
    int written = 0;
    if (fs::exists(dir / "trajectory.csv") && fs::exists(dir / "trajectory.json")) {
        const auto meta = nlohmann::ordered_json::parse(read_text_file(dir / "trajectory.json"));
        const SimulationConfig config = config_from_json(meta.at("config"));
        std::ifstream is(dir / "trajectory.csv");
        SimulationConfig replay = config;
        if (meta.value("kind", "") == "robot") {
            replay.dt = config.dt * config.robot.time_scale;
        }
        const Trajectory traj = read_trajectory_csv(is, replay);
        written += plot_trajectory(traj, config.arena, dir / "plots" / "trajectory.svg",
                                   std::string(to_string(config.strategy)) + ", seed " + std::to_string(config.seed));
        written += plot_spectra(traj, config, dir / "plots" / "spectrum.svg");
    }
    if (fs::exists(dir / "cells.csv") && fs::exists(dir / "experiment.json")) {
        const auto meta = nlohmann::ordered_json::parse(read_text_file(dir / "experiment.json"));
        SweepResult result;
        for (const auto& a : meta.at("axes")) {
            result.axes.push_back({a.at("key").get<std::string>(), a.at("values").get<std::vector<std::string>>()});
        }
        std::istringstream is(read_text_file(dir / "cells.csv"));
        std::string line;
        std::getline(is, line);
        const auto header = split_line(line);
        auto column = [&](const std::string& name) {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) {
                throw std::invalid_argument("cells.csv lacks column " + name);
            }
            return static_cast<std::size_t>(it - header.begin());
        };
        const std::size_t tg = column("t_g_mean");
        const std::size_t dtot = column("d_tot_mean");
        while (std::getline(is, line)) {
            const auto f = split_line(line);
            CellResult cell;
            for (std::size_t a = 0; a < result.axes.size(); ++a) {
                cell.coords.emplace_back(result.axes[a].key, f.at(a));
            }
            if (!f.at(tg).empty()) {
                cell.gathering_time = {std::stod(f[tg]), 0.0, 1};
            }
            if (!f.at(dtot).empty()) {
                cell.d_tot = {std::stod(f[dtot]), 0.0, 1};
            }
            result.cells.push_back(cell);
        }
        written += static_cast<int>(emit_sweep_heatmaps(result, dir / "plots").size());
    }
    if (written == 0) {
        std::cerr << "warning: nothing to plot in " << dir.string() << "\n";
    }
    std::cout << written << " plot(s) written under " << (dir / "plots").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-agent herding simulation and experiment harness"};
    app.require_subcommand(1);

    Options opt;
    auto common = [&](CLI::App* sub, bool batch_flags) {
        sub->add_option("--config", opt.config_path, "YAML config file (empty means defaults)")->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "Trial seed (seed base for batch and sweep)");
        sub->add_option("--strategy", opt.strategy, "global | static | leader_follower | peer_to_peer");
        sub->add_option("--out", opt.out, "Output directory");
        sub->add_flag("--keep-going", opt.keep_going, "Exit 0 even when a trial aborts");
        if (batch_flags) {
            sub->add_option("--trials", opt.trials, "Trials per cell")->check(CLI::PositiveNumber);
            sub->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
            sub->add_option("--axis", opt.axes, "Sweep axis key=v1,v2,... (repeatable)");
            sub->add_flag("--plots", opt.trial_plots, "Write trajectory and spectrum plots for every trial");
        }
    };
    auto* run = app.add_subcommand("run", "Single trial: trajectory CSV, metrics JSON, plots");
    common(run, false);
    auto* batch = app.add_subcommand("batch", "Trial batch per strategy, summarized as a table");
    common(batch, true);
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep with heatmaps");
    common(sweep, true);
    auto* robot = app.add_subcommand("robot", "Unicycle robots tracking a simulated trial");
    common(robot, false);
    auto* plot = app.add_subcommand("plot", "Re-render plots from a results directory");
    plot->add_option("--out", opt.out, "Results directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(opt);
        if (*batch) return cmd_batch(opt);
        if (*sweep) return cmd_sweep(opt);
        if (*robot) return cmd_robot(opt);
        if (*plot) return cmd_plot(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAborted;
    }
    return kExitUsage;
}
