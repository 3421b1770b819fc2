#include "herding/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "herding/plots.hpp"
#include "herding/robot.hpp"

namespace herding {

void ExperimentSpec::validate() const
{
    if (trials < 1) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    for (const auto& axis : axes) {
        if (!is_config_key(axis.key)) {
            throw std::invalid_argument("sweep axis '" + axis.key + "' is not a config key");
        }
        if (axis.values.empty()) {
            throw std::invalid_argument("sweep axis '" + axis.key + "' has no values");
        }
    }
    for (std::size_t c = 0; c < cell_count(); ++c) {
        cell_config(c).validate();
    }
}

std::size_t ExperimentSpec::cell_count() const
{
    std::size_t n = 1;
    for (const auto& axis : axes) {
        n *= axis.values.size();
    }
    return n;
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::cell_coords(std::size_t cell) const
{
    std::vector<std::pair<std::string, std::string>> coords(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        const std::size_t n = axes[a].values.size();
        coords[a] = {axes[a].key, axes[a].values[cell % n]};
        cell /= n;
    }
    return coords;
}

SimulationConfig ExperimentSpec::cell_config(std::size_t cell) const
{
    SimulationConfig config = base;
    for (const auto& [key, value] : cell_coords(cell)) {
        set_config_value(config, key, value);
    }
    return config;
}

Stat summarize(const std::vector<double>& values)
{
    Stat s;
    s.count = values.size();
    if (values.empty()) {
        return s;
    }
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::size_t SweepResult::aborted_trials() const
{
    std::size_t n = 0;
    for (const auto& c : cells) {
        n += c.aborted;
    }
    return n;
}

namespace {

TrialOutcome run_one(const SimulationConfig& config, const std::optional<std::filesystem::path>& plot_dir,
                     const std::string& stem)
{
    TrialOutcome out;
    out.seed = config.seed;
    try {
        if (config.robot.enabled) {
            const RobotTrial trial = run_robot_trial(config);
            out.metrics = trial.metrics;
            if (plot_dir) {
                plot_robot_trial(trial, config.arena, *plot_dir / (stem + "_robot.svg"), stem);
            }
        } else {
            const TrialResult trial = run_trial(config);
            out.metrics = trial.metrics;
            if (plot_dir) {
                plot_trajectory(trial.trajectory, config.arena, *plot_dir / (stem + "_trajectory.svg"), stem);
                plot_spectra(trial.trajectory, config, *plot_dir / (stem + "_spectrum.svg"));
            }
        }
    } catch (const TrialAborted& e) {
        out.metrics.reset();
        out.error = e.what();
    }
    return out;
}

std::string cell_label(const CellResult& cell)
{
    if (cell.coords.empty()) {
        return "all";
    }
    if (cell.coords.size() == 1) {
        return cell.coords.front().second;
    }
    std::string label;
    for (const auto& [k, v] : cell.coords) {
        if (!label.empty()) {
            label += ';';
        }
        label += k + '=' + v;
    }
    return label;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string stat_mean(const Stat& s)
{
    return s.count == 0 ? "" : format_double(s.mean);
}

std::string stat_std(const Stat& s)
{
    return s.count == 0 ? "" : format_double(s.std);
}

void reduce_cell(CellResult& cell)
{
    std::vector<double> tg, dg, dtot, dist, spread, pct;
    std::size_t gathered = 0;
    std::size_t coc = 0;
    std::size_t classified = 0;
    for (const auto& t : cell.trials) {
        if (!t.metrics) {
            ++cell.aborted;
            continue;
        }
        const MetricsReport& m = *t.metrics;
        if (m.gathering_time) {
            ++gathered;
            tg.push_back(*m.gathering_time);
            if (m.d_g) {
                dg.push_back(*m.d_g);
            }
        }
        dtot.push_back(m.d_tot);
        dist.push_back(m.herd_distance);
        spread.push_back(m.spread);
        pct.push_back(m.spread_pct);
        if (m.pair_label != PairLabel::NotApplicable) {
            ++classified;
            if (m.pair_label == PairLabel::COC) {
                ++coc;
            }
        }
    }
    cell.success_rate = static_cast<double>(gathered) / static_cast<double>(cell.trials.size());
    cell.gathering_time = summarize(tg);
    cell.d_g = summarize(dg);
    cell.d_tot = summarize(dtot);
    cell.herd_distance = summarize(dist);
    cell.spread = summarize(spread);
    cell.spread_pct = summarize(pct);
    if (cell.config.n_herders == 2 && classified > 0) {
        cell.coc_pct = 100.0 * static_cast<double>(coc) / static_cast<double>(classified);
    }
}

}  // namespace

TrialOutcome run_single(const SimulationConfig& config)
{
    return run_one(config, std::nullopt, "");
}

SweepResult run_batch(const ExperimentSpec& spec)
{
    spec.validate();
    const std::size_t cells = spec.cell_count();
    const std::size_t jobs = cells * spec.trials;

    SweepResult result;
    result.axes = spec.axes;
    result.cells.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        result.cells[c].coords = spec.cell_coords(c);
        result.cells[c].config = spec.cell_config(c);
        result.cells[c].trials.resize(spec.trials);
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t c = job / spec.trials;
            const std::size_t k = job % spec.trials;
            SimulationConfig config = result.cells[c].config;
            config.seed = spec.seed_base + k;
            try {
                result.cells[c].trials[k] =
                    run_one(config, spec.trial_plot_dir,
                            "cell" + std::to_string(c) + "_seed" + std::to_string(config.seed));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = jobs;
            }
        }
    };
    const std::size_t n_workers = std::max<std::size_t>(1, std::min(spec.workers, jobs));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    for (auto& cell : result.cells) {
        reduce_cell(cell);
    }
    return result;
}

SweepResult run_sweep(const ExperimentSpec& spec)
{
    if (spec.axes.empty()) {
        throw std::invalid_argument("a sweep needs at least one axis");
    }
    return run_batch(spec);
}

std::string table_csv(const SweepResult& result)
{
    std::ostringstream os;
    os << "metric";
    for (const auto& cell : result.cells) {
        os << ',' << csv_field(cell_label(cell));
    }
    os << '\n';
    auto row = [&](const char* name, auto get) {
        os << name;
        for (const auto& cell : result.cells) {
            os << ',' << get(cell);
        }
        os << '\n';
    };
    row("t_g", [](const CellResult& c) { return stat_mean(c.gathering_time); });
    row("t_g_std", [](const CellResult& c) { return stat_std(c.gathering_time); });
    row("d_g", [](const CellResult& c) { return stat_mean(c.d_g); });
    row("d_g_std", [](const CellResult& c) { return stat_std(c.d_g); });
    row("d_tot", [](const CellResult& c) { return stat_mean(c.d_tot); });
    row("d_tot_std", [](const CellResult& c) { return stat_std(c.d_tot); });
    row("D_T", [](const CellResult& c) { return stat_mean(c.herd_distance); });
    row("D_T_std", [](const CellResult& c) { return stat_std(c.herd_distance); });
    row("S_pct", [](const CellResult& c) { return stat_mean(c.spread_pct); });
    row("S_pct_std", [](const CellResult& c) { return stat_std(c.spread_pct); });
    row("COC_pct", [](const CellResult& c) { return c.coc_pct ? format_double(*c.coc_pct) : std::string(); });
    row("success_pct", [](const CellResult& c) { return format_double(100.0 * c.success_rate); });
    row("aborted", [](const CellResult& c) { return std::to_string(c.aborted); });
    return os.str();
}

std::string cells_csv(const SweepResult& result)
{
    std::ostringstream os;
    for (const auto& axis : result.axes) {
        os << csv_field(axis.key) << ',';
    }
    os << "trials,aborted,success_rate,t_g_mean,t_g_std,d_g_mean,d_g_std,d_tot_mean,d_tot_std,"
          "D_T_mean,D_T_std,S_mean,S_std,S_pct_mean,S_pct_std,COC_pct\n";
    for (const auto& cell : result.cells) {
        for (const auto& [k, v] : cell.coords) {
            os << csv_field(v) << ',';
        }
        os << cell.trials.size() << ',' << cell.aborted << ',' << format_double(cell.success_rate);
        for (const Stat* s : {&cell.gathering_time, &cell.d_g, &cell.d_tot, &cell.herd_distance, &cell.spread,
                              &cell.spread_pct}) {
            os << ',' << stat_mean(*s) << ',' << stat_std(*s);
        }
        os << ',' << (cell.coc_pct ? format_double(*cell.coc_pct) : std::string()) << '\n';
    }
    return os.str();
}

nlohmann::ordered_json trial_json(const CellResult& cell, const TrialOutcome& trial)
{
    nlohmann::ordered_json j;
    j["seed"] = trial.seed;
    nlohmann::ordered_json coords = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cell.coords) {
        coords[k] = v;
    }
    j["cell"] = coords;
    j["status"] = trial.metrics ? "ok" : "aborted";
    if (!trial.error.empty()) {
        j["error"] = trial.error;
    }
    j["metrics"] = trial.metrics ? report_to_json(*trial.metrics) : nlohmann::ordered_json(nullptr);
    return j;
}

std::vector<std::filesystem::path> emit_sweep_heatmaps(const SweepResult& result, const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> written;
    std::vector<std::size_t> numeric;
    for (std::size_t a = 0; a < result.axes.size(); ++a) {
        bool all_numeric = true;
        for (const auto& v : result.axes[a].values) {
            double d = 0.0;
            const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
            all_numeric = all_numeric && ec == std::errc() && end == v.data() + v.size();
        }
        if (all_numeric) {
            numeric.push_back(a);
        }
    }
    if (numeric.empty()) {
        return written;
    }
    const std::size_t ax = numeric[0];
    const std::optional<std::size_t> ay = numeric.size() > 1 ? std::optional(numeric[1]) : std::nullopt;

    // group cells by the coordinates of every other axis
    std::map<std::vector<std::string>, std::vector<const CellResult*>> groups;
    for (const auto& cell : result.cells) {
        std::vector<std::string> rest;
        for (std::size_t a = 0; a < cell.coords.size(); ++a) {
            if (a != ax && (!ay || a != *ay)) {
                rest.push_back(cell.coords[a].first + "=" + cell.coords[a].second);
            }
        }
        groups[rest].push_back(&cell);
    }
    const auto& xv = result.axes[ax].values;
    const std::vector<std::string> yv = ay ? result.axes[*ay].values : std::vector<std::string>{"-"};

    for (const auto& [rest, cells] : groups) {
        std::string suffix;
        std::string caption;
        for (const auto& r : rest) {
            suffix += "_" + r;
            caption += (caption.empty() ? " (" : ", ") + r;
        }
        if (!caption.empty()) {
            caption += ")";
        }
        for (const char* metric : {"t_g", "d_tot"}) {
            HeatmapGrid grid;
            grid.title = std::string(metric == std::string("t_g") ? "mean gathering time" : "mean total distance") +
                         caption;
            grid.x_name = result.axes[ax].key;
            grid.y_name = ay ? result.axes[*ay].key : "";
            grid.x_labels = xv;
            grid.y_labels = yv;
            grid.values.assign(xv.size() * yv.size(), std::nullopt);
            for (const CellResult* cell : cells) {
                std::size_t xi = 0, yi = 0;
                for (std::size_t i = 0; i < xv.size(); ++i) {
                    if (xv[i] == cell->coords[ax].second) xi = i;
                }
                if (ay) {
                    for (std::size_t i = 0; i < yv.size(); ++i) {
                        if (yv[i] == cell->coords[*ay].second) yi = i;
                    }
                }
                const Stat& s = metric == std::string("t_g") ? cell->gathering_time : cell->d_tot;
                if (s.count > 0) {
                    grid.values[yi * xv.size() + xi] = s.mean;
                }
            }
            std::string name = std::string("heatmap_") + metric + suffix + ".svg";
            for (char& c : name) {
                if (c == '/' || c == ' ') c = '_';
            }
            const auto path = dir / name;
            if (plot_heatmap(grid, path)) {
                written.push_back(path);
            }
        }
    }
    return written;
}

void write_experiment(const ExperimentSpec& spec, const SweepResult& result, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    write_text_file(dir / "config.yaml", config_to_yaml(spec.base));

    nlohmann::ordered_json meta;
    meta["trials"] = spec.trials;
    meta["seed_base"] = spec.seed_base;
    nlohmann::ordered_json axes = nlohmann::ordered_json::array();
    for (const auto& axis : spec.axes) {
        axes.push_back({{"key", axis.key}, {"values", axis.values}});
    }
    meta["axes"] = axes;
    meta["cells"] = result.cells.size();
    meta["aborted_trials"] = result.aborted_trials();
    meta["failure_policy"] =
        "success_rate counts all trials with aborted ones as failures; t_g and d_g average gathered trials only; "
        "other metrics average completed trials";
    meta["config"] = config_to_json(spec.base);
    write_text_file(dir / "experiment.json", meta.dump(2) + "\n");

    for (std::size_t c = 0; c < result.cells.size(); ++c) {
        for (const auto& trial : result.cells[c].trials) {
            const auto name = "cell" + std::to_string(c) + "_seed" + std::to_string(trial.seed) + ".json";
            write_text_file(dir / "trials" / name, trial_json(result.cells[c], trial).dump(2) + "\n");
        }
    }
    write_text_file(dir / "table.csv", table_csv(result));
    write_text_file(dir / "cells.csv", cells_csv(result));
    if (!result.axes.empty()) {
        emit_sweep_heatmaps(result, dir / "plots");
    }
}

}  // namespace herding
