#pragma once
// Batch and sweep runner. Trials run on a worker pool; results are reduced
// sequentially in (cell, trial) order so the outputs do not depend on the
// worker count.
//
// Aggregation: success_rate counts every trial (aborted ones as failures);
// t_g and d_g average over gathered trials only; the remaining metrics
// average over trials that completed.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "herding/config.hpp"
#include "herding/io.hpp"
#include "herding/metrics.hpp"

namespace herding {

struct ExperimentSpec {
    SimulationConfig base;
    std::size_t trials{1};
    std::uint64_t seed_base{0};
    std::vector<SweepAxis> axes;
    std::size_t workers{1};
    /// When set, every trial also writes a trajectory and a spectrum plot.
    std::optional<std::filesystem::path> trial_plot_dir;

    /// Throws std::invalid_argument on zero trials, unknown axis keys or
    /// values, or an invalid cell config.
    void validate() const;

    /// Number of cells (product of axis lengths, 1 without axes).
    [[nodiscard]] std::size_t cell_count() const;

    /// Cell coordinates and config in row-major axis order (last axis fastest).
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> cell_coords(std::size_t cell) const;
    [[nodiscard]] SimulationConfig cell_config(std::size_t cell) const;
};

struct Stat {
    double mean{0.0};
    double std{0.0};  ///< sample standard deviation, 0 for fewer than two values
    std::size_t count{0};
};

[[nodiscard]] Stat summarize(const std::vector<double>& values);

struct TrialOutcome {
    std::uint64_t seed{0};
    std::optional<MetricsReport> metrics;  ///< empty when the trial aborted
    std::string error;
};

struct CellResult {
    std::vector<std::pair<std::string, std::string>> coords;
    SimulationConfig config;
    std::vector<TrialOutcome> trials;
    std::size_t aborted{0};
    double success_rate{0.0};
    Stat gathering_time;
    Stat d_g;
    Stat d_tot;
    Stat herd_distance;
    Stat spread;
    Stat spread_pct;
    std::optional<double> coc_pct;  ///< two-herder cells only
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<CellResult> cells;

    [[nodiscard]] std::size_t aborted_trials() const;
};

/// Runs one trial (robot layer included when enabled).
[[nodiscard]] TrialOutcome run_single(const SimulationConfig& config);

/// Every cell of the spec for trials seeds seed_base .. seed_base + trials - 1.
[[nodiscard]] SweepResult run_batch(const ExperimentSpec& spec);

/// run_batch for a spec that has at least one axis.
[[nodiscard]] SweepResult run_sweep(const ExperimentSpec& spec);

/// Table-shaped summary: one row per metric, one column per cell.
[[nodiscard]] std::string table_csv(const SweepResult& result);

/// One row per cell with every aggregate (mean and std).
[[nodiscard]] std::string cells_csv(const SweepResult& result);

[[nodiscard]] nlohmann::ordered_json trial_json(const CellResult& cell, const TrialOutcome& trial);

/// Heatmaps of mean t_g and mean d_tot over the first two numeric axes, one
/// pair per combination of the remaining axes. Returns written paths.
std::vector<std::filesystem::path> emit_sweep_heatmaps(const SweepResult& result, const std::filesystem::path& dir);

/// Writes config snapshot, experiment metadata, per-trial metrics JSON,
/// table.csv, cells.csv and (for sweeps) heatmaps under dir.
void write_experiment(const ExperimentSpec& spec, const SweepResult& result, const std::filesystem::path& dir);

}  // namespace herding
