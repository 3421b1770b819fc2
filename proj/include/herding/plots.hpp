#pragma once
// Standalone SVG figures: trajectories, herder power spectra and sweep
// heatmaps. Every function returns false (and writes nothing) when there is
// no data to draw.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "herding/config.hpp"
#include "herding/robot.hpp"
#include "herding/simulation.hpp"

namespace herding {

/// Herder and target paths with the goal disc and the buffer ring.
bool plot_trajectory(const Trajectory& traj,
                     const Arena& arena,
                     const std::filesystem::path& path,
                     const std::string& title = "trajectory");

/// Robot paths (solid) over their reference paths (dashed).
bool plot_robot_trial(const RobotTrial& trial,
                      const Arena& arena,
                      const std::filesystem::path& path,
                      const std::string& title = "robot trial");

/// One line per herder: power spectrum of the classifier signal up to
/// max_hz, with the cutoff frequency marked.
bool plot_spectra(const Trajectory& traj,
                  const SimulationConfig& config,
                  const std::filesystem::path& path,
                  double max_hz = 2.0);

struct HeatmapGrid {
    std::string title;
    std::string x_name;
    std::string y_name;
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    /// Row-major [y][x]; empty cells are drawn grey.
    std::vector<std::optional<double>> values;
};

bool plot_heatmap(const HeatmapGrid& grid, const std::filesystem::path& path);

}  // namespace herding
