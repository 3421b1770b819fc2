#pragma once
// Config files (YAML), JSON serialization of configs and metric reports, and
// trajectory CSV export/import.
//
// Config keys are dotted paths ("params.alpha_r", "robot.k1", ...). A YAML
// config nests them as mappings; any key left out keeps its default, so an
// empty file yields the reference setup.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "herding/config.hpp"
#include "herding/metrics.hpp"
#include "herding/robot.hpp"
#include "herding/simulation.hpp"

namespace herding {

/// All settable config keys in a stable order.
[[nodiscard]] const std::vector<std::string>& config_keys();

[[nodiscard]] bool is_config_key(std::string_view key);

/// Parses value for key and stores it. Throws std::invalid_argument on an
/// unknown key or a malformed value.
void set_config_value(SimulationConfig& config, std::string_view key, std::string_view value);

/// Scalar value of key rendered as text.
[[nodiscard]] std::string get_config_value(const SimulationConfig& config, std::string_view key);

/// One sweep dimension: a config key and the values it takes.
struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

/// Contents of a config file. Besides config keys a file may carry a
/// `sweep:` mapping of key -> list of values and a `trials:` count.
struct ConfigFile {
    SimulationConfig config;
    std::vector<SweepAxis> sweep;
    std::optional<std::size_t> trials;
};

[[nodiscard]] ConfigFile parse_config_yaml(const std::string& text);
[[nodiscard]] ConfigFile load_config_file(const std::filesystem::path& path);

[[nodiscard]] std::string config_to_yaml(const SimulationConfig& config);
[[nodiscard]] nlohmann::ordered_json config_to_json(const SimulationConfig& config);
/// Inverse of config_to_json; missing keys keep their defaults.
[[nodiscard]] SimulationConfig config_from_json(const nlohmann::ordered_json& j);
[[nodiscard]] nlohmann::ordered_json report_to_json(const MetricsReport& report);

/// Shortest text that round-trips the double.
[[nodiscard]] std::string format_double(double v);

/// Writes `text` to path, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view text);
[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

/// CSV with columns t, agent_kind, agent_id, x, y, vx, vy, chased_id. Target
/// velocities are backward differences between recorded samples (zero at the
/// first sample); chased_id is -1 for targets and idle herders.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Robot CSV: trajectory columns plus heading, v_cmd, omega_cmd. Every robot
/// reports its commanded velocity as vx, vy.
void write_robot_csv(std::ostream& os, const RobotTrial& trial);

/// Metadata accompanying a trajectory CSV.
[[nodiscard]] nlohmann::ordered_json trajectory_metadata(const SimulationConfig& config, std::string_view kind);

/// Rebuilds a trajectory from a CSV written by write_trajectory_csv (or
/// write_robot_csv). Herder speeds come from the recorded velocities, so path
/// lengths are exact only when every step was recorded.
[[nodiscard]] Trajectory read_trajectory_csv(std::istream& is, const SimulationConfig& config);

}  // namespace herding
