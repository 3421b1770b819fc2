#pragma once
// Kinematic differential-drive robots tracking the simulated agents.
//
// The simulation produces one reference point per agent and reference step.
// Every robot (herders first, then targets) is a unicycle driven by the
// Cartesian regulator towards its reference point. Metrics are evaluated on
// the realized robot positions.

#include <vector>

#include "herding/config.hpp"
#include "herding/metrics.hpp"
#include "herding/simulation.hpp"

namespace herding {

struct UnicycleState {
    Point2 position{};
    double heading{0.0};  ///< stored unwrapped

    [[nodiscard]] double wrapped_heading() const { return wrap_angle(heading); }
};

struct RegulatorGains {
    double k1{0.125};
    double k2{0.25};

    void validate() const;
};

struct UnicycleCommand {
    double v{0.0};
    double omega{0.0};
};

/// v = -k1 (p - p_ref) . [cos h, sin h],  omega = k2 wrap(ref_angle - h + pi).
[[nodiscard]] UnicycleCommand cartesian_regulator(const UnicycleState& s,
                                                  const Point2& ref_point,
                                                  double ref_angle,
                                                  const RegulatorGains& gains);

/// Angle for the heading law. ErrorBearing: polar angle of the robot about
/// ref_point (0 when they coincide). ReferencePolar: polar angle of ref_point
/// about the arena centre.
[[nodiscard]] double reference_angle(const UnicycleState& s,
                                     const Point2& ref_point,
                                     const Arena& arena,
                                     HeadingReference mode);

[[nodiscard]] UnicycleState unicycle_step(const UnicycleState& s, const UnicycleCommand& cmd, double dt);

struct RobotFrame {
    double time{0.0};
    std::vector<UnicycleState> robots;  ///< herders first, then targets
    std::vector<UnicycleCommand> commands;
    std::vector<Point2> references;
};

struct RobotTrial {
    Trajectory realized;  ///< robot positions in WorldState form
    std::vector<RobotFrame> frames;  ///< one per recorded sample; empty when the layer is disabled
    MetricsReport metrics;
};

/// Runs the reference simulation and the tracking robots for robot.horizon
/// seconds. Each regulator tick lasts dt * robot.time_scale and advances the
/// reference by one step. Robots start on their reference point facing the
/// arena centre. Throws TrialAborted when a robot drifts more than 10 r*
/// from its reference. With the layer disabled this is run_trial(config).
[[nodiscard]] RobotTrial run_robot_trial(const SimulationConfig& config);

}  // namespace herding
