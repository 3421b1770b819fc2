#pragma once
// Euler-Maruyama stepping of the coupled herder/target system.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "herding/config.hpp"
#include "herding/rng.hpp"
#include "herding/selection.hpp"

namespace herding {

struct WorldState {
    std::uint64_t step{0};
    double time{0.0};  ///< step * dt
    std::vector<HerderState> herders;
    std::vector<TargetState> targets;
    Assignment assignment;  ///< selection computed on this state's positions
};

/// Thrown when integration produces a non-finite state.
class TrialAborted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Trajectory {
    double dt{0.0};
    std::size_t record_stride{1};
    std::size_t n_herders{0};
    std::vector<WorldState> samples;
    /// Speed of every herder over every integration step, row-major
    /// [step][herder]; independent of the recording stride.
    std::vector<double> herder_speeds;

    [[nodiscard]] std::size_t step_count() const
    {
        return n_herders == 0 ? 0 : herder_speeds.size() / n_herders;
    }
    [[nodiscard]] double speed(std::size_t step, std::size_t herder) const
    {
        return herder_speeds[step * n_herders + herder];
    }
};

/// Targets on the circle of radius 2 r*, uniform angles; herders on the circle
/// of radius 4 r*, equally spaced anticlockwise from a uniform base angle.
[[nodiscard]] WorldState init_world(const SimulationConfig& config, const CounterRng& rng);

/// One integration step: reassign, advance targets (drift + Wiener increment)
/// and herders (explicit Euler on velocity then position). Throws TrialAborted
/// when the new state is not finite.
[[nodiscard]] WorldState step(const WorldState& state,
                              const SimulationConfig& config,
                              const TargetSelector& selector,
                              const CounterRng& rng);

/// Runs init_world + step_count() steps and records the trajectory.
[[nodiscard]] Trajectory simulate(const SimulationConfig& config);

}  // namespace herding
