#pragma once
// Trial configuration. Defaults reproduce the reference setup: N_H = 2,
// N_T = 7, T = 100 s, dt = 0.006 s, global strategy.

#include <cstdint>
#include <string>
#include <string_view>

#include "herding/dynamics.hpp"
#include "herding/selection.hpp"

namespace herding {

/// Herder signal fed to the spectral behaviour classifier.
enum class SpectralSignal { Angle, Radius, X, Y };

[[nodiscard]] std::string_view to_string(SpectralSignal s);
[[nodiscard]] SpectralSignal parse_spectral_signal(std::string_view name);

/// How the herder's second-order dynamics are integrated.
///  - Polar: each polar coordinate is a unit-mass second-order system,
///    r'' = u_r / m and theta'' = u_theta / m.
///  - Cartesian: m y'' = u_r r_hat + u_theta theta_hat.
enum class HerderFrame { Polar, Cartesian };

[[nodiscard]] std::string_view to_string(HerderFrame f);
[[nodiscard]] HerderFrame parse_herder_frame(std::string_view name);

struct MetricsOptions {
    SpectralSignal spectral_signal{SpectralSignal::X};
    double cutoff_hz{0.5};
};

/// Angle fed to the regulator's heading law.
///  - ErrorBearing: polar angle of the robot about its reference point.
///  - ReferencePolar: polar angle of the reference point about the arena centre.
enum class HeadingReference { ErrorBearing, ReferencePolar };

[[nodiscard]] std::string_view to_string(HeadingReference h);
[[nodiscard]] HeadingReference parse_heading_reference(std::string_view name);

struct RobotSettings {
    bool enabled{false};
    double k1{0.125};
    double k2{0.25};
    /// Reference trajectories are advanced once every regulator tick of length
    /// dt * time_scale; 1 means the references run in real time.
    double time_scale{1.0};
    double horizon{500.0};
    HeadingReference heading_reference{HeadingReference::ErrorBearing};
};

struct SimulationConfig {
    std::size_t n_herders{2};
    std::size_t n_targets{7};
    double horizon{100.0};
    double dt{0.006};
    ModelParams params{};
    Arena arena{};
    StrategyKind strategy{StrategyKind::Global};
    double sector_anchor{-kPi};
    Persistence persistence{Persistence::Global};
    HerderFrame herder_frame{HerderFrame::Cartesian};
    std::uint64_t seed{0};
    std::size_t record_stride{1};
    MetricsOptions metrics{};
    RobotSettings robot{};

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;

    /// ceil(horizon / dt), tolerant to floating-point representation of the ratio.
    [[nodiscard]] std::size_t step_count() const;
};

}  // namespace herding
