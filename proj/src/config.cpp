#include "herding/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace herding {

std::string_view to_string(SpectralSignal s)
{
    switch (s) {
    case SpectralSignal::Angle: return "angle";
    case SpectralSignal::Radius: return "radius";
    case SpectralSignal::X: return "x";
    case SpectralSignal::Y: return "y";
    }
    return "unknown";
}

SpectralSignal parse_spectral_signal(std::string_view name)
{
    if (name == "angle") return SpectralSignal::Angle;
    if (name == "radius") return SpectralSignal::Radius;
    if (name == "x") return SpectralSignal::X;
    if (name == "y") return SpectralSignal::Y;
    throw std::invalid_argument("unknown spectral_signal '" + std::string(name) + "'");
}

std::string_view to_string(HerderFrame f)
{
    return f == HerderFrame::Polar ? "polar" : "cartesian";
}

HerderFrame parse_herder_frame(std::string_view name)
{
    if (name == "polar") return HerderFrame::Polar;
    if (name == "cartesian") return HerderFrame::Cartesian;
    throw std::invalid_argument("unknown herder_frame '" + std::string(name) + "'");
}

std::string_view to_string(HeadingReference h)
{
    return h == HeadingReference::ErrorBearing ? "error_bearing" : "reference_polar";
}

HeadingReference parse_heading_reference(std::string_view name)
{
    if (name == "error_bearing") return HeadingReference::ErrorBearing;
    if (name == "reference_polar") return HeadingReference::ReferencePolar;
    throw std::invalid_argument("unknown heading_reference '" + std::string(name) + "'");
}

void SimulationConfig::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("dt must be positive");
    }
    if (!(horizon >= dt) || !std::isfinite(horizon)) {
        throw std::invalid_argument("horizon must be at least dt");
    }
    if (n_herders < 1) {
        throw std::invalid_argument("n_herders must be at least 1");
    }
    if (n_targets < 1) {
        throw std::invalid_argument("n_targets must be at least 1");
    }
    if (record_stride < 1) {
        throw std::invalid_argument("record_stride must be at least 1");
    }
    if (!std::isfinite(sector_anchor)) {
        throw std::invalid_argument("sector_anchor must be finite");
    }
    if (!(metrics.cutoff_hz > 0.0)) {
        throw std::invalid_argument("cutoff_hz must be positive");
    }
    if (!(robot.k1 > 0.0) || !(robot.k2 > 0.0)) {
        throw std::invalid_argument("regulator gains must be positive");
    }
    if (!(robot.time_scale > 0.0) || !(robot.horizon > 0.0)) {
        throw std::invalid_argument("robot time_scale and horizon must be positive");
    }
    params.validate();
    arena.validate();
}

std::size_t SimulationConfig::step_count() const
{
    const double ratio = horizon / dt;
    const double nearest = std::round(ratio);
    // 0.3 / 0.1 evaluates to 2.9999999999999996; treat near-integers as exact
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::ceil(ratio));
}

}  // namespace herding
