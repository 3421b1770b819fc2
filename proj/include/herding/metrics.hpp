#pragma once
/**
 * @file metrics.hpp
 * @brief Herding performance metrics and the spectral behaviour classifier.
 *
 * Time averages are left-endpoint Riemann sums over the recorded samples;
 * herder path lengths accumulate the per-step speeds regardless of the
 * recording stride.
 *
 * Behaviour classification: each herder's signal (x position by default) is mean
 * removed and transformed with a rectangular-window DFT. The dominant bin
 * (0 Hz excluded) yields the index sign(f_peak - f_c) * P_peak. A pair of
 * herders is COC when both indices are positive and SR when both are
 * negative.
 */

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "herding/config.hpp"
#include "herding/simulation.hpp"

namespace herding {

enum class PairLabel { SR, COC, Mixed, NotApplicable };

[[nodiscard]] std::string_view to_string(PairLabel label);

struct BehaviouralIndex {
    double index{0.0};
    double dominant_hz{0.0};
    double dominant_power{0.0};
    bool degenerate{false};
};

struct MetricsReport {
    std::optional<double> gathering_time;
    std::optional<double> d_g;
    double d_tot{0.0};
    double herd_distance{0.0};
    double spread{0.0};
    double spread_pct{0.0};
    std::vector<BehaviouralIndex> behaviour;
    PairLabel pair_label{PairLabel::NotApplicable};

    [[nodiscard]] bool gathered() const { return gathering_time.has_value(); }
};

/// First recorded time at which every target is within the goal radius.
[[nodiscard]] std::optional<double> gathering_time(const Trajectory& traj, const Arena& arena);

/// Mean over herders of (1/t) * path length on [0, t]. None when t <= 0.
[[nodiscard]] std::optional<double> distance_travelled(const Trajectory& traj, double t);

/// Time-averaged distance of the herd's centre of mass from the arena centre.
[[nodiscard]] double herd_distance(const Trajectory& traj, const Arena& arena);

struct Spread {
    double area{0.0};
    double percent{0.0};  ///< area relative to the goal disc, in percent
};

/// Time-averaged convex-hull area of the target positions.
[[nodiscard]] Spread herd_spread(const Trajectory& traj, const Arena& arena);

/// One-sided power spectrum of a mean-removed, uniformly sampled signal.
/// power[k] is the mean-square contribution of the bin at k / (N * dt) Hz.
struct PowerSpectrum {
    std::vector<double> frequency_hz;
    std::vector<double> power;
};

[[nodiscard]] PowerSpectrum power_spectrum(std::span<const double> series, double dt);

[[nodiscard]] BehaviouralIndex behavioral_index(std::span<const double> series,
                                                double dt,
                                                double cutoff_hz = 0.5);

[[nodiscard]] PairLabel classify_pair(const BehaviouralIndex& a, const BehaviouralIndex& b);
[[nodiscard]] PairLabel classify_pair(double phi_1, double phi_2);

/// Sampled herder signal used by the classifier.
[[nodiscard]] std::vector<double> herder_signal(const Trajectory& traj,
                                                std::size_t herder,
                                                SpectralSignal signal,
                                                const Arena& arena);

/// Sampling interval of the recorded trajectory.
[[nodiscard]] inline double sample_interval(const Trajectory& traj)
{
    return traj.dt * static_cast<double>(traj.record_stride);
}

[[nodiscard]] MetricsReport compute_metrics(const Trajectory& traj, const SimulationConfig& config);

struct TrialResult {
    Trajectory trajectory;
    MetricsReport metrics;
};

/// simulate() followed by compute_metrics(). Throws TrialAborted.
[[nodiscard]] TrialResult run_trial(const SimulationConfig& config);

}  // namespace herding
