#include "herding/metrics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace herding {

std::string_view to_string(PairLabel label)
{
    switch (label) {
    case PairLabel::SR: return "SR";
    case PairLabel::COC: return "COC";
    case PairLabel::Mixed: return "Mixed";
    case PairLabel::NotApplicable: return "N/A";
    }
    return "unknown";
}

namespace {

bool all_contained(const WorldState& s, const Arena& arena)
{
    return std::all_of(s.targets.begin(), s.targets.end(), [&](const TargetState& t) {
        return distance(t.position, arena.center) <= arena.goal_radius;
    });
}

// Left-endpoint Riemann average of f over the recorded samples.
template <typename F>
double sample_time_average(const Trajectory& traj, F&& f)
{
    const auto& samples = traj.samples;
    if (samples.empty()) {
        throw std::invalid_argument("empty trajectory");
    }
    if (samples.size() == 1) {
        return f(samples.front());
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        acc += f(samples[k]) * (samples[k + 1].time - samples[k].time);
    }
    return acc / (samples.back().time - samples.front().time);
}

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

std::optional<double> gathering_time(const Trajectory& traj, const Arena& arena)
{
    for (const auto& s : traj.samples) {
        if (all_contained(s, arena)) {
            return s.time;
        }
    }
    return std::nullopt;
}

std::optional<double> distance_travelled(const Trajectory& traj, double t)
{
    if (!(t > 0.0) || traj.n_herders == 0) {
        return std::nullopt;
    }
    const auto steps = std::min(traj.step_count(),
                                static_cast<std::size_t>(std::llround(t / traj.dt)));
    double path = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        for (std::size_t j = 0; j < traj.n_herders; ++j) {
            path += traj.speed(k, j) * traj.dt;
        }
    }
    return path / (static_cast<double>(traj.n_herders) * t);
}

double herd_distance(const Trajectory& traj, const Arena& arena)
{
    return sample_time_average(traj, [&](const WorldState& s) {
        Point2 com{};
        for (const auto& t : s.targets) {
            com += t.position;
        }
        com = com / static_cast<double>(s.targets.size());
        return distance(com, arena.center);
    });
}

Spread herd_spread(const Trajectory& traj, const Arena& arena)
{
    std::vector<Point2> pts;
    const double area = sample_time_average(traj, [&](const WorldState& s) {
        pts.clear();
        for (const auto& t : s.targets) {
            pts.push_back(t.position);
        }
        return convex_hull_area(pts).value;
    });
    const double goal_area = kPi * arena.goal_radius * arena.goal_radius;
    return {area, area / goal_area * 100.0};
}

PowerSpectrum power_spectrum(std::span<const double> series, double dt)
{
    const std::size_t n = series.size();
    if (n < 2) {
        throw std::invalid_argument("power spectrum needs at least two samples");
    }
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    const std::size_t bins = n / 2 + 1;

    std::vector<double> in(n);
    std::transform(series.begin(), series.end(), in.begin(), [&](double v) { return v - mean; });
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins));
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);

    PowerSpectrum spec;
    spec.frequency_hz.resize(bins);
    spec.power.resize(bins);
    const double nd = static_cast<double>(n);
    for (std::size_t k = 0; k < bins; ++k) {
        const double mag2 = out[k][0] * out[k][0] + out[k][1] * out[k][1];
        const bool mirrored = k != 0 && !(n % 2 == 0 && k == n / 2);
        spec.power[k] = (mirrored ? 2.0 : 1.0) * mag2 / (nd * nd);
        spec.frequency_hz[k] = static_cast<double>(k) / (nd * dt);
    }

    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(out);
    return spec;
}

BehaviouralIndex behavioral_index(std::span<const double> series, double dt, double cutoff_hz)
{
    const PowerSpectrum spec = power_spectrum(series, dt);
    BehaviouralIndex out;
    std::size_t peak = 0;
    for (std::size_t k = 1; k < spec.power.size(); ++k) {
        if (peak == 0 || spec.power[k] > spec.power[peak]) {
            peak = k;
        }
    }
    double scale = 0.0;
    for (double v : series) {
        scale = std::max(scale, std::abs(v));
    }
    const double floor = 1e-12 * std::max(scale, 1.0);
    if (peak == 0 || spec.power[peak] <= floor * floor) {
        out.degenerate = true;
        return out;
    }
    out.dominant_hz = spec.frequency_hz[peak];
    out.dominant_power = spec.power[peak];
    const double offset = out.dominant_hz - cutoff_hz;
    if (offset == 0.0) {
        out.degenerate = true;
        return out;
    }
    out.index = (offset > 0.0 ? 1.0 : -1.0) * out.dominant_power;
    return out;
}

PairLabel classify_pair(double phi_1, double phi_2)
{
    if (phi_1 < 0.0 && phi_2 < 0.0) {
        return PairLabel::SR;
    }
    if (phi_1 > 0.0 && phi_2 > 0.0) {
        return PairLabel::COC;
    }
    return PairLabel::Mixed;
}

PairLabel classify_pair(const BehaviouralIndex& a, const BehaviouralIndex& b)
{
    if (a.degenerate || b.degenerate) {
        return PairLabel::Mixed;
    }
    return classify_pair(a.index, b.index);
}

std::vector<double> herder_signal(const Trajectory& traj,
                                  std::size_t herder,
                                  SpectralSignal signal,
                                  const Arena& arena)
{
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const HerderState& h = s.herders[herder];
        switch (signal) {
        case SpectralSignal::Angle: out.push_back(h.unwrapped_angle); break;
        case SpectralSignal::Radius: out.push_back(distance(h.position, arena.center)); break;
        case SpectralSignal::X: out.push_back(h.position.x); break;
        case SpectralSignal::Y: out.push_back(h.position.y); break;
        }
    }
    return out;
}

MetricsReport compute_metrics(const Trajectory& traj, const SimulationConfig& config)
{
    const Arena& arena = config.arena;
    MetricsReport r;
    r.gathering_time = gathering_time(traj, arena);
    if (r.gathering_time) {
        r.d_g = distance_travelled(traj, *r.gathering_time);
    }
    const double t_end = static_cast<double>(traj.step_count()) * traj.dt;
    r.d_tot = distance_travelled(traj, t_end).value_or(0.0);
    r.herd_distance = herd_distance(traj, arena);
    const Spread spread = herd_spread(traj, arena);
    r.spread = spread.area;
    r.spread_pct = spread.percent;

    if (traj.samples.size() >= 2) {
        for (std::size_t j = 0; j < traj.n_herders; ++j) {
            const auto signal = herder_signal(traj, j, config.metrics.spectral_signal, arena);
            r.behaviour.push_back(behavioral_index(signal, sample_interval(traj), config.metrics.cutoff_hz));
        }
    }
    if (traj.n_herders == 2 && r.behaviour.size() == 2) {
        r.pair_label = classify_pair(r.behaviour[0], r.behaviour[1]);
    }
    return r;
}

TrialResult run_trial(const SimulationConfig& config)
{
    TrialResult out;
    out.trajectory = simulate(config);
    out.metrics = compute_metrics(out.trajectory, config);
    return out;
}

}  // namespace herding
