#include "herding/robot.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace herding {

void RegulatorGains::validate() const
{
    if (!(k1 > 0.0) || !(k2 > 0.0) || !std::isfinite(k1) || !std::isfinite(k2)) {
        throw std::invalid_argument("regulator gains must be finite and positive");
    }
}

UnicycleCommand cartesian_regulator(const UnicycleState& s,
                                    const Point2& ref_point,
                                    double ref_angle,
                                    const RegulatorGains& gains)
{
    const Point2 e = s.position - ref_point;
    UnicycleCommand cmd;
    cmd.v = -gains.k1 * dot(e, unit_vector(s.heading));
    cmd.omega = gains.k2 * wrap_angle(ref_angle - s.heading + kPi);
    return cmd;
}

double reference_angle(const UnicycleState& s,
                       const Point2& ref_point,
                       const Arena& arena,
                       HeadingReference mode)
{
    if (mode == HeadingReference::ErrorBearing) {
        return to_polar(s.position, ref_point).value.angle;
    }
    return to_polar(ref_point, arena.center).value.angle;
}

UnicycleState unicycle_step(const UnicycleState& s, const UnicycleCommand& cmd, double dt)
{
    UnicycleState n;
    n.position = s.position + cmd.v * dt * unit_vector(s.heading);
    n.heading = s.heading + cmd.omega * dt;
    return n;
}

namespace {

std::vector<Point2> reference_points(const WorldState& w)
{
    std::vector<Point2> refs;
    refs.reserve(w.herders.size() + w.targets.size());
    for (const auto& h : w.herders) {
        refs.push_back(h.position);
    }
    for (const auto& t : w.targets) {
        refs.push_back(t.position);
    }
    return refs;
}

WorldState realized_state(const WorldState& ref,
                          const std::vector<UnicycleState>& robots,
                          const std::vector<UnicycleCommand>& cmds,
                          const std::vector<double>& unwrapped,
                          std::uint64_t tick,
                          double tick_dt)
{
    WorldState w;
    w.step = tick;
    w.time = static_cast<double>(tick) * tick_dt;
    w.assignment = ref.assignment;
    const std::size_t nh = ref.herders.size();
    w.herders.resize(nh);
    for (std::size_t j = 0; j < nh; ++j) {
        w.herders[j].position = robots[j].position;
        w.herders[j].velocity = cmds[j].v * unit_vector(robots[j].heading);
        w.herders[j].unwrapped_angle = unwrapped[j];
    }
    w.targets.resize(ref.targets.size());
    for (std::size_t i = 0; i < ref.targets.size(); ++i) {
        w.targets[i].position = robots[nh + i].position;
    }
    return w;
}

}  // namespace

RobotTrial run_robot_trial(const SimulationConfig& config)
{
    RobotTrial out;
    if (!config.robot.enabled) {
        TrialResult r = run_trial(config);
        out.realized = std::move(r.trajectory);
        out.metrics = r.metrics;
        return out;
    }
    config.validate();
    const RegulatorGains gains{config.robot.k1, config.robot.k2};
    gains.validate();

    const Arena& arena = config.arena;
    const double tick_dt = config.dt * config.robot.time_scale;
    SimulationConfig run_config = config;
    run_config.horizon = config.robot.horizon;
    run_config.dt = tick_dt;
    const std::size_t ticks = run_config.step_count();
    const double max_error = 10.0 * arena.goal_radius;

    const CounterRng rng(config.seed);
    const TargetSelector selector(config.strategy, config.sector_anchor, config.persistence);
    WorldState ref = init_world(config, rng);

    std::vector<Point2> refs = reference_points(ref);
    const std::size_t nh = ref.herders.size();
    std::vector<UnicycleState> robots(refs.size());
    std::vector<double> unwrapped(nh);
    for (std::size_t k = 0; k < refs.size(); ++k) {
        robots[k].position = refs[k];
        robots[k].heading = to_polar(refs[k], arena.center).value.angle + kPi;
    }
    for (std::size_t j = 0; j < nh; ++j) {
        unwrapped[j] = ref.herders[j].unwrapped_angle;
    }

    auto commands_for = [&](const std::vector<Point2>& points) {
        std::vector<UnicycleCommand> cmds(robots.size());
        for (std::size_t k = 0; k < robots.size(); ++k) {
            cmds[k] = cartesian_regulator(
                robots[k], points[k], reference_angle(robots[k], points[k], arena, config.robot.heading_reference),
                gains);
        }
        return cmds;
    };
    auto record = [&](std::uint64_t tick, const std::vector<UnicycleCommand>& cmds) {
        out.realized.samples.push_back(realized_state(ref, robots, cmds, unwrapped, tick, tick_dt));
        out.frames.push_back({static_cast<double>(tick) * tick_dt, robots, cmds, refs});
    };

    out.realized.dt = tick_dt;
    out.realized.record_stride = config.record_stride;
    out.realized.n_herders = nh;
    out.realized.samples.reserve(ticks / config.record_stride + 2);
    out.realized.herder_speeds.reserve(ticks * nh);

    std::vector<UnicycleCommand> cmds = commands_for(refs);
    record(0, cmds);
    for (std::size_t tick = 1; tick <= ticks; ++tick) {
        for (std::size_t k = 0; k < robots.size(); ++k) {
            robots[k] = unicycle_step(robots[k], cmds[k], tick_dt);
        }
        for (std::size_t j = 0; j < nh; ++j) {
            out.realized.herder_speeds.push_back(std::abs(cmds[j].v));
        }
        for (std::size_t j = 0; j < nh; ++j) {
            const double before = wrap_angle(unwrapped[j]);
            const double after = to_polar(robots[j].position, arena.center).value.angle;
            unwrapped[j] += wrap_angle(after - before);
        }

        ref = step(ref, config, selector, rng);
        refs = reference_points(ref);
        for (std::size_t k = 0; k < robots.size(); ++k) {
            const double err = distance(robots[k].position, refs[k]);
            if (!(err <= max_error)) {
                throw TrialAborted("robot " + std::to_string(k) + " tracking error " + std::to_string(err) +
                                   " exceeds " + std::to_string(max_error) + " at t = " +
                                   std::to_string(static_cast<double>(tick) * tick_dt) + " s");
            }
        }
        cmds = commands_for(refs);
        if (tick % config.record_stride == 0) {
            record(tick, cmds);
        }
    }
    out.metrics = compute_metrics(out.realized, run_config);
    return out;
}

}  // namespace herding
