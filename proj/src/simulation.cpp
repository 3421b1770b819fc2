#include "herding/simulation.hpp"

#include <string>

namespace herding {

namespace {

bool finite_state(const WorldState& s)
{
    for (const auto& h : s.herders) {
        if (!h.position.finite() || !h.velocity.finite() || !std::isfinite(h.unwrapped_angle)) {
            return false;
        }
    }
    for (const auto& t : s.targets) {
        if (!t.position.finite()) {
            return false;
        }
    }
    return true;
}

}  // namespace

WorldState init_world(const SimulationConfig& config, const CounterRng& rng)
{
    const Arena& arena = config.arena;
    WorldState s;
    s.targets.resize(config.n_targets);
    for (std::size_t i = 0; i < config.n_targets; ++i) {
        // uniform on (-pi, pi]
        const double phi = -kPi + kTwoPi * rng.uniform(streams::kInitTargets, i);
        s.targets[i].position = to_cartesian({2.0 * arena.goal_radius, phi}, arena.center);
    }

    const double base = -kPi + kTwoPi * rng.uniform(streams::kInitHerders, 0);
    const double spacing = kTwoPi / static_cast<double>(config.n_herders);
    s.herders.resize(config.n_herders);
    for (std::size_t j = 0; j < config.n_herders; ++j) {
        const double theta = wrap_angle(base + spacing * static_cast<double>(j));
        HerderState& h = s.herders[j];
        h.position = to_cartesian({4.0 * arena.goal_radius, theta}, arena.center);
        h.velocity = {};
        h.unwrapped_angle = to_polar(h.position, arena.center).value.angle;
    }

    const TargetSelector selector(config.strategy, config.sector_anchor, config.persistence);
    s.assignment = selector.reassign(s.herders, s.targets, arena);
    return s;
}

WorldState step(const WorldState& state,
                const SimulationConfig& config,
                const TargetSelector& selector,
                const CounterRng& rng)
{
    const Arena& arena = config.arena;
    const ModelParams& params = config.params;
    const double dt = config.dt;
    const double noise_scale = params.alpha_b * std::sqrt(dt);

    const Assignment assignment =
        selector.reassign(state.herders, state.targets, arena, &state.assignment);

    WorldState next;
    next.step = state.step + 1;
    next.time = static_cast<double>(next.step) * dt;

    next.targets.resize(state.targets.size());
    for (std::size_t i = 0; i < state.targets.size(); ++i) {
        const Point2 rep = repulsion_velocity(state.targets[i], state.herders, params.alpha_r).value;
        const Point2 col =
            collision_avoidance_velocity(i, state.targets, params.r_c, params.collision_sign).value;
        const Point2 dw = rng.normal2(streams::kTargetNoiseBase + i, state.step);
        next.targets[i].position = state.targets[i].position + rep * dt +
                                   capped_displacement(col, dt, params.collision_step_cap) +
                                   noise_scale * dw;
    }

    next.herders.resize(state.herders.size());
    for (std::size_t j = 0; j < state.herders.size(); ++j) {
        const HerderState& h = state.herders[j];
        std::optional<TargetState> chased;
        if (assignment.chased[j]) {
            chased = state.targets[*assignment.chased[j]];
        }
        const ControlForce u = herder_control(h, chased, params, arena).value;
        HerderState& n = next.herders[j];
        if (config.herder_frame == HerderFrame::Cartesian) {
            const Point2 a = herder_acceleration(h, u, params, arena).value;
            n.velocity = h.velocity + a * dt;
            n.position = h.position + n.velocity * dt;
            const double old_theta = to_polar(h.position, arena.center).value.angle;
            const double new_theta = to_polar(n.position, arena.center).value.angle;
            n.unwrapped_angle = h.unwrapped_angle + wrap_angle(new_theta - old_theta);
        } else {
            n = polar_euler_step(h, u, params, arena, dt);
        }
    }

    if (!finite_state(next)) {
        throw TrialAborted("non-finite state at step " + std::to_string(next.step) +
                           " (t = " + std::to_string(next.time) + " s)");
    }
    next.assignment = selector.reassign(next.herders, next.targets, arena, &assignment);
    return next;
}

Trajectory simulate(const SimulationConfig& config)
{
    config.validate();
    const CounterRng rng(config.seed);
    const TargetSelector selector(config.strategy, config.sector_anchor, config.persistence);
    const std::size_t steps = config.step_count();

    Trajectory traj;
    traj.dt = config.dt;
    traj.record_stride = config.record_stride;
    traj.n_herders = config.n_herders;
    traj.samples.reserve(steps / config.record_stride + 2);
    traj.herder_speeds.reserve(steps * config.n_herders);

    WorldState state = init_world(config, rng);
    traj.samples.push_back(state);
    for (std::size_t k = 0; k < steps; ++k) {
        state = step(state, config, selector, rng);
        for (const auto& h : state.herders) {
            traj.herder_speeds.push_back(h.velocity.norm());
        }
        if (state.step % config.record_stride == 0) {
            traj.samples.push_back(state);
        }
    }
    return traj;
}

}  // namespace herding
