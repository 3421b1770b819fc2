#include "herding/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace herding {

void Arena::validate() const
{
    if (!(goal_radius > 0.0)) {
        throw std::invalid_argument("arena goal_radius must be positive");
    }
    if (!(buffer_width > 0.0)) {
        throw std::invalid_argument("arena buffer_width must be positive");
    }
    if (!center.finite()) {
        throw std::invalid_argument("arena center must be finite");
    }
}

void ModelParams::validate() const
{
    const double positive[] = {alpha_b, alpha_r, mass, b_r, eps_r, b_theta, eps_theta, r_c};
    for (double v : positive) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("model parameters must be finite and strictly positive");
        }
    }
    if (!(collision_step_cap >= 0.0) || !std::isfinite(collision_step_cap)) {
        throw std::invalid_argument("collision_step_cap must be finite and non-negative");
    }
    if (collision_sign != 1 && collision_sign != -1) {
        throw std::invalid_argument("collision_sign must be +1 or -1");
    }
}

namespace {

// (a - b) / |a - b|^3 with the distance clamped from below.
Point2 inverse_square_term(const Point2& a, const Point2& b, bool& clamped)
{
    const Point2 d = a - b;
    double dist = d.norm();
    if (dist < kSingularDistance) {
        dist = kSingularDistance;
        clamped = true;
    }
    return d / (dist * dist * dist);
}

}  // namespace

Flagged<Point2> repulsion_velocity(const TargetState& target,
                                   std::span<const HerderState> herders,
                                   double alpha_r)
{
    Flagged<Point2> out;
    for (const auto& h : herders) {
        out.value += inverse_square_term(target.position, h.position, out.flagged);
    }
    out.value *= alpha_r;
    return out;
}

Flagged<Point2> collision_avoidance_velocity(std::size_t i,
                                             std::span<const TargetState> targets,
                                             double r_c,
                                             int sign)
{
    Flagged<Point2> out;
    const Point2& xi = targets[i].position;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (k == i) {
            continue;
        }
        const Point2& xk = targets[k].position;
        if (distance(xk, xi) <= r_c) {
            out.value += inverse_square_term(xk, xi, out.flagged);
        }
    }
    out.value *= static_cast<double>(sign);
    return out;
}

Flagged<Point2> target_drift(std::size_t i,
                             std::span<const TargetState> targets,
                             std::span<const HerderState> herders,
                             const ModelParams& params)
{
    const auto rep = repulsion_velocity(targets[i], herders, params.alpha_r);
    const auto col = collision_avoidance_velocity(i, targets, params.r_c, params.collision_sign);
    return {rep.value + col.value, rep.flagged || col.flagged};
}

Point2 capped_displacement(const Point2& velocity, double dt, double cap)
{
    const Point2 d = velocity * dt;
    const double len = d.norm();
    if (cap <= 0.0 || !(len > cap)) {
        return d;
    }
    return d * (cap / len);
}

PolarRates polar_rates(const HerderState& h, const Arena& arena)
{
    PolarRates out;
    const auto polar = to_polar(h.position, arena.center);
    out.polar = polar.value;
    out.singular = polar.flagged || polar.value.radius < kSingularDistance;
    const Point2 r_hat = out.singular ? Point2{1.0, 0.0} : unit_vector(out.polar.angle);
    const double r_clamped = std::max(out.polar.radius, kSingularDistance);
    out.r_dot = dot(h.velocity, r_hat);
    out.theta_dot = dot(h.velocity, perp(r_hat)) / r_clamped;
    return out;
}

Flagged<ControlForce> herder_control(const HerderState& h,
                                     const std::optional<TargetState>& chased,
                                     const ModelParams& params,
                                     const Arena& arena)
{
    const PolarRates rates = polar_rates(h, arena);
    const double r = rates.polar.radius;
    const double theta = rates.polar.angle;
    const double retreat_radius = arena.goal_radius + arena.buffer_width;

    Flagged<ControlForce> out;
    out.flagged = rates.singular;

    if (!chased) {
        out.value.u_r = -params.b_r * rates.r_dot - params.eps_r * (r - retreat_radius);
        out.value.u_theta = rates.singular ? 0.0 : -params.b_theta * rates.theta_dot;
        return out;
    }

    const Polar target = to_polar(chased->position, arena.center).value;
    const int xi = chase_switch(target.radius, arena.goal_radius);
    const double radial_setpoint =
        xi == 1 ? target.radius + arena.buffer_width : retreat_radius;
    const double elastic_r = params.eps_r * (r - radial_setpoint);
    const double elastic_theta =
        params.eps_theta * wrap_angle(theta - static_cast<double>(xi) * target.angle);

    out.value.u_r = -params.b_r * rates.r_dot - elastic_r;
    out.value.u_theta = rates.singular ? 0.0 : -params.b_theta * rates.theta_dot - elastic_theta;
    return out;
}

Flagged<Point2> herder_acceleration(const HerderState& h,
                                    const ControlForce& u,
                                    const ModelParams& params,
                                    const Arena& arena)
{
    const auto polar = to_polar(h.position, arena.center);
    const bool singular = polar.flagged || polar.value.radius < kSingularDistance;
    if (singular) {
        return {Point2{u.u_r, 0.0} / params.mass, true};
    }
    const Point2 r_hat = unit_vector(polar.value.angle);
    return {(u.u_r * r_hat + u.u_theta * perp(r_hat)) / params.mass, false};
}

HerderState polar_euler_step(const HerderState& h,
                             const ControlForce& u,
                             const ModelParams& params,
                             const Arena& arena,
                             double dt)
{
    const PolarRates rates = polar_rates(h, arena);
    HerderState n;
    if (rates.singular) {
        const Point2 a = herder_acceleration(h, u, params, arena).value;
        n.velocity = h.velocity + a * dt;
        n.position = h.position + n.velocity * dt;
        n.unwrapped_angle = h.unwrapped_angle +
                            wrap_angle(to_polar(n.position, arena.center).value.angle -
                                       wrap_angle(h.unwrapped_angle));
        return n;
    }
    const double r_dot = rates.r_dot + u.u_r / params.mass * dt;
    const double theta_dot = rates.theta_dot + u.u_theta / params.mass * dt;
    // r may cross the centre; the polar pair (-r, theta) is the same point as
    // (r, theta + pi), which the Cartesian reconstruction handles.
    const double r = rates.polar.radius + r_dot * dt;
    const double theta = rates.polar.angle + theta_dot * dt;
    const Point2 r_hat = unit_vector(theta);
    n.position = arena.center + r * r_hat;
    n.velocity = r_dot * r_hat + r * theta_dot * perp(r_hat);
    n.unwrapped_angle = h.unwrapped_angle + (theta - rates.polar.angle);
    if (r < 0.0) {
        n.unwrapped_angle += wrap_angle(to_polar(n.position, arena.center).value.angle - wrap_angle(n.unwrapped_angle));
    }
    return n;
}

}  // namespace herding
