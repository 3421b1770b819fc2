#pragma once
// Target drift (herder repulsion plus short-range target interaction) and the
// herder's polar elastic feedback law.

#include <optional>
#include <span>

#include "herding/geometry.hpp"

namespace herding {

/// Containment region G (disc) plus the buffer annulus around it.
struct Arena {
    Point2 center{};
    double goal_radius{1.0};
    double buffer_width{1.0005};

    void validate() const;
};

struct ModelParams {
    double alpha_b{0.05};       ///< diffusion coefficient
    double alpha_r{1.0};        ///< repulsion coefficient (20 * alpha_b)
    double mass{1.0};
    double b_r{10.998};         ///< radial damping
    double eps_r{98.706};       ///< radial stiffness
    double b_theta{10.998};     ///< angular damping
    double eps_theta{61.62};    ///< angular stiffness
    double r_c{0.0001};         ///< target interaction radius (closed ball)
    int collision_sign{+1};     ///< +1 applies the interaction term as printed, -1 flips it
    /// Upper bound on the per-step displacement produced by the target
    /// interaction term; 0 leaves it unbounded.
    double collision_step_cap{0.0001};

    void validate() const;
};

struct HerderState {
    Point2 position{};
    Point2 velocity{};
    double unwrapped_angle{0.0};  ///< continuous angular coordinate about the arena center
};

struct TargetState {
    Point2 position{};
};

/// Polar control components (radial, tangential).
struct ControlForce {
    double u_r{0.0};
    double u_theta{0.0};
};

/// alpha_r * sum_j (x - y_j) / |x - y_j|^3 over every herder.
[[nodiscard]] Flagged<Point2> repulsion_velocity(const TargetState& target,
                                                 std::span<const HerderState> herders,
                                                 double alpha_r);

/// sign * sum (x_k - x_i) / |x_k - x_i|^3 over targets k != i with |x_k - x_i| <= r_c.
[[nodiscard]] Flagged<Point2> collision_avoidance_velocity(std::size_t i,
                                                           std::span<const TargetState> targets,
                                                           double r_c,
                                                           int sign = +1);

/// Deterministic part of the target SDE.
[[nodiscard]] Flagged<Point2> target_drift(std::size_t i,
                                           std::span<const TargetState> targets,
                                           std::span<const HerderState> herders,
                                           const ModelParams& params);

/// velocity * dt, rescaled to length cap when longer. cap <= 0 disables it.
[[nodiscard]] Point2 capped_displacement(const Point2& velocity, double dt, double cap);

/// 1 when the chased target is at or beyond the goal radius, else 0.
[[nodiscard]] constexpr int chase_switch(double rho_tilde, double r_star)
{
    return rho_tilde >= r_star ? 1 : 0;
}

/// Radial rate and angular rate of a herder, derived from its Cartesian
/// velocity. The angular rate uses the radius clamped at kSingularDistance.
struct PolarRates {
    Polar polar{};
    double r_dot{0.0};
    double theta_dot{0.0};
    bool singular{false};
};

[[nodiscard]] PolarRates polar_rates(const HerderState& h, const Arena& arena);

/// Elastic feedback driving the herder behind its chased target (xi = 1) or
/// onto the buffer boundary (xi = 0). Without a chased target the radial law
/// uses the xi = 0 branch and only angular damping acts. Flagged when the
/// herder sits on the arena center; the angular terms are then suppressed.
[[nodiscard]] Flagged<ControlForce> herder_control(const HerderState& h,
                                                   const std::optional<TargetState>& chased,
                                                   const ModelParams& params,
                                                   const Arena& arena);

/// (u_r * r_hat + u_theta * theta_hat) / m. At a singular radius the radial
/// basis falls back to (1, 0) and the result is flagged.
[[nodiscard]] Flagged<Point2> herder_acceleration(const HerderState& h,
                                                  const ControlForce& u,
                                                  const ModelParams& params,
                                                  const Arena& arena);

/// Explicit Euler step of r'' = u_r / m, theta'' = u_theta / m (velocity first,
/// then position). The angle is advanced on the unwrapped coordinate. A herder
/// on the arena centre falls back to the Cartesian update with the singular
/// basis.
[[nodiscard]] HerderState polar_euler_step(const HerderState& h,
                                           const ControlForce& u,
                                           const ModelParams& params,
                                           const Arena& arena,
                                           double dt);

}  // namespace herding
