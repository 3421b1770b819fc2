#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "herding/dynamics.hpp"

using namespace herding;

namespace {

HerderState at(double x, double y, double vx = 0.0, double vy = 0.0)
{
    HerderState h;
    h.position = {x, y};
    h.velocity = {vx, vy};
    h.unwrapped_angle = to_polar(h.position).value.angle;
    return h;
}

// Potential whose negative gradient is the repulsion field.
double potential(const Point2& x, const std::vector<HerderState>& herders, double alpha_r)
{
    double u = 0.0;
    for (const auto& h : herders) {
        u += alpha_r / distance(x, h.position);
    }
    return u;
}

}  // namespace

TEST(Repulsion, Examples)
{
    const std::vector<HerderState> one{at(0, 0)};
    const auto a = repulsion_velocity({{1, 0}}, one, 1.0);
    EXPECT_DOUBLE_EQ(a.value.x, 1.0);
    EXPECT_DOUBLE_EQ(a.value.y, 0.0);
    const std::vector<HerderState> two{at(1, 0), at(-1, 0)};
    const auto b = repulsion_velocity({{0, 0}}, two, 1.0);
    EXPECT_DOUBLE_EQ(b.value.x, 0.0);
    EXPECT_DOUBLE_EQ(b.value.y, 0.0);
}

TEST(Repulsion, MagnitudeIsAlphaOverDistanceSquared)
{
    const std::vector<HerderState> one{at(1, 2)};
    const Point2 x{4, 6};  // distance 5
    const auto v = repulsion_velocity({x}, one, 0.7);
    EXPECT_NEAR(v.value.norm(), 0.7 / 25.0, 1e-15);
    EXPECT_GT(dot(v.value, x - Point2{1, 2}), 0.0);
}

TEST(Repulsion, EqualsNegativeGradientOfPotential)
{
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> a(0.05, 2.5);
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<HerderState> herders{at(u(gen), u(gen)), at(u(gen), u(gen)), at(u(gen), u(gen))};
        Point2 x{u(gen), u(gen)};
        bool near = false;
        for (const auto& hs : herders) {
            near = near || distance(hs.position, x) < 0.2;
        }
        if (near) {
            x = x + Point2{7.0, 0.0};
        }
        const double alpha = a(gen);
        const Point2 v = repulsion_velocity({x}, herders, alpha).value;
        const Point2 fd{
            -(potential(x + Point2{h, 0}, herders, alpha) - potential(x - Point2{h, 0}, herders, alpha)) / (2 * h),
            -(potential(x + Point2{0, h}, herders, alpha) - potential(x - Point2{0, h}, herders, alpha)) / (2 * h)};
        EXPECT_LT((v - fd).norm(), 1e-5 * v.norm()) << "config " << trial;
    }
}

TEST(Repulsion, CoincidentHerderIsClampedAndFlagged)
{
    const std::vector<HerderState> one{at(1, 1)};
    const auto v = repulsion_velocity({{1, 1}}, one, 1.0);
    EXPECT_TRUE(v.flagged);
    EXPECT_TRUE(v.value.finite());
}

TEST(CollisionAvoidance, Examples)
{
    const double rc = 1e-4;
    const std::vector<TargetState> far{{{0, 0}}, {{1, 0}}};
    EXPECT_EQ(collision_avoidance_velocity(0, far, rc).value.norm(), 0.0);

    const double d = rc / 2;
    const std::vector<TargetState> close{{{0, 0}}, {{d, 0}}};
    const auto v = collision_avoidance_velocity(0, close, rc).value;
    EXPECT_NEAR(v.x, 1.0 / (d * d), 1e-6 / (d * d));
    EXPECT_EQ(v.y, 0.0);
    EXPECT_NEAR(collision_avoidance_velocity(0, close, rc, -1).value.x, -1.0 / (d * d), 1e-6 / (d * d));

    const std::vector<TargetState> edge{{{0, 0}}, {{0.25, 0}}};
    EXPECT_GT(collision_avoidance_velocity(0, edge, 0.25).value.x, 0.0);
}

TEST(TargetDrift, SumOfComponents)
{
    const ModelParams p;
    const std::vector<TargetState> lone{{{0.5, 0.5}}};
    EXPECT_EQ(target_drift(0, lone, {}, p).value.norm(), 0.0);

    const std::vector<HerderState> herders{at(10, 0)};
    const auto rep = repulsion_velocity(lone[0], herders, p.alpha_r).value;
    const auto drift = target_drift(0, lone, herders, p).value;
    EXPECT_EQ(drift.x, rep.x);
    EXPECT_EQ(drift.y, rep.y);

    std::mt19937_64 gen(1);
    std::normal_distribution<double> n(0.0, 5e-5);
    std::vector<TargetState> cluster(6);
    for (auto& t : cluster) {
        t.position = {1.0 + n(gen), n(gen)};
    }
    const std::vector<HerderState> hs{at(3, 0), at(-2, 1)};
    for (std::size_t i = 0; i < cluster.size(); ++i) {
        const Point2 expect = repulsion_velocity(cluster[i], hs, p.alpha_r).value +
                              collision_avoidance_velocity(i, cluster, p.r_c, p.collision_sign).value;
        const Point2 got = target_drift(i, cluster, hs, p).value;
        EXPECT_EQ(got.x, expect.x);
        EXPECT_EQ(got.y, expect.y);
    }
}

TEST(CappedDisplacement, BoundsLength)
{
    const Point2 d = capped_displacement({3e6, 4e6}, 0.006, 1e-4);
    EXPECT_NEAR(d.norm(), 1e-4, 1e-18);
    EXPECT_NEAR(d.x / d.y, 0.75, 1e-12);
    const Point2 small = capped_displacement({1, 0}, 0.006, 1e-4 * 100);
    EXPECT_DOUBLE_EQ(small.x, 0.006);
    const Point2 off = capped_displacement({3e6, 4e6}, 0.006, 0.0);
    EXPECT_DOUBLE_EQ(off.x, 3e6 * 0.006);
}

TEST(ChaseSwitch, Examples)
{
    EXPECT_EQ(chase_switch(2.0, 1.0), 1);
    EXPECT_EQ(chase_switch(0.5, 1.0), 0);
    EXPECT_EQ(chase_switch(1.0, 1.0), 1);
    static_assert(chase_switch(3.0, 1.0) == 1);
}

TEST(ChaseSwitch, MonotoneInRho)
{
    int prev = 0;
    for (double rho = 0.0; rho < 3.0; rho += 0.01) {
        const int xi = chase_switch(rho, 1.0);
        EXPECT_GE(xi, prev);
        prev = xi;
    }
}

TEST(HerderControl, ElasticEquilibriumGivesZeroForce)
{
    const ModelParams p;
    const Arena arena;
    const double phi = 0.8;
    const TargetState target{to_cartesian({2.0, phi})};
    const HerderState h = at(3.0005 * std::cos(phi), 3.0005 * std::sin(phi));
    const auto u = herder_control(h, target, p, arena).value;
    EXPECT_NEAR(u.u_r, 0.0, 1e-10);
    EXPECT_NEAR(u.u_theta, 0.0, 1e-10);
}

TEST(HerderControl, HandSubstitutedExamples)
{
    const ModelParams p;
    const Arena arena;
    const HerderState h = at(3, 0);
    const auto outside = herder_control(h, TargetState{{2, 0}}, p, arena).value;
    EXPECT_NEAR(outside.u_r, 98.706 * 0.0005, 1e-12);
    EXPECT_NEAR(outside.u_theta, 0.0, 1e-15);

    const auto inside = herder_control(h, TargetState{{0.5, 0}}, p, arena).value;
    EXPECT_NEAR(inside.u_r, -98.706 * (3 - 2.0005), 1e-9);
}

TEST(HerderControl, UnassignedHerderRetreatsWithAngularDampingOnly)
{
    const ModelParams p;
    const Arena arena;
    const HerderState h = at(0, 3, -0.6, 0.0);  // moving anticlockwise at r=3, theta=pi/2
    const auto u = herder_control(h, std::nullopt, p, arena).value;
    EXPECT_NEAR(u.u_r, -p.eps_r * (3 - 2.0005), 1e-9);
    EXPECT_NEAR(u.u_theta, -p.b_theta * (0.6 / 3.0), 1e-12);
}

TEST(HerderControl, RotationInvariantWhenChasing)
{
    const ModelParams p;
    const Arena arena;
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    std::uniform_real_distribution<double> rot(-kPi, kPi);
    for (int k = 0; k < 200; ++k) {
        const Point2 hp{u(gen), u(gen)};
        const Point2 hv{u(gen), u(gen)};
        Point2 tp{u(gen), u(gen)};
        if (tp.norm() < 1.0) {
            tp = tp * (1.5 / std::max(tp.norm(), 1e-3));
        }
        const auto base = herder_control(at(hp.x, hp.y, hv.x, hv.y), TargetState{tp}, p, arena).value;
        const double a = rot(gen);
        auto r = [a](const Point2& q) {
            return Point2{q.x * std::cos(a) - q.y * std::sin(a), q.x * std::sin(a) + q.y * std::cos(a)};
        };
        const Point2 hp2 = r(hp), hv2 = r(hv);
        const auto turned = herder_control(at(hp2.x, hp2.y, hv2.x, hv2.y), TargetState{r(tp)}, p, arena).value;
        EXPECT_NEAR(turned.u_r, base.u_r, 1e-9 * (1 + std::abs(base.u_r)));
        EXPECT_NEAR(turned.u_theta, base.u_theta, 1e-9 * (1 + std::abs(base.u_theta)));
    }
}

TEST(HerderControl, SingularRadiusSuppressesAngularTerms)
{
    const ModelParams p;
    const Arena arena;
    const auto u = herder_control(at(0, 0, 1, 1), TargetState{{2, 0}}, p, arena);
    EXPECT_TRUE(u.flagged);
    EXPECT_EQ(u.value.u_theta, 0.0);
}

TEST(HerderAcceleration, BasisExamples)
{
    const ModelParams p;
    const Arena arena;
    const auto a = herder_acceleration(at(2, 0), {1, 0}, p, arena).value;
    EXPECT_NEAR(a.x, 1.0, 1e-15);
    EXPECT_NEAR(a.y, 0.0, 1e-15);
    const auto b = herder_acceleration(at(2, 0), {0, 1}, p, arena).value;
    EXPECT_NEAR(b.x, 0.0, 1e-15);
    EXPECT_NEAR(b.y, 1.0, 1e-15);
    const auto c = herder_acceleration(at(0, 2), {1, 1}, p, arena).value;
    EXPECT_NEAR(c.x, -1.0, 1e-15);
    EXPECT_NEAR(c.y, 1.0, 1e-15);
    const auto s = herder_acceleration(at(0, 0), {2, 5}, p, arena);
    EXPECT_TRUE(s.flagged);
    EXPECT_EQ(s.value.x, 2.0);
    EXPECT_EQ(s.value.y, 0.0);
}

namespace {

struct ChaseRun {
    std::vector<double> radial_error;
    std::vector<double> angular_error;
    std::vector<double> energy;
};

// Noise-free herder chasing a pinned target with explicit Euler.
ChaseRun chase(HerderState h, const TargetState& target, double seconds, double dt)
{
    const ModelParams p;
    const Arena arena;
    const Polar tgt = to_polar(target.position).value;
    const double r_eq = tgt.radius + arena.buffer_width;
    ChaseRun run;
    const auto steps = static_cast<int>(std::lround(seconds / dt));
    for (int k = 0; k <= steps; ++k) {
        const PolarRates pr = polar_rates(h, arena);
        const double er = pr.polar.radius - r_eq;
        const double et = wrap_angle(pr.polar.angle - tgt.angle);
        run.radial_error.push_back(std::abs(er));
        run.angular_error.push_back(std::abs(et));
        run.energy.push_back(0.5 * dot(h.velocity, h.velocity) + 0.5 * p.eps_r * er * er +
                             0.5 * p.eps_theta * pr.polar.radius * et * et);
        const auto u = herder_control(h, target, p, arena).value;
        const Point2 a = herder_acceleration(h, u, p, arena).value;
        h.velocity = h.velocity + a * dt;
        h.position = h.position + h.velocity * dt;
    }
    return run;
}

}  // namespace

TEST(HerderControl, ChaseConvergesWithinTwentySeconds)
{
    const double dt = 0.006;
    const auto run = chase(at(-4, 0.5), TargetState{to_cartesian({2.0, kPi / 3})}, 20.0, dt);
    EXPECT_LT(run.radial_error.back(), 1e-3);
    EXPECT_LT(run.angular_error.back(), 1e-3);
}

TEST(HerderControl, EnergyDecaysAlongNoiseFreeRun)
{
    const double dt = 0.001;
    const auto run = chase(at(2.5, -2.0, 0.3, 0.4), TargetState{to_cartesian({1.8, 1.0})}, 10.0, dt);
    const std::size_t per_second = 1000;
    for (std::size_t s = 1; s <= 10; ++s) {
        EXPECT_LT(run.energy[s * per_second], run.energy[(s - 1) * per_second]) << "second " << s;
    }
    EXPECT_LT(run.energy.back(), 1e-3 * run.energy.front());
}

TEST(PolarEulerStep, MatchesPolarSecondOrderSystem)
{
    const ModelParams p;
    const Arena arena;
    HerderState h = at(0, 3, -0.3, 0.1);
    const double dt = 0.006;
    const ControlForce u{0.5, -0.2};
    const PolarRates before = polar_rates(h, arena);
    const HerderState n = polar_euler_step(h, u, p, arena, dt);
    const PolarRates after = polar_rates(n, arena);
    EXPECT_NEAR(after.r_dot, before.r_dot + u.u_r * dt, 1e-12);
    EXPECT_NEAR(after.theta_dot, before.theta_dot + u.u_theta * dt, 1e-12);
    EXPECT_NEAR(after.polar.radius, before.polar.radius + (before.r_dot + u.u_r * dt) * dt, 1e-12);
    EXPECT_NEAR(n.unwrapped_angle - h.unwrapped_angle, (before.theta_dot + u.u_theta * dt) * dt, 1e-12);
}

TEST(ModelParams, ValidateRejectsBadValues)
{
    ModelParams p;
    EXPECT_NO_THROW(p.validate());
    p.alpha_r = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.collision_sign = 2;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    Arena a;
    a.goal_radius = -1;
    EXPECT_THROW(a.validate(), std::invalid_argument);
}
