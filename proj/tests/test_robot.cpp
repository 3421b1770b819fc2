#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "herding/robot.hpp"

using namespace herding;

namespace {

// Closed-loop run against a reference given as a function of time.
template <typename Ref>
std::vector<double> track(UnicycleState s, Ref&& ref, double seconds, double dt)
{
    const RegulatorGains g;
    const Arena arena;
    std::vector<double> err;
    const auto steps = static_cast<int>(std::lround(seconds / dt));
    for (int k = 0; k <= steps; ++k) {
        const Point2 p = ref(k * dt);
        err.push_back(distance(s.position, p));
        const auto cmd = cartesian_regulator(s, p, reference_angle(s, p, arena, HeadingReference::ErrorBearing), g);
        s = unicycle_step(s, cmd, dt);
    }
    return err;
}

}  // namespace

TEST(Regulator, Examples)
{
    const RegulatorGains g{0.125, 0.25};
    const UnicycleState at_ref{{1, 2}, 0.3};
    EXPECT_EQ(cartesian_regulator(at_ref, {1, 2}, 0.0, g).v, 0.0);

    const UnicycleState facing{{0, 0}, 0.4 + kPi};
    EXPECT_NEAR(cartesian_regulator(facing, {1, 1}, 0.4, g).omega, 0.0, 1e-15);

    const UnicycleState s{{2, 0}, 0.0};
    EXPECT_DOUBLE_EQ(cartesian_regulator(s, {0, 0}, 0.0, g).v, -0.25);
}

TEST(Regulator, EquilibriumOnlyWithZeroErrors)
{
    const RegulatorGains g;
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 500; ++k) {
        const UnicycleState s{{u(gen), u(gen)}, u(gen)};
        const Point2 ref{u(gen), u(gen)};
        const double ang = u(gen);
        const auto cmd = cartesian_regulator(s, ref, ang, g);
        const double proj = dot(s.position - ref, unit_vector(s.heading));
        const double head = wrap_angle(ang - s.heading + kPi);
        EXPECT_EQ(cmd.v == 0.0 && cmd.omega == 0.0, proj == 0.0 && head == 0.0);
        EXPECT_NEAR(cmd.v, -g.k1 * proj, 1e-15);
        EXPECT_NEAR(cmd.omega, g.k2 * head, 1e-15);
    }
}

TEST(Regulator, GainsMustBePositive)
{
    EXPECT_NO_THROW(RegulatorGains{}.validate());
    EXPECT_THROW((RegulatorGains{0.0, 1.0}.validate()), std::invalid_argument);
    EXPECT_THROW((RegulatorGains{1.0, -1.0}.validate()), std::invalid_argument);
}

TEST(ReferenceAngle, Modes)
{
    const Arena arena;
    const UnicycleState s{{1, 1}, 0.0};
    EXPECT_NEAR(reference_angle(s, {0, 1}, arena, HeadingReference::ErrorBearing), 0.0, 1e-15);
    EXPECT_NEAR(reference_angle(s, {0, 1}, arena, HeadingReference::ReferencePolar), kPi / 2, 1e-15);
    EXPECT_EQ(reference_angle(s, {1, 1}, arena, HeadingReference::ErrorBearing), 0.0);
}

TEST(Unicycle, Examples)
{
    const UnicycleState a = unicycle_step({{0, 0}, 0.0}, {1.0, 0.0}, 1.0);
    EXPECT_DOUBLE_EQ(a.position.x, 1.0);
    EXPECT_DOUBLE_EQ(a.position.y, 0.0);
    const UnicycleState b = unicycle_step({{0, 0}, 0.0}, {0.0, kPi}, 1.0);
    EXPECT_DOUBLE_EQ(b.heading, kPi);
    EXPECT_EQ(b.position, Point2(0, 0));
    const UnicycleState c{{0, 0}, 3 * kPi};
    EXPECT_NEAR(c.wrapped_heading(), kPi, 1e-12);
}

TEST(Unicycle, ClosesCircle)
{
    const double period = 10.0;
    const int n = 10'000;
    const double dt = period / n;
    UnicycleState s{{0, 0}, 0.0};
    Point2 far{};
    for (int k = 0; k < n; ++k) {
        s = unicycle_step(s, {1.0, kTwoPi / period}, dt);
        if (k == n / 2 - 1) {
            far = s.position;
        }
    }
    const double radius = period / kTwoPi;
    EXPECT_LT(s.position.norm(), 0.01 * radius);
    EXPECT_NEAR(far.norm(), 2 * radius, 0.01 * radius);
}

TEST(Unicycle, DisplacementBoundedBySpeed)
{
    std::mt19937_64 gen(10);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 1000; ++k) {
        const UnicycleState s{{u(gen), u(gen)}, u(gen)};
        const UnicycleCommand cmd{u(gen), u(gen)};
        const UnicycleState n = unicycle_step(s, cmd, 0.006);
        EXPECT_LE(distance(n.position, s.position), std::abs(cmd.v) * 0.006 + 1e-15 * (s.position.norm() + 1));
    }
}

TEST(Tracking, StaticReferenceWithinSixtySeconds)
{
    for (double h0 : {0.0, 1.5, kPi, -2.0}) {
        const auto err = track(UnicycleState{{1.0, 0.5}, h0}, [](double) { return Point2{0, 0}; }, 60.0, 0.006);
        EXPECT_LT(err.back(), 0.01) << "initial heading " << h0;
    }
}

TEST(Tracking, SlowReferenceStaysWithinHalfUnit)
{
    const double speed = 0.05;
    const double radius = 2.0;
    auto ref = [&](double t) { return to_cartesian({radius, speed * t / radius}); };
    const auto err = track(UnicycleState{ref(0.0), kPi}, ref, 300.0, 0.006);
    const auto transient = static_cast<std::size_t>(60.0 / 0.006);
    for (std::size_t k = transient; k < err.size(); ++k) {
        ASSERT_LT(err[k], 0.5) << "t = " << k * 0.006;
    }
}

TEST(RobotTrial, DisabledLayerPassesThrough)
{
    SimulationConfig c;
    c.horizon = 8.0;
    c.seed = 3;
    const RobotTrial r = run_robot_trial(c);
    const TrialResult t = run_trial(c);
    EXPECT_TRUE(r.frames.empty());
    EXPECT_EQ(r.metrics.gathering_time, t.metrics.gathering_time);
    EXPECT_EQ(r.metrics.d_tot, t.metrics.d_tot);
    EXPECT_EQ(r.metrics.spread, t.metrics.spread);
    EXPECT_EQ(r.realized.herder_speeds, t.trajectory.herder_speeds);
}

TEST(RobotTrial, RobotsStartOnReferencesAndTrack)
{
    SimulationConfig c;
    c.n_targets = 3;
    c.strategy = StrategyKind::StaticPartition;
    c.robot.enabled = true;
    c.robot.horizon = 30.0;
    c.record_stride = 10;
    const RobotTrial r = run_robot_trial(c);
    ASSERT_FALSE(r.frames.empty());
    const RobotFrame& first = r.frames.front();
    ASSERT_EQ(first.robots.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_EQ(first.robots[k].position, first.references[k]);
        EXPECT_NEAR(wrap_angle(first.robots[k].heading - to_polar(first.references[k]).value.angle - kPi), 0.0,
                    1e-12);
    }
    for (const auto& f : r.frames) {
        for (std::size_t k = 0; k < f.robots.size(); ++k) {
            EXPECT_LE(distance(f.robots[k].position, f.references[k]), 10.0);
        }
    }
    EXPECT_EQ(r.realized.samples.size(), r.frames.size());
    EXPECT_NEAR(r.frames.back().time, 30.0, 1e-9);
}

TEST(RobotTrial, TimeScaleStretchesTicks)
{
    SimulationConfig c;
    c.n_targets = 3;
    c.robot.enabled = true;
    c.robot.horizon = 12.0;
    c.robot.time_scale = 2.0;
    const RobotTrial r = run_robot_trial(c);
    EXPECT_DOUBLE_EQ(r.realized.dt, 0.012);
    EXPECT_EQ(r.realized.step_count(), 1000u);
}
