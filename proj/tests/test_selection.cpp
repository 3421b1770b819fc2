#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "herding/selection.hpp"

using namespace herding;

namespace {

HerderState herder_at_angle(double a, double r = 4.0)
{
    HerderState h;
    h.position = to_cartesian({r, a});
    h.unwrapped_angle = a;
    return h;
}

TargetState target_at(double r, double a)
{
    return {to_cartesian({r, a})};
}

// Brute-force check of sequential farthest-first claiming over explicit windows.
void expect_farthest_first(const Assignment& got,
                           const std::vector<Sector>& windows,
                           const std::vector<TargetState>& targets,
                           const Arena& arena)
{
    ASSERT_EQ(got.size(), windows.size());
    std::vector<bool> taken(targets.size(), false);
    for (std::size_t j = 0; j < windows.size(); ++j) {
        std::optional<std::size_t> best;
        double best_d = -1.0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (taken[i]) {
                continue;
            }
            const Polar p = to_polar(targets[i].position, arena.center).value;
            if (!sector_contains(p.angle, windows[j].lo, windows[j].width)) {
                continue;
            }
            if (p.radius > best_d) {
                best_d = p.radius;
                best = i;
            }
        }
        ASSERT_EQ(got.chased[j], best) << "herder " << j;
        if (best) {
            taken[*best] = true;
        }
    }
}

std::vector<TargetState> random_targets(std::mt19937_64& gen, std::size_t n)
{
    std::uniform_real_distribution<double> r(0.1, 5.0);
    std::uniform_real_distribution<double> a(-kPi, kPi);
    std::vector<TargetState> t(n);
    for (auto& x : t) {
        x = target_at(r(gen), a(gen));
    }
    return t;
}

}  // namespace

TEST(SelectGlobal, FarthestGoesToLowestHerder)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(3, 0.1), target_at(5, 2.0), target_at(2, -1.0)};
    const Assignment a = select_global(h, t, arena);
    EXPECT_EQ(a.chased[0], 1u);
    EXPECT_EQ(a.chased[1], 0u);
}

TEST(SelectGlobal, SurplusHerderUnassigned)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(3, 0.1)};
    const Assignment a = select_global(h, t, arena);
    EXPECT_EQ(a.chased[0], 0u);
    EXPECT_FALSE(a.chased[1].has_value());
}

TEST(SelectGlobal, TiesGoToLowerTargetIndex)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(1, 0.0), target_at(4, 1.0), target_at(4, -2.0)};
    const Assignment a = select_global(h, t, arena);
    EXPECT_EQ(a.chased[0], 1u);
    EXPECT_EQ(a.chased[1], 2u);
}

TEST(SelectGlobal, MatchesExhaustiveEnumeration)
{
    // Among all injective assignments of three targets to two herders, the
    // chosen one maximizes herder 0's distance first, then herder 1's, then
    // prefers lower indices.
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> d(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<TargetState> t{target_at(d(gen), 0.3), target_at(d(gen), 1.3), target_at(d(gen), 2.3)};
        std::pair<std::size_t, std::size_t> best{9, 9};
        std::pair<double, double> best_key{-1, -1};
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j) {
                    continue;
                }
                const std::pair<double, double> key{t[i].position.norm(), t[j].position.norm()};
                if (key.first > best_key.first + 1e-12 ||
                    (std::abs(key.first - best_key.first) <= 1e-12 && key.second > best_key.second + 1e-12)) {
                    best_key = key;
                    best = {i, j};
                }
            }
        }
        const Assignment a = select_global(h, t, arena);
        EXPECT_EQ(a.chased[0], best.first);
        EXPECT_EQ(a.chased[1], best.second);
    }
}

TEST(SelectGlobal, KeepsUncontainedTargetWithPrevious)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(1.5, 0.1), target_at(5, 2.0), target_at(0.5, -1.0)};
    Assignment prev;
    prev.chased = {0u, 2u};
    const Assignment a = select_global(h, t, arena, &prev);
    EXPECT_EQ(a.chased[0], 0u);   // still outside G
    EXPECT_EQ(a.chased[1], 1u);   // its target is contained, so it claims anew
}

TEST(StaticSectors, WidthsAndAnchor)
{
    const auto two = static_sectors(2, -kPi);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_DOUBLE_EQ(two[0].lo, -kPi);
    EXPECT_DOUBLE_EQ(two[0].width, kPi);
    EXPECT_DOUBLE_EQ(two[1].lo, 0.0);
    for (const auto& s : static_sectors(3, -kPi)) {
        EXPECT_DOUBLE_EQ(s.width, kTwoPi / 3);
    }
}

TEST(SelectStatic, OneTargetPerHalfPlane)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(2, kPi / 2), target_at(2, -kPi / 2)};
    const Assignment a = select_static(h, t, arena, -kPi);
    EXPECT_EQ(a.chased[0], 1u);
    EXPECT_EQ(a.chased[1], 0u);
}

TEST(SelectStatic, EmptySectorLeavesHerderUnassigned)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(2, -0.5), target_at(3, -2.0)};
    const Assignment a = select_static(h, t, arena, -kPi);
    EXPECT_EQ(a.chased[0], 1u);
    EXPECT_FALSE(a.chased[1].has_value());
}

TEST(LeaderFollower, WindowsFollowTheLeader)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(2), herder_at_angle(4)};
    const auto w = leader_follower_sectors(h, arena);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_NEAR(w[0].lo, -kPi / 3, 1e-15);
    EXPECT_NEAR(w[0].width, 2 * kPi / 3, 1e-15);
    EXPECT_NEAR(wrap_angle(w[1].lo - kPi / 3), 0.0, 1e-12);
}

TEST(LeaderFollower, TargetOppositeLeaderGoesToSecondFollower)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(2), herder_at_angle(4)};
    const std::vector<TargetState> t{target_at(2, kPi)};
    const Assignment a = select_leader_follower(h, t, arena);
    EXPECT_FALSE(a.chased[0].has_value());
    EXPECT_EQ(a.chased[1], 0u);
    EXPECT_FALSE(a.chased[2].has_value());
}

TEST(LeaderFollower, UpperBoundaryBelongsToLeader)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(2, kPi / 2)};
    const Assignment a = select_leader_follower(h, t, arena);
    EXPECT_EQ(a.chased[0], 0u);
}

TEST(PeerToPeer, OppositeHerdersGetHalfPlanes)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const auto s = peer_to_peer_sectors(h, arena);
    EXPECT_FALSE(s.flagged);
    EXPECT_NEAR(s.value[0].width, kPi, 1e-12);
    EXPECT_NEAR(s.value[1].width, kPi, 1e-12);
    EXPECT_NEAR(wrap_angle(s.value[0].lo + kPi / 2), 0.0, 1e-12);
}

TEST(PeerToPeer, HandEvaluatedWindows)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi / 2)};
    const auto s = peer_to_peer_sectors(h, arena).value;
    EXPECT_NEAR(wrap_angle(s[0].lo + 3 * kPi / 4), 0.0, 1e-12);
    EXPECT_NEAR(s[0].width, kPi, 1e-12);
    EXPECT_NEAR(wrap_angle(s[1].lo - kPi / 4), 0.0, 1e-12);
    EXPECT_NEAR(s[1].width, kPi, 1e-12);
}

TEST(PeerToPeer, EquallySpacedMatchesStaticWidths)
{
    const Arena arena;
    for (std::size_t n : {2u, 3u, 5u}) {
        std::vector<HerderState> h;
        for (std::size_t j = 0; j < n; ++j) {
            h.push_back(herder_at_angle(0.3 + kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
        }
        const auto s = peer_to_peer_sectors(h, arena).value;
        for (const auto& w : s) {
            EXPECT_NEAR(w.width, kTwoPi / static_cast<double>(n), 1e-12);
        }
    }
}

TEST(PeerToPeer, CoincidentHerdersAreFlagged)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(1.0), herder_at_angle(1.0), herder_at_angle(3.0)};
    EXPECT_TRUE(peer_to_peer_sectors(h, arena).flagged);
}

TEST(Sectors, TileTheCircle)
{
    const Arena arena;
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> a(-kPi, kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
        // distinct herder angles labelled anticlockwise
        std::vector<double> angles(n);
        for (auto& x : angles) {
            x = a(gen);
        }
        std::sort(angles.begin(), angles.end());
        std::vector<HerderState> h;
        for (double x : angles) {
            h.push_back(herder_at_angle(x));
        }
        const auto p2p = peer_to_peer_sectors(h, arena).value;
        const auto lf = leader_follower_sectors(h, arena);
        const auto st = static_sectors(n, a(gen));
        for (int k = 0; k < 50; ++k) {
            const double t = a(gen);
            for (const auto* windows : {&p2p, &lf, &st}) {
                int owners = 0;
                for (const auto& w : *windows) {
                    owners += sector_contains(t, w.lo, w.width);
                }
                EXPECT_EQ(owners, 1);
            }
        }
    }
}

TEST(Selection, InjectiveAndFarthestFirst)
{
    const Arena arena;
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> a(-kPi, kPi);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t nh = 2 + static_cast<std::size_t>(trial % 3);
        const std::size_t nt = 1 + static_cast<std::size_t>(trial % 9);
        std::vector<double> angles(nh);
        for (auto& x : angles) {
            x = a(gen);
        }
        std::sort(angles.begin(), angles.end());
        std::vector<HerderState> h;
        for (double x : angles) {
            h.push_back(herder_at_angle(x));
        }
        const auto t = random_targets(gen, nt);
        const double anchor = a(gen);

        const Assignment g = select_global(h, t, arena);
        EXPECT_TRUE(g.valid(nt));
        expect_farthest_first(g, std::vector<Sector>(nh, Sector{0.0, kTwoPi}), t, arena);

        const Assignment s = select_static(h, t, arena, anchor);
        EXPECT_TRUE(s.valid(nt));
        expect_farthest_first(s, static_sectors(nh, anchor), t, arena);

        const Assignment l = select_leader_follower(h, t, arena);
        EXPECT_TRUE(l.valid(nt));
        expect_farthest_first(l, leader_follower_sectors(h, arena), t, arena);

        const Assignment p = select_peer_to_peer(h, t, arena);
        EXPECT_TRUE(p.valid(nt));
        expect_farthest_first(p, peer_to_peer_sectors(h, arena).value, t, arena);
    }
}

TEST(Assignment, ValidRejectsDuplicatesAndOutOfRange)
{
    Assignment a;
    a.chased = {1u, 1u};
    EXPECT_FALSE(a.valid(3));
    a.chased = {0u, 5u};
    EXPECT_FALSE(a.valid(3));
    a.chased = {std::nullopt, 2u};
    EXPECT_TRUE(a.valid(3));
}

TEST(TargetSelector, DispatchAndDeterminism)
{
    const Arena arena;
    std::mt19937_64 gen(4);
    const std::vector<HerderState> h{herder_at_angle(0.2), herder_at_angle(2.5)};
    const auto t = random_targets(gen, 7);
    const TargetSelector global(StrategyKind::Global, -kPi, Persistence::None);
    EXPECT_EQ(global.reassign(h, t, arena), select_global(h, t, arena));
    EXPECT_EQ(global.reassign(h, t, arena), global.reassign(h, t, arena));
    const TargetSelector stat(StrategyKind::StaticPartition, -kPi, Persistence::None);
    EXPECT_EQ(stat.reassign(h, t, arena), select_static(h, t, arena, -kPi));
    const TargetSelector p2p(StrategyKind::PeerToPeer, -kPi, Persistence::None);
    EXPECT_EQ(p2p.reassign(h, t, arena), select_peer_to_peer(h, t, arena));
}

TEST(TargetSelector, RejectsStrategySwitch)
{
    const Arena arena;
    const std::vector<HerderState> h{herder_at_angle(0), herder_at_angle(kPi)};
    const std::vector<TargetState> t{target_at(2, 0.5)};
    const TargetSelector sel(StrategyKind::StaticPartition);
    EXPECT_NO_THROW((void)sel.reassign(h, t, arena, nullptr, StrategyKind::StaticPartition));
    EXPECT_THROW((void)sel.reassign(h, t, arena, nullptr, StrategyKind::Global), std::logic_error);
}

TEST(TargetSelector, DefaultPersistenceAppliesToGlobalOnly)
{
    EXPECT_TRUE(TargetSelector(StrategyKind::Global).persistent());
    EXPECT_FALSE(TargetSelector(StrategyKind::StaticPartition).persistent());
    EXPECT_TRUE(TargetSelector(StrategyKind::PeerToPeer, -kPi, Persistence::All).persistent());
    EXPECT_FALSE(TargetSelector(StrategyKind::Global, -kPi, Persistence::None).persistent());
}

TEST(StrategyNames, RoundTrip)
{
    for (auto k : {StrategyKind::Global, StrategyKind::StaticPartition, StrategyKind::LeaderFollower,
                   StrategyKind::PeerToPeer}) {
        EXPECT_EQ(parse_strategy(to_string(k)), k);
    }
    EXPECT_THROW((void)parse_strategy("random"), std::invalid_argument);
}
