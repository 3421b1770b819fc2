#include "herding/selection.hpp"

#include <stdexcept>

namespace herding {

std::string_view to_string(StrategyKind kind)
{
    switch (kind) {
    case StrategyKind::Global: return "global";
    case StrategyKind::StaticPartition: return "static";
    case StrategyKind::LeaderFollower: return "leader_follower";
    case StrategyKind::PeerToPeer: return "peer_to_peer";
    }
    return "unknown";
}

StrategyKind parse_strategy(std::string_view name)
{
    if (name == "global") return StrategyKind::Global;
    if (name == "static") return StrategyKind::StaticPartition;
    if (name == "leader_follower") return StrategyKind::LeaderFollower;
    if (name == "peer_to_peer") return StrategyKind::PeerToPeer;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(Persistence p)
{
    switch (p) {
    case Persistence::None: return "none";
    case Persistence::Global: return "global";
    case Persistence::All: return "all";
    }
    return "unknown";
}

Persistence parse_persistence(std::string_view name)
{
    if (name == "none") return Persistence::None;
    if (name == "global") return Persistence::Global;
    if (name == "all") return Persistence::All;
    throw std::invalid_argument("unknown persistence '" + std::string(name) + "'");
}

bool Assignment::valid(std::size_t n_targets) const
{
    std::vector<bool> taken(n_targets, false);
    for (const auto& c : chased) {
        if (!c) {
            continue;
        }
        if (*c >= n_targets || taken[*c]) {
            return false;
        }
        taken[*c] = true;
    }
    return true;
}

namespace {

double herder_angle(const HerderState& h, const Arena& arena)
{
    return to_polar(h.position, arena.center).value.angle;
}

}  // namespace

Assignment select_global(std::span<const HerderState> herders,
                         std::span<const TargetState> targets,
                         const Arena& arena,
                         const Assignment* previous)
{
    const std::vector<Sector> everywhere(herders.size(), Sector{-kPi, kTwoPi});
    return claim_in_sectors(everywhere, targets, arena, previous);
}

std::vector<Sector> static_sectors(std::size_t n_herders, double anchor)
{
    std::vector<Sector> sectors;
    sectors.reserve(n_herders);
    const double width = kTwoPi / static_cast<double>(n_herders);
    for (std::size_t j = 0; j < n_herders; ++j) {
        sectors.push_back({anchor + static_cast<double>(j) * width, width});
    }
    return sectors;
}

Assignment select_static(std::span<const HerderState> herders,
                         std::span<const TargetState> targets,
                         const Arena& arena,
                         double sector_anchor,
                         const Assignment* previous)
{
    const auto sectors = static_sectors(herders.size(), sector_anchor);
    return claim_in_sectors(sectors, targets, arena, previous);
}

std::vector<Sector> leader_follower_sectors(std::span<const HerderState> herders,
                                            const Arena& arena,
                                            std::size_t leader_index)
{
    const std::size_t n = herders.size();
    const double width = kTwoPi / static_cast<double>(n);
    const double leader_theta = herder_angle(herders[leader_index], arena);
    std::vector<Sector> sectors(n);
    // followers are numbered anticlockwise starting after the leader
    for (std::size_t rank = 0; rank < n; ++rank) {
        const std::size_t j = (leader_index + rank) % n;
        const double shift = width * static_cast<double>(rank);
        sectors[j] = {leader_theta - width / 2.0 + shift, width};
    }
    return sectors;
}

Assignment select_leader_follower(std::span<const HerderState> herders,
                                  std::span<const TargetState> targets,
                                  const Arena& arena,
                                  std::size_t leader_index,
                                  const Assignment* previous)
{
    const auto sectors = leader_follower_sectors(herders, arena, leader_index);
    return claim_in_sectors(sectors, targets, arena, previous);
}

Flagged<std::vector<Sector>> peer_to_peer_sectors(std::span<const HerderState> herders,
                                                  const Arena& arena)
{
    const std::size_t n = herders.size();
    Flagged<std::vector<Sector>> out;
    if (n == 1) {
        out.value.push_back({-kPi, kTwoPi});
        return out;
    }
    std::vector<double> theta(n);
    for (std::size_t j = 0; j < n; ++j) {
        theta[j] = herder_angle(herders[j], arena);
    }
    out.value.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double next = theta[(j + 1) % n];
        const double prev = theta[(j + n - 1) % n];
        const double gap_next = wrap_positive(next - theta[j]);
        const double gap_prev = wrap_positive(theta[j] - prev);
        if (gap_next == 0.0 || gap_prev == 0.0) {
            out.flagged = true;
        }
        out.value[j] = {theta[j] - gap_prev / 2.0, (gap_prev + gap_next) / 2.0};
    }
    return out;
}

Assignment select_peer_to_peer(std::span<const HerderState> herders,
                               std::span<const TargetState> targets,
                               const Arena& arena,
                               const Assignment* previous)
{
    const auto sectors = peer_to_peer_sectors(herders, arena);
    return claim_in_sectors(sectors.value, targets, arena, previous);
}

Assignment claim_in_sectors(std::span<const Sector> sectors,
                            std::span<const TargetState> targets,
                            const Arena& arena,
                            const Assignment* previous)
{
    std::vector<Polar> polar(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        polar[i] = to_polar(targets[i].position, arena.center).value;
    }
    std::vector<bool> taken(targets.size(), false);

    Assignment out;
    out.chased.resize(sectors.size());
    if (previous != nullptr && previous->size() == sectors.size()) {
        for (std::size_t j = 0; j < sectors.size(); ++j) {
            const auto& prev = previous->chased[j];
            if (!prev || *prev >= targets.size() || taken[*prev]) {
                continue;
            }
            const Polar& p = polar[*prev];
            if (p.radius >= arena.goal_radius && sector_contains(p.angle, sectors[j].lo, sectors[j].width)) {
                out.chased[j] = prev;
                taken[*prev] = true;
            }
        }
    }
    for (std::size_t j = 0; j < sectors.size(); ++j) {
        if (out.chased[j]) {
            continue;
        }
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (taken[i] || !sector_contains(polar[i].angle, sectors[j].lo, sectors[j].width)) {
                continue;
            }
            if (!best || polar[i].radius > polar[*best].radius) {
                best = i;
            }
        }
        if (best) {
            taken[*best] = true;
        }
        out.chased[j] = best;
    }
    return out;
}

TargetSelector::TargetSelector(StrategyKind kind,
                               double sector_anchor,
                               Persistence persistence,
                               std::size_t leader_index)
    : kind_(kind), sector_anchor_(sector_anchor), persistence_(persistence), leader_index_(leader_index)
{
}

bool TargetSelector::persistent() const
{
    return persistence_ == Persistence::All ||
           (persistence_ == Persistence::Global && kind_ == StrategyKind::Global);
}

Assignment TargetSelector::reassign(std::span<const HerderState> herders,
                                    std::span<const TargetState> targets,
                                    const Arena& arena,
                                    const Assignment* previous) const
{
    const Assignment* prev = persistent() ? previous : nullptr;
    switch (kind_) {
    case StrategyKind::Global: return select_global(herders, targets, arena, prev);
    case StrategyKind::StaticPartition: return select_static(herders, targets, arena, sector_anchor_, prev);
    case StrategyKind::LeaderFollower:
        return select_leader_follower(herders, targets, arena, leader_index_, prev);
    case StrategyKind::PeerToPeer: return select_peer_to_peer(herders, targets, arena, prev);
    }
    throw std::logic_error("unhandled strategy");
}

Assignment TargetSelector::reassign(std::span<const HerderState> herders,
                                    std::span<const TargetState> targets,
                                    const Arena& arena,
                                    const Assignment* previous,
                                    StrategyKind requested) const
{
    if (requested != kind_) {
        throw std::logic_error("strategy is fixed for the trial: configured '" +
                               std::string(to_string(kind_)) + "', requested '" +
                               std::string(to_string(requested)) + "'");
    }
    return reassign(herders, targets, arena, previous);
}

}  // namespace herding
