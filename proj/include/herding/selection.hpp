#pragma once
// Target selection strategies: which target each herder chases.
//
// Herders are labelled 0..N_H-1 anticlockwise at trial start; label 0 is the
// leader in the leader-follower strategy. Every strategy lets herders claim in
// ascending label order, each taking the farthest unclaimed target (ties to the
// lowest target index) inside its window.
//
// With persistence enabled a herder first keeps its previous target while that
// target is still outside the goal region and inside the herder's window; only
// herders without such a target claim a new one.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "herding/dynamics.hpp"

namespace herding {

enum class StrategyKind { Global, StaticPartition, LeaderFollower, PeerToPeer };

[[nodiscard]] std::string_view to_string(StrategyKind kind);
/// Accepts the config spellings `global | static | leader_follower | peer_to_peer`.
[[nodiscard]] StrategyKind parse_strategy(std::string_view name);

/// Which strategies keep a chased target until it is contained.
enum class Persistence { None, Global, All };

[[nodiscard]] std::string_view to_string(Persistence p);
/// Accepts `none | global | all`.
[[nodiscard]] Persistence parse_persistence(std::string_view name);

struct Assignment {
    std::vector<std::optional<std::size_t>> chased;  ///< per herder

    [[nodiscard]] std::size_t size() const { return chased.size(); }
    /// No two herders share a target and every index is < n_targets.
    [[nodiscard]] bool valid(std::size_t n_targets) const;
    bool operator==(const Assignment&) const = default;
};

/// Angular window (lo, lo + width] owned by one herder.
struct Sector {
    double lo{0.0};
    double width{0.0};
};

/// Farthest-first over the whole plane. With @p previous, a herder keeps its
/// target while that target is outside the goal region.
[[nodiscard]] Assignment select_global(std::span<const HerderState> herders,
                                       std::span<const TargetState> targets,
                                       const Arena& arena,
                                       const Assignment* previous = nullptr);

[[nodiscard]] std::vector<Sector> static_sectors(std::size_t n_herders, double anchor);
[[nodiscard]] Assignment select_static(std::span<const HerderState> herders,
                                       std::span<const TargetState> targets,
                                       const Arena& arena,
                                       double sector_anchor,
                                       const Assignment* previous = nullptr);

[[nodiscard]] std::vector<Sector> leader_follower_sectors(std::span<const HerderState> herders,
                                                          const Arena& arena,
                                                          std::size_t leader_index = 0);
[[nodiscard]] Assignment select_leader_follower(std::span<const HerderState> herders,
                                                std::span<const TargetState> targets,
                                                const Arena& arena,
                                                std::size_t leader_index = 0,
                                                const Assignment* previous = nullptr);

/// Window of herder j: (theta_j - gap_to_previous / 2, theta_j + gap_to_next / 2].
/// A herder sharing its angle with a neighbour gets a zero-width side and the
/// result is flagged.
[[nodiscard]] Flagged<std::vector<Sector>> peer_to_peer_sectors(std::span<const HerderState> herders,
                                                                const Arena& arena);
[[nodiscard]] Assignment select_peer_to_peer(std::span<const HerderState> herders,
                                             std::span<const TargetState> targets,
                                             const Arena& arena,
                                             const Assignment* previous = nullptr);

/// Sequential farthest-first claiming over per-herder windows. Targets kept
/// from @p previous (outside the goal region, still in the window) are
/// claimed first.
[[nodiscard]] Assignment claim_in_sectors(std::span<const Sector> sectors,
                                          std::span<const TargetState> targets,
                                          const Arena& arena,
                                          const Assignment* previous = nullptr);

/// Strategy dispatch bound to one trial; the strategy cannot change afterwards.
class TargetSelector {
public:
    explicit TargetSelector(StrategyKind kind,
                            double sector_anchor = -kPi,
                            Persistence persistence = Persistence::Global,
                            std::size_t leader_index = 0);

    [[nodiscard]] StrategyKind kind() const { return kind_; }
    [[nodiscard]] bool persistent() const;

    /// @p previous is the assignment in force before this call (ignored when
    /// the strategy is not persistent).
    [[nodiscard]] Assignment reassign(std::span<const HerderState> herders,
                                      std::span<const TargetState> targets,
                                      const Arena& arena,
                                      const Assignment* previous = nullptr) const;

    /// Same as reassign() but throws std::logic_error when @p requested differs
    /// from the strategy fixed at construction.
    [[nodiscard]] Assignment reassign(std::span<const HerderState> herders,
                                      std::span<const TargetState> targets,
                                      const Arena& arena,
                                      const Assignment* previous,
                                      StrategyKind requested) const;

private:
    StrategyKind kind_;
    double sector_anchor_;
    Persistence persistence_;
    std::size_t leader_index_;
};

}  // namespace herding
