#ifndef EFEQ_SOLVER_HPP
#define EFEQ_SOLVER_HPP

#include <cstdint>
#include <memory>
#include <optional>

#include "efeq/game.hpp"
#include "json.hpp"

namespace efeq {

struct SolveOptions {
  /// Positions expanded before the solver gives up with budget_exceeded.
  std::uint64_t node_budget = 50'000'000;
  /// Key the memo table by orbit under Aut(left) x Aut(right) instead of the exact map.
  bool canonical_keys = false;
};

enum class SolveStatus { iso_wins, ais_wins, budget_exceeded };

std::string to_string(SolveStatus status);

namespace detail {
class SolverCore;
}

/// Strategy extracted from a solved game. Responses are the lexicographically
/// first winning moves; positions off the explored tree are solved lazily.
class WinningStrategy {
 public:
  WinningStrategy() = default;
  explicit WinningStrategy(std::shared_ptr<detail::SolverCore> core) : core_(std::move(core)) {}

  bool valid() const { return core_ != nullptr; }
  bool iso_wins(const PartialMap& position, int rounds_left) const;
  std::optional<PartialMap> iso_response(const PartialMap& position, int rounds_left,
                                         const Demand& demand) const;
  std::optional<Demand> ais_demand(const PartialMap& position, int rounds_left) const;
  /// Response table over every position reachable by the winner's strategy.
  nlohmann::json table() const;

 private:
  std::shared_ptr<detail::SolverCore> core_;
};

struct SolveResult {
  SolveStatus status = SolveStatus::budget_exceeded;
  std::uint64_t nodes = 0;
  WinningStrategy strategy;
};

/// Exact minimax over the finite game. Throws GameError for infinite lengths
/// or a seed that is not a partial isomorphism.
SolveResult solve(const FiniteStructure& left, const FiniteStructure& right, const GameConfig& cfg,
                  const SolveOptions& options = {});

/// ISO player that follows a solved strategy.
class StrategyIsoPlayer : public IsoPlayer<ElementId> {
 public:
  StrategyIsoPlayer(WinningStrategy strategy, int total_rounds)
      : strategy_(std::move(strategy)), total_rounds_(total_rounds) {}
  std::optional<PartialMap> respond(const PartialMap& current, const Demand& demand,
                                    const Ordinal& position) override;

 private:
  WinningStrategy strategy_;
  int total_rounds_;
};

/// ISO player that never answers.
class RefusingIsoPlayer : public IsoPlayer<ElementId> {
 public:
  std::optional<PartialMap> respond(const PartialMap&, const Demand&, const Ordinal&) override {
    return std::nullopt;
  }
};

}  // namespace efeq

#endif  // EFEQ_SOLVER_HPP
