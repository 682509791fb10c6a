#ifndef EFEQ_GAME_HPP
#define EFEQ_GAME_HPP

#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "efeq/ordinal.hpp"
#include "efeq/structure.hpp"

namespace efeq {

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of the game of length `length` where AIS may demand
/// |left| + |right| < 1 + mu elements per move, starting from `seed`.
template <class E>
struct BasicGameConfig {
  Ordinal length;
  std::uint64_t mu = 1;
  BasicPartialMap<E> seed;
  /// Successor moves played from each limit (or from 0) when `length` is infinite.
  std::uint64_t stop_after = 8;
};

template <class E>
struct BasicDemand {
  std::vector<E> left;
  std::vector<E> right;
  std::size_t size() const { return left.size() + right.size(); }
};

enum class RoundKind { move, limit };

template <class E>
struct BasicRound {
  /// The position this round produces: beta + 1 for a move from beta, the limit itself for markers.
  Ordinal index;
  RoundKind kind = RoundKind::move;
  std::vector<E> demand_left;
  std::vector<E> demand_right;
  BasicPartialMap<E> map_after;
};

enum class PlayOutcome {
  completed,     // every move of the game was played
  prefix,        // infinite game cut off after the configured prefix
  iso_stuck,     // ISO had no legal move; AIS wins
  ais_resigned,  // adversary stopped early; the transcript is incomplete
};

std::string to_string(PlayOutcome outcome);
PlayOutcome play_outcome_from_string(const std::string& text);

template <class E>
struct BasicTranscript {
  BasicPartialMap<E> seed;
  std::vector<BasicRound<E>> rounds;
  PlayOutcome outcome = PlayOutcome::completed;
  std::string note;

  const BasicPartialMap<E>& final_map() const { return rounds.empty() ? seed : rounds.back().map_after; }
};

template <class E>
class IsoPlayer {
 public:
  virtual ~IsoPlayer() = default;
  /// A map extending `current` that covers the demand, or nullopt to concede.
  virtual std::optional<BasicPartialMap<E>> respond(const BasicPartialMap<E>& current,
                                                    const BasicDemand<E>& demand,
                                                    const Ordinal& position) = 0;
  virtual void on_limit(const Ordinal& /*index*/, const BasicPartialMap<E>& /*united*/) {}
};

template <class E>
class AisPlayer {
 public:
  virtual ~AisPlayer() = default;
  /// nullopt resigns the game.
  virtual std::optional<BasicDemand<E>> demand(const BasicPartialMap<E>& current,
                                               const Ordinal& position) = 0;
};

/// The pair of structures a game is played on. `check` returns the first
/// reason the map fails to be a partial isomorphism, or nullopt.
template <class A>
concept GameArena = requires(const A& arena, const typename A::element& e,
                             const BasicPartialMap<typename A::element>& f) {
  { arena.contains_left(e) } -> std::convertible_to<bool>;
  { arena.contains_right(e) } -> std::convertible_to<bool>;
  { arena.check(f) } -> std::convertible_to<std::optional<std::string>>;
};

class FiniteArena {
 public:
  using element = ElementId;

  FiniteArena(const FiniteStructure& left, const FiniteStructure& right) : left_(left), right_(right) {}

  bool contains_left(ElementId e) const { return left_.contains(e); }
  bool contains_right(ElementId e) const { return right_.contains(e); }
  std::optional<std::string> check(const PartialMap& f) const {
    return explain_partial_isomorphism(left_, right_, f);
  }
  const FiniteStructure& left() const { return left_; }
  const FiniteStructure& right() const { return right_; }

 private:
  const FiniteStructure& left_;
  const FiniteStructure& right_;
};

using GameConfig = BasicGameConfig<ElementId>;
using Demand = BasicDemand<ElementId>;
using Transcript = BasicTranscript<ElementId>;

struct VerifyResult {
  bool ok = true;
  std::string failure;
  std::size_t round = 0;  // 1-based index of the failing round; 0 for the seed
  explicit operator bool() const { return ok; }
};

namespace detail {

template <class E>
BasicPartialMap<E> union_of(const BasicPartialMap<E>& seed, const std::vector<BasicRound<E>>& rounds,
                            std::size_t upto, bool* consistent) {
  BasicPartialMap<E> out = seed;
  *consistent = true;
  for (std::size_t i = 0; i < upto; ++i) {
    for (const auto& [a, b] : rounds[i].map_after) {
      if (!out.try_insert(a, b)) *consistent = false;
    }
  }
  return out;
}

template <class E>
std::string describe_demand_error(const BasicDemand<E>& d, std::uint64_t mu) {
  return "demand of size " + std::to_string(d.size()) + " exceeds mu = " + std::to_string(mu);
}

}  // namespace detail

/// Referee. Runs `ais` against `iso` on `arena`; throws GameError when the
/// adversary breaks the rules, and ends the play with iso_stuck when ISO does.
template <GameArena A>
BasicTranscript<typename A::element> play(const A& arena,
                                          const BasicGameConfig<typename A::element>& cfg,
                                          IsoPlayer<typename A::element>& iso,
                                          AisPlayer<typename A::element>& ais) {
  using E = typename A::element;
  if (cfg.mu < 1) throw GameError("mu must be at least 1");
  if (auto why = arena.check(cfg.seed)) throw GameError("seed map is not a partial isomorphism: " + *why);

  BasicTranscript<E> t;
  t.seed = cfg.seed;
  BasicPartialMap<E> current = cfg.seed;
  Ordinal position;
  std::uint64_t block_moves = 0;
  std::uint64_t markers = 0;
  bool truncated = false;
  const bool infinite = !cfg.length.is_finite();

  while (position < cfg.length) {
    if (infinite && block_moves >= cfg.stop_after) {
      truncated = true;
      const Ordinal next_limit = position.limit_part() + Ordinal::omega();
      if (next_limit > cfg.length || markers >= cfg.stop_after) break;
      bool consistent = true;
      BasicRound<E> marker;
      marker.index = next_limit;
      marker.kind = RoundKind::limit;
      marker.map_after = detail::union_of(t.seed, t.rounds, t.rounds.size(), &consistent);
      if (!consistent) throw GameError("referee found an inconsistent chain of maps");
      iso.on_limit(next_limit, marker.map_after);
      current = marker.map_after;
      t.rounds.push_back(std::move(marker));
      position = next_limit;
      block_moves = 0;
      ++markers;
      continue;
    }

    std::optional<BasicDemand<E>> demand = ais.demand(current, position);
    if (!demand) {
      t.outcome = PlayOutcome::ais_resigned;
      t.note = "adversary resigned at position " + position.to_string();
      return t;
    }
    if (demand->size() > cfg.mu) throw GameError(detail::describe_demand_error(*demand, cfg.mu));
    for (const E& e : demand->left) {
      if (!arena.contains_left(e)) throw GameError("adversary demanded an element outside the left structure");
    }
    for (const E& e : demand->right) {
      if (!arena.contains_right(e)) throw GameError("adversary demanded an element outside the right structure");
    }

    std::optional<BasicPartialMap<E>> response = iso.respond(current, *demand, position);
    std::string illegal;
    if (!response) {
      illegal = "ISO has no legal move";
    } else if (!current.is_subset_of(*response)) {
      illegal = "ISO response does not extend the current map";
    } else {
      for (const E& e : demand->left) {
        if (!response->in_domain(e)) illegal = "ISO response leaves a left demand uncovered";
      }
      for (const E& e : demand->right) {
        if (!response->in_range(e)) illegal = "ISO response leaves a right demand uncovered";
      }
      if (illegal.empty()) {
        if (auto why = arena.check(*response)) illegal = "ISO response is not a partial isomorphism: " + *why;
      }
    }
    if (!illegal.empty()) {
      t.outcome = PlayOutcome::iso_stuck;
      t.note = illegal + " at position " + position.to_string();
      return t;
    }

    position = position.successor();
    BasicRound<E> round;
    round.index = position;
    round.kind = RoundKind::move;
    round.demand_left = demand->left;
    round.demand_right = demand->right;
    round.map_after = *response;
    t.rounds.push_back(std::move(round));
    current = *response;
    ++block_moves;
  }
  t.outcome = truncated ? PlayOutcome::prefix : PlayOutcome::completed;
  return t;
}

/// Checks every clause of a transcript: seed, demand sizes and coverage,
/// monotonicity, partial isomorphism of every map, and limit unions.
template <GameArena A>
VerifyResult verify_transcript(const A& arena, const BasicGameConfig<typename A::element>& cfg,
                               const BasicTranscript<typename A::element>& t) {
  using E = typename A::element;
  auto fail = [](std::size_t round, std::string why) { return VerifyResult{false, std::move(why), round}; };

  if (!(t.seed == cfg.seed)) return fail(0, "round 0 map differs from the seed");
  if (auto why = arena.check(t.seed)) return fail(0, "seed is not a partial isomorphism: " + *why);

  const BasicPartialMap<E>* previous = &t.seed;
  Ordinal position;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    const BasicRound<E>& r = t.rounds[i];
    const std::size_t n = i + 1;
    if (!(r.index <= cfg.length)) return fail(n, "round index beyond the game length");
    if (r.kind == RoundKind::move) {
      if (r.index != position.successor()) return fail(n, "move index is not the successor position");
      if (r.demand_left.size() + r.demand_right.size() > cfg.mu) return fail(n, "demand exceeds mu");
      for (const E& e : r.demand_left) {
        if (!arena.contains_left(e)) return fail(n, "demand outside the left structure");
        if (!r.map_after.in_domain(e)) return fail(n, "uncovered demand");
      }
      for (const E& e : r.demand_right) {
        if (!arena.contains_right(e)) return fail(n, "demand outside the right structure");
        if (!r.map_after.in_range(e)) return fail(n, "uncovered demand");
      }
    } else {
      if (!r.index.is_limit() || !(position < r.index)) return fail(n, "limit marker at a non-limit index");
      if (!r.demand_left.empty() || !r.demand_right.empty()) return fail(n, "limit marker carries demands");
      bool consistent = true;
      const BasicPartialMap<E> united = detail::union_of(t.seed, t.rounds, i, &consistent);
      if (!consistent || !(united == r.map_after)) return fail(n, "limit map is not the union of its predecessors");
    }
    if (!previous->is_subset_of(r.map_after)) return fail(n, "maps are not increasing");
    if (auto why = arena.check(r.map_after)) return fail(n, "not a partial isomorphism: " + *why);
    previous = &r.map_after;
    position = r.index;
  }
  return {};
}

}  // namespace efeq

#endif  // EFEQ_GAME_HPP
