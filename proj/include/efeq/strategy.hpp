#ifndef EFEQ_STRATEGY_HPP
#define EFEQ_STRATEGY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efeq/game.hpp"
#include "efeq/model.hpp"
#include "efeq/parameter.hpp"

namespace efeq {

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position of the canonical ISO strategy.
struct IsoState {
  TaggedMonotone g;
  Ordinal round;
  ModelMap map;
  std::uint64_t gamma_star = 0;
  Sort s_star;
  GeneratorKey t_star;
};

struct InitResult {
  IsoState state;
  ModelElement c1;
  ModelElement c2;
};

/// g0 = 0 on gamma* = max(s*) + 1 with tag alpha, c1 = (s*, e), c2 = (s*, x_{t*}).
/// Throws StrategyError for alpha = 0 or an empty or out-of-range s*.
InitResult init_state(const ParameterSpec& spec, const Sort& s_star, const Ordinal& alpha);

/// Moves played by the canonical strategy in the game of length alpha: the
/// values of g stay below the tag, so a finite alpha allows alpha - 1 moves.
Ordinal symbolic_game_length(const Ordinal& alpha);

struct RespondOptions {
  /// Fault injection: new positions repeat the old maximum instead of exceeding it.
  bool fault_equal_values = false;
};

struct RespondResult {
  IsoState state;
  bool stuck = false;
  std::string reason;
};

/// One move: extends g past the old domain and every demanded sort, gives the
/// new positions the value max + 1, and extends the map by the translation of
/// the new family.
RespondResult respond(const Model& model, const IsoState& st, const std::vector<ModelElement>& demand_left,
                      const std::vector<ModelElement>& demand_right, const RespondOptions& options = {});

/// g1 <= g2: g1 is a prefix of g2 with the same tag and every later value exceeds max(g1).
bool r_leq(const TaggedMonotone& g1, const TaggedMonotone& g2);

/// Upper bound of an increasing chain. Throws StrategyError when the chain is not increasing.
IsoState limit_union(const std::vector<IsoState>& chain);

/// First broken invariant of `st` (anchor, zero prefix, map = translation by the family), or nullopt.
std::optional<std::string> check_state(const Model& model, const IsoState& st);

/// Sorts currently in play: those of the map plus s*.
std::vector<Sort> sorts_of(const IsoState& st);

/// The strategy as a game player. Keeps the chain of states it has produced.
class CanonicalIsoPlayer : public IsoPlayer<ModelElement> {
 public:
  CanonicalIsoPlayer(const Model& model, IsoState start, RespondOptions options = {})
      : model_(model), options_(options), chain_{std::move(start)} {}

  std::optional<ModelMap> respond(const ModelMap& current, const BasicDemand<ModelElement>& demand,
                                  const Ordinal& position) override;
  void on_limit(const Ordinal& index, const ModelMap& united) override;

  const IsoState& state() const { return chain_.back(); }
  const std::vector<IsoState>& chain() const { return chain_; }
  const std::string& last_failure() const { return failure_; }

 private:
  const Model& model_;
  RespondOptions options_;
  std::vector<IsoState> chain_;
  std::string failure_;
};

struct WitnessPlan {
  Ordinal alpha = 3;
  std::uint64_t mu = 4;
  std::size_t chains = 200;
  std::size_t chain_length = 5;
  std::uint64_t seed = 1;
  Sort s_star = {0, 1};
  /// Runs respond with equal new values; clause (d) should then fail.
  bool fault = false;
  std::size_t max_sort_size = 3;
};

/// Sampled verification of conditions (a)-(f) of the witness system.
ValidationReport check_witness(const Model& model, const WitnessPlan& plan);

/// A nontrivial family over `pool` with entries of length at most
/// `word_bound`, if one exists within the bounds. Entries are projections of
/// a single generator on the union of the pool.
std::optional<Family> nontrivial_family_probe(const Model& model, const std::vector<Sort>& pool,
                                              std::size_t word_bound);

/// Non-decreasing step function on [0, N): value `steps[k].second` from
/// `steps[k].first` up to the next start.
struct StepFunction {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> steps;

  std::uint64_t operator()(std::uint64_t x) const;
  /// Throws StrategyError unless starts increase from 0, stay below n, and values do not decrease.
  void validate(std::uint64_t n, const std::string& what) const;
};

struct ObstructionLetter {
  StepFunction g;
  StepFunction h;
  Ordinal alpha;
  int sign = 1;
};

struct ObstructionCandidate {
  std::uint64_t n_star = 1;
  Sort u_star;
  std::vector<ObstructionLetter> letters;
};

nlohmann::json candidate_to_json(const ObstructionCandidate& c);
ObstructionCandidate candidate_from_json(const nlohmann::json& j);

/// Word of the candidate on sort u: the product of x_{(u, alpha_l, g_l|u, h_l|u)}^{sign_l}.
GroupElement candidate_word(const ParameterSpec& spec, const ObstructionCandidate& c, const Sort& u);

/// Replays the obstruction argument on the candidate. The result has
/// "verdict" CONTRADICTION or NO-CLOSURE-POINT, the witnesses, the closure
/// point and the inequality chain. Throws StrategyError on malformed input.
nlohmann::json obstruction_trace(const ParameterSpec& spec, const ObstructionCandidate& cand);

}  // namespace efeq

#endif  // EFEQ_STRATEGY_HPP
