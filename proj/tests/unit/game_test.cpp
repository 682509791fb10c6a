#include <gtest/gtest.h>

#include <random>

#include "efeq/game.hpp"
#include "efeq/solver.hpp"
#include "oracles.hpp"

using namespace efeq;

namespace {

GameConfig config(int k, std::uint64_t mu, PartialMap seed = {}) {
  GameConfig cfg;
  cfg.length = Ordinal(static_cast<std::uint64_t>(k));
  cfg.mu = mu;
  cfg.seed = std::move(seed);
  return cfg;
}

class RandomAis : public AisPlayer<ElementId> {
 public:
  RandomAis(int left, int right, std::uint64_t seed) : left_(left), right_(right), rng_(seed) {}
  std::optional<Demand> demand(const PartialMap&, const Ordinal&) override {
    Demand d;
    if (rng_() % 2) {
      d.left.push_back(static_cast<ElementId>(rng_() % left_));
    } else {
      d.right.push_back(static_cast<ElementId>(rng_() % right_));
    }
    return d;
  }

 private:
  int left_, right_;
  std::mt19937_64 rng_;
};

class FixedAis : public AisPlayer<ElementId> {
 public:
  explicit FixedAis(Demand d) : d_(std::move(d)) {}
  std::optional<Demand> demand(const PartialMap&, const Ordinal&) override { return d_; }

 private:
  Demand d_;
};

class IdentityIso : public IsoPlayer<ElementId> {
 public:
  std::optional<PartialMap> respond(const PartialMap& current, const Demand& d, const Ordinal&) override {
    PartialMap out = current;
    for (ElementId e : d.left) out.try_insert(e, e);
    for (ElementId e : d.right) out.try_insert(e, e);
    return out;
  }
};

}  // namespace

TEST(Solver, IdenticalStructuresIsoWins) {
  const FiniteStructure a = linear_order(4);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(solve(a, a, config(k, 1, PartialMap{{0, 0}})).status, SolveStatus::iso_wins);
  }
}

TEST(Solver, LinearOrderThreshold) {
  const FiniteStructure l3 = linear_order(3), l4 = linear_order(4);
  EXPECT_EQ(solve(l3, l4, config(2, 1)).status, SolveStatus::iso_wins);
  EXPECT_EQ(solve(l3, l4, config(3, 1)).status, SolveStatus::ais_wins);
  EXPECT_EQ(oracle::iso_wins(l3, l4, 2, 1), true);
  EXPECT_EQ(oracle::iso_wins(l3, l4, 3, 1), false);
}

TEST(Solver, BudgetAndBadSeed) {
  const FiniteStructure l7 = linear_order(7), l8 = linear_order(8);
  SolveOptions tiny;
  tiny.node_budget = 3;
  EXPECT_EQ(solve(l7, l8, config(3, 1), tiny).status, SolveStatus::budget_exceeded);
  EXPECT_THROW(solve(l7, l8, config(2, 1, PartialMap{{0, 1}, {1, 0}})), GameError);
}

TEST(Solver, CanonicalKeysAgree) {
  std::mt19937_64 rng(5);
  SolveOptions canon;
  canon.canonical_keys = true;
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 3), false, false);
    const auto b = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 3), false, false);
    const GameConfig cfg = config(2, 1 + rng() % 2);
    EXPECT_EQ(solve(a, b, cfg).status, solve(a, b, cfg, canon).status);
  }
}

TEST(SolverProperties, MatchesNaiveRecursionOnSmallPairs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 3), trial % 2 == 0, false);
    const auto b = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 3), trial % 2 == 0, false);
    const int k = 1 + static_cast<int>(rng() % 3);
    const std::uint64_t mu = 1 + rng() % 2;
    const bool want = oracle::iso_wins(a, b, k, static_cast<int>(mu));
    EXPECT_EQ(solve(a, b, config(k, mu)).status == SolveStatus::iso_wins, want) << "trial " << trial;
  }
}

TEST(Play, SolverStrategyIsLegalAgainstRandomDemands) {
  const FiniteStructure l3 = linear_order(3), l4 = linear_order(4);
  const GameConfig cfg = config(2, 1);
  const SolveResult solved = solve(l3, l4, cfg);
  ASSERT_EQ(solved.status, SolveStatus::iso_wins);
  FiniteArena arena(l3, l4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    StrategyIsoPlayer iso(solved.strategy, 2);
    RandomAis ais(3, 4, seed);
    const Transcript t = play(arena, cfg, iso, ais);
    EXPECT_EQ(t.outcome, PlayOutcome::completed);
    EXPECT_TRUE(verify_transcript(arena, cfg, t));
  }
}

TEST(Play, RepeatedDemandLeavesMapUnchanged) {
  const FiniteStructure a = linear_order(3);
  FiniteArena arena(a, a);
  const GameConfig cfg = config(3, 2);
  IdentityIso iso;
  FixedAis ais(Demand{{1, 1}, {}});
  const Transcript t = play(arena, cfg, iso, ais);
  ASSERT_EQ(t.rounds.size(), 3u);
  for (const auto& r : t.rounds) EXPECT_EQ(r.map_after, (PartialMap{{1, 1}}));
  EXPECT_TRUE(verify_transcript(arena, cfg, t));
}

TEST(Play, RefusingIsoLosesInRoundOne) {
  const FiniteStructure a = linear_order(3);
  FiniteArena arena(a, a);
  const GameConfig cfg = config(3, 1);
  RefusingIsoPlayer iso;
  FixedAis ais(Demand{{0}, {}});
  const Transcript t = play(arena, cfg, iso, ais);
  EXPECT_EQ(t.outcome, PlayOutcome::iso_stuck);
  EXPECT_TRUE(t.rounds.empty());
}

TEST(Play, OversizedDemandIsAnAdversaryError) {
  const FiniteStructure a = linear_order(3);
  FiniteArena arena(a, a);
  IdentityIso iso;
  FixedAis ais(Demand{{0, 1}, {}});
  EXPECT_THROW(play(arena, config(1, 1), iso, ais), GameError);
}

TEST(Verify, Examples) {
  const FiniteStructure a = linear_order(3);
  FiniteArena arena(a, a);
  const GameConfig cfg = config(2, 1);
  EXPECT_TRUE(verify_transcript(arena, cfg, Transcript{}));

  Transcript bad;
  BasicRound<ElementId> r;
  r.index = 1;
  r.demand_left = {2};
  r.map_after = PartialMap{{0, 0}};
  bad.rounds.push_back(r);
  const VerifyResult v = verify_transcript(arena, cfg, bad);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failure, "uncovered demand");
  EXPECT_EQ(v.round, 1u);
}

TEST(Verify, SolverWinOnSevenVersusEight) {
  const FiniteStructure l7 = linear_order(7), l8 = linear_order(8);
  const GameConfig cfg = config(3, 1);
  const SolveResult solved = solve(l7, l8, cfg);
  ASSERT_EQ(solved.status, SolveStatus::iso_wins);
  FiniteArena arena(l7, l8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    StrategyIsoPlayer iso(solved.strategy, 3);
    RandomAis ais(7, 8, seed);
    const Transcript t = play(arena, cfg, iso, ais);
    EXPECT_TRUE(verify_transcript(arena, cfg, t));
  }
}
