#include <gtest/gtest.h>

#include "candidates.hpp"
#include "efeq/campaign.hpp"
#include "efeq/strategy.hpp"

using namespace efeq;

namespace {

ParameterSpec spec_with(std::uint64_t n, std::uint64_t alpha_star, TVariant v = TVariant::uniform) {
  ParameterSpec s;
  s.N = n;
  s.alpha_star = alpha_star;
  s.variant = v;
  return s;
}

std::vector<Ordinal> ords(std::initializer_list<std::uint64_t> xs) {
  std::vector<Ordinal> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

ModelElement elem(Sort s, const std::optional<GeneratorKey>& t = std::nullopt) {
  if (!t) return ModelElement::identity(GroupMode::free_group, std::move(s));
  return {std::move(s), GroupElement::generator(GroupMode::free_group, t->generator())};
}

bool passed(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c.passed();
  }
  ADD_FAILURE() << "no check named " << name;
  return false;
}

}  // namespace

TEST(InitState, Examples) {
  const InitResult r = init_state(spec_with(8, 5), {0, 1}, 3);
  EXPECT_EQ(r.state.gamma_star, 2u);
  const GeneratorKey t{{0, 1}, Ordinal(3), ords({0, 0}), {2, 2}};
  EXPECT_EQ(r.state.t_star, t);
  EXPECT_EQ(r.c1, elem({0, 1}));
  EXPECT_EQ(r.c2, elem({0, 1}, t));

  const InitResult small = init_state(spec_with(8, 5), {0}, 1);
  EXPECT_EQ(small.state.gamma_star, 1u);
  EXPECT_EQ(small.state.g.values, ords({0}));

  const Model m(spec_with(8, 5));
  EXPECT_EQ(m.check_map(r.state.map, std::make_pair(r.c1, r.c2)), std::nullopt);
  EXPECT_EQ(check_state(m, r.state), std::nullopt);
}

TEST(InitState, Errors) {
  EXPECT_THROW(init_state(spec_with(8, 5), {0, 1}, 0), StrategyError);
  EXPECT_THROW(init_state(spec_with(8, 5), {}, 3), StrategyError);
  EXPECT_THROW(init_state(spec_with(8, 5), {9}, 3), StrategyError);
  EXPECT_THROW(init_state(spec_with(8, 3), {0, 1}, 3), StrategyError);
}

TEST(GameLength, SuccessorsLoseOneMove) {
  EXPECT_EQ(symbolic_game_length(3), Ordinal(2));
  EXPECT_EQ(symbolic_game_length(Ordinal::omega()), Ordinal::omega());
  EXPECT_EQ(symbolic_game_length(Ordinal::omega() + 1), Ordinal::omega());
}

TEST(Respond, LeftThenRightExample) {
  const Model m(spec_with(8, 5));
  const InitResult init = init_state(m.spec(), {0, 1}, 3);
  const RespondResult first = respond(m, init.state, {elem({5})}, {});
  ASSERT_FALSE(first.stuck) << first.reason;
  EXPECT_EQ(first.state.g.values, ords({0, 0, 1, 1, 1, 1, 1}));
  EXPECT_EQ(derive_h(first.state.g)[5], 7u);
  const GeneratorKey t5{{5}, Ordinal(3), ords({1}), {7}};
  const ModelElement* img = first.state.map.image_of(elem({5}));
  ASSERT_NE(img, nullptr);
  EXPECT_EQ(*img, elem({5}, t5));

  const GeneratorKey t3{{3}, Ordinal(3), ords({1}), {7}};
  const RespondResult second = respond(m, first.state, {}, {elem({3}, t3)});
  ASSERT_FALSE(second.stuck) << second.reason;
  const ModelElement* pre = second.state.map.preimage_of(elem({3}, t3));
  ASSERT_NE(pre, nullptr);
  EXPECT_EQ(*pre, elem({3}));
  EXPECT_TRUE(r_leq(first.state.g, second.state.g));
  EXPECT_TRUE(first.state.map.is_subset_of(second.state.map));
  EXPECT_EQ(check_state(m, second.state), std::nullopt);
}

TEST(Respond, InvalidDemandIsStuck) {
  const Model m(spec_with(8, 5));
  const InitResult init = init_state(m.spec(), {0, 1}, 3);
  const RespondResult r = respond(m, init.state, {elem({9})}, {});
  EXPECT_TRUE(r.stuck);
}

TEST(ROrder, Examples) {
  const TaggedMonotone a{Ordinal(3), ords({0, 0})};
  const TaggedMonotone b{Ordinal(3), ords({0, 0, 1, 1})};
  const TaggedMonotone flat{Ordinal(3), ords({0, 0, 0})};
  const TaggedMonotone other_tag{Ordinal(4), ords({0, 0, 1})};
  EXPECT_TRUE(r_leq(a, a));
  EXPECT_TRUE(r_leq(a, b));
  EXPECT_FALSE(r_leq(b, a));
  EXPECT_FALSE(r_leq(a, flat));
  EXPECT_FALSE(r_leq(a, other_tag));
}

TEST(LimitUnion, UnitesChainsAndRejectsNonChains) {
  const Model m(spec_with(12, 8));
  const InitResult init = init_state(m.spec(), {0, 1}, 7);
  std::vector<IsoState> chain{init.state};
  for (const Sort& s : {Sort{3}, Sort{2, 6}, Sort{8}}) {
    RespondResult r = respond(m, chain.back(), {elem(s)}, {});
    ASSERT_FALSE(r.stuck) << r.reason;
    chain.push_back(r.state);
  }
  const IsoState u = limit_union(chain);
  for (const IsoState& st : chain) {
    EXPECT_TRUE(r_leq(st.g, u.g));
    EXPECT_TRUE(st.map.is_subset_of(u.map));
  }
  EXPECT_THROW(limit_union({chain[2], chain[1]}), StrategyError);
  EXPECT_THROW(limit_union({}), StrategyError);
}

TEST(Witness, CleanRunPasses) {
  const Model m(spec_with(12, 8));
  WitnessPlan plan;
  plan.alpha = 7;
  plan.chains = 30;
  const ValidationReport r = check_witness(m, plan);
  EXPECT_TRUE(r.all_pass()) << r.to_json().dump(2);
}

TEST(Witness, FaultBreaksFamilyCoherence) {
  const Model m(spec_with(12, 8));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    WitnessPlan plan;
    plan.alpha = 7;
    plan.chains = 5;
    plan.seed = seed;
    plan.fault = true;
    EXPECT_FALSE(passed(check_witness(m, plan), "d_family_coherence")) << "seed " << seed;
  }
}

TEST(Probe, FindsNontrivialFamilyAtSmallN) {
  const Model m(spec_with(6, 3));
  const std::vector<Sort> pool{{0}, {0, 1}, {1, 2}, {0, 1, 2}};
  const auto c = nontrivial_family_probe(m, pool, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_FALSE(c->is_trivial());
  EXPECT_TRUE(m.membership_C(*c));
  EXPECT_FALSE(nontrivial_family_probe(m, {}, 2).has_value());
  EXPECT_FALSE(nontrivial_family_probe(Model(spec_with(6, 1)), pool, 2).has_value());
}

TEST(Obstruction, VerdictsOnSyntheticCandidates) {
  const ParameterSpec s = spec_with(16, 5);
  for (const auto& [name, cand] : candidates::synthetic(16, 10, 5, 42)) {
    const nlohmann::json trace = obstruction_trace(s, cand);
    const bool open = name.rfind("open", 0) == 0;
    EXPECT_EQ(trace.at("verdict"), open ? "NO-CLOSURE-POINT" : "CONTRADICTION") << name;
    if (!open) {
      for (const auto& step : trace.at("chain")) EXPECT_TRUE(step.at("holds").get<bool>());
      EXPECT_TRUE(trace.at("monotone").get<bool>());
    }
    EXPECT_EQ(candidate_to_json(candidate_from_json(candidate_to_json(cand))), candidate_to_json(cand));
  }
}

TEST(Obstruction, RejectsMalformedCandidates) {
  const ParameterSpec s = spec_with(16, 5);
  ObstructionCandidate c = candidates::synthetic(16, 1, 0, 1).front().candidate;
  ObstructionCandidate zero = c;
  zero.n_star = 0;
  EXPECT_THROW(obstruction_trace(s, zero), StrategyError);
  ObstructionCandidate count = c;
  count.n_star += 1;
  EXPECT_THROW(obstruction_trace(s, count), StrategyError);
  ObstructionCandidate low_h = c;
  low_h.letters[0].h.steps = {{0, 0}};
  EXPECT_THROW(obstruction_trace(s, low_h), StrategyError);
  ObstructionCandidate high_g = c;
  high_g.letters[0].alpha = Ordinal(0);
  EXPECT_THROW(obstruction_trace(s, high_g), StrategyError);
  EXPECT_THROW(candidate_from_json(nlohmann::json::parse(R"({"nStar":1})")), StrategyError);
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
  const Model m(spec_with(16, 5));
  CampaignConfig cfg;
  cfg.alphas = {Ordinal(2), Ordinal(4)};
  cfg.games = 10;
  cfg.threads = 1;
  const CampaignResult one = run_campaign(m, cfg);
  cfg.threads = 3;
  const CampaignResult three = run_campaign(m, cfg);
  EXPECT_EQ(one.to_json(m.mode()), three.to_json(m.mode()));
  EXPECT_TRUE(one.all_pass()) << one.to_json(m.mode()).dump(2);
}

TEST(Campaign, FaultyIsoIsCaught) {
  const Model m(spec_with(16, 5));
  GameOptions o;
  o.alpha = 4;
  o.seed = 3;
  o.respond.fault_equal_values = true;
  std::size_t caught = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    o.seed = seed;
    const GameRecord r = run_game(m, o);
    if (!r.passed()) ++caught;
  }
  EXPECT_GT(caught, 0u);
}
