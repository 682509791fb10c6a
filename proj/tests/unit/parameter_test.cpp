#include <gtest/gtest.h>

#include <functional>

#include "efeq/parameter.hpp"
#include "oracles.hpp"

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

GeneratorKey key(Sort u, std::uint64_t tag, std::initializer_list<std::uint64_t> g, std::vector<std::uint64_t> h) {
  return GeneratorKey{std::move(u), Ordinal(tag), ords(g), std::move(h)};
}

TaggedMonotone mono(std::uint64_t tag, std::initializer_list<std::uint64_t> values) { return {Ordinal(tag), ords(values)}; }

// Every non-decreasing sequence of the given length with values below `top`.
void each_monotone(std::size_t len, std::uint64_t top, const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
  std::vector<std::uint64_t> cur;
  std::function<void(std::uint64_t)> go = [&](std::uint64_t lo) {
    if (cur.size() == len) return fn(cur);
    for (std::uint64_t v = lo; v < top; ++v) {
      cur.push_back(v);
      go(v);
      cur.pop_back();
    }
  };
  go(0);
}

}  // namespace

TEST(JMembership, Examples) {
  const ParameterSpec s = spec_with(8, 3);
  EXPECT_TRUE(j_membership(s, key({1, 3}, 2, {0, 1}, {3, 4})));
  EXPECT_FALSE(j_membership(s, key({2}, 1, {0}, {2})));
  EXPECT_FALSE(j_membership(s, key({1, 3}, 2, {0, 0}, {3, 4})));
  EXPECT_FALSE(j_membership(s, key({1}, 3, {0}, {2})));
  EXPECT_THROW(j_membership(s, key({9}, 2, {0}, {10})), ParameterError);
}

TEST(TMembership, Examples) {
  const GeneratorKey t1 = key({1}, 2, {0}, {2});
  const GeneratorKey t2 = key({1, 5}, 2, {0, 1}, {2, 6});
  GeneratorKey t2_tag3 = t2;
  t2_tag3.tag = 3;
  for (TVariant v : {TVariant::uniform, TVariant::zero_free}) {
    const ParameterSpec s = spec_with(8, 5, v);
    EXPECT_TRUE(t_membership(s, t1, t1));
    EXPECT_TRUE(t_membership(s, t1, t2));
    EXPECT_FALSE(t_membership(s, t2, t1));
  }
  EXPECT_FALSE(t_membership(spec_with(8, 5), t1, t2_tag3));
  EXPECT_TRUE(t_membership(spec_with(8, 5, TVariant::zero_free), t1, t2_tag3));
  EXPECT_THROW(t_membership(spec_with(8, 5), key({2}, 1, {0}, {2}), t1), ParameterError);
}

TEST(DeriveH, Examples) {
  EXPECT_TRUE(derive_h(mono(4, {})).empty());
  EXPECT_EQ(derive_h(mono(4, {0, 0, 1})), (std::vector<std::uint64_t>{2, 2, 3}));
  EXPECT_EQ(derive_h(mono(4, {0, 1, 2})), (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(DeriveHProperties, ExhaustiveAgainstMinFormula) {
  for (std::size_t len = 0; len <= 5; ++len) {
    for (std::uint64_t top = 1; top <= 4; ++top) {
      each_monotone(len, top, [&](const std::vector<std::uint64_t>& g) {
        std::vector<Ordinal> values(g.begin(), g.end());
        const auto h = derive_h({Ordinal(4), values});
        ASSERT_EQ(h, oracle::min_formula_h(g));
        for (std::size_t i = 0; i < h.size(); ++i) {
          EXPECT_GT(h[i], i);
          if (i > 0) EXPECT_LE(h[i - 1], h[i]);
          for (std::size_t j = 0; j < i; ++j) {
            if (g[i] == g[j]) EXPECT_EQ(h[i], h[j]);
          }
        }
      });
    }
  }
}

TEST(IndexSet, Examples) {
  const ParameterSpec s = spec_with(8, 5);
  const TaggedMonotone g = mono(3, {0, 0, 1, 1, 1, 1, 1});
  const std::vector<Sort> pool{{5}};
  EXPECT_EQ(index_set(s, g, pool), pool);
  EXPECT_EQ(key_for(s, g, Sort{5}), key({5}, 3, {1}, {7}));
  EXPECT_TRUE(index_set(s, mono(3, {0, 0}), pool).empty());
  EXPECT_TRUE(index_set(s, g, {Sort{}}).empty());

  const Family f = family_of(s, g, pool);
  ASSERT_TRUE(f.contains(Sort{5}));
  EXPECT_EQ(f.at(Sort{5}), GroupElement::generator(GroupMode::free_group, key({5}, 3, {1}, {7}).generator()));
  EXPECT_TRUE(family_of(s, mono(3, {0, 0}), pool).entries.empty());
}

TEST(Project, Examples) {
  const GeneratorKey t2 = key({1, 5}, 2, {0, 1}, {2, 6});
  EXPECT_EQ(project({1, 5}, t2), t2);
  EXPECT_EQ(project({1}, t2), key({1}, 2, {0}, {2}));
  const GeneratorKey t3 = key({1, 3, 5}, 2, {0, 1, 1}, {2, 6, 6});
  EXPECT_EQ(project({1}, project({1, 5}, t3)), project({1}, t3));
  EXPECT_THROW(project({2}, t2), ParameterError);
}

TEST(GeneratorKeyText, RoundTrip) {
  const GeneratorKey t = key({1, 5}, 2, {0, 1}, {2, 6});
  EXPECT_EQ(GeneratorKey::parse(t.serialize()), t);
  EXPECT_THROW(GeneratorKey::parse("u=[1];a=2"), ParameterError);
}

TEST(SpecJson, RoundTripAndValidation) {
  ParameterSpec s = spec_with(8, 3);
  EXPECT_EQ(spec_to_json(s).dump(), R"({"N":8,"alphaStar":"3","hCeiling":32,"mode":"free","variant":"uniform"})");
  EXPECT_EQ(spec_to_json(spec_from_json(spec_to_json(s))), spec_to_json(s));
  s.N = 1;
  EXPECT_THROW(s.validate(), ParameterError);
  EXPECT_THROW(spec_from_json(nlohmann::json::parse(R"({"N":"x"})")), ParameterError);
}

TEST(Validate, CanonicalSpecPasses) {
  const ValidationReport r = validate_full_parameter(spec_with(8, 3));
  EXPECT_TRUE(r.all_pass()) << r.to_json().dump(2);
}

TEST(Validate, DroppingHContainmentIsReported) {
  ParameterSpec s = spec_with(8, 3);
  s.t_options.require_h_containment = false;
  const ValidationReport r = validate_full_parameter(s);
  EXPECT_FALSE(r.all_pass());
}

TEST(Validate, AlphaStarOneIsTrivial) {
  EXPECT_TRUE(validate_full_parameter(spec_with(8, 1)).all_pass());
}

TEST(ParameterProperties, TMembershipIsAPartialOrder) {
  const ParameterSpec s = spec_with(5, 3);
  std::vector<GeneratorKey> keys;
  for (const Sort& u : enumerate_sorts(5, 2)) {
    for (auto& k : enumerate_keys(s, u, 2, 1)) keys.push_back(k);
  }
  ASSERT_GT(keys.size(), 20u);
  for (const auto& a : keys) {
    EXPECT_TRUE(t_membership(s, a, a));
    for (const auto& b : keys) {
      if (!(a == b) && t_membership(s, a, b)) EXPECT_FALSE(t_membership(s, b, a));
      if (!t_membership(s, a, b)) continue;
      for (const auto& c : keys) {
        if (t_membership(s, b, c)) EXPECT_TRUE(t_membership(s, a, c));
      }
    }
  }
}

// A key on u1 lifts to u2 unless g is already at its top value at max(u1)
// and u2 has a point at or beyond h(max(u1)): that point would need a larger g.
bool liftable(const GeneratorKey& t, const Sort& u2) {
  const std::uint64_t top = t.u.back();
  const bool at_top = t.g.back().successor() == t.tag;
  for (std::uint64_t gamma : u2) {
    if (gamma > top && gamma >= t.h.back() && at_top) return false;
  }
  return true;
}

TEST(ParameterProperties, ProjectionImageIsExactlyTheLiftableKeys) {
  const ParameterSpec s = spec_with(5, 3);
  std::size_t lifted = 0, stuck = 0;
  for (const Sort& u2 : enumerate_sorts(5, 3)) {
    const auto big = enumerate_keys(s, u2, 2, 3);
    for (const Sort& u1 : enumerate_sorts(5, 3)) {
      if (u1.empty() || u1 == u2 || !is_subsort(u1, u2)) continue;
      std::set<GeneratorKey> hit;
      for (const auto& t : big) {
        const GeneratorKey p = project(u1, t);
        EXPECT_TRUE(j_membership(s, p));
        hit.insert(p);
      }
      for (const auto& t : enumerate_keys(s, u1, 2, 1)) {
        EXPECT_EQ(hit.count(t) > 0, liftable(t, u2)) << t.serialize() << " into " << sort_to_string(u2);
        ++(liftable(t, u2) ? lifted : stuck);
      }
    }
  }
  EXPECT_GT(lifted, 0u);
  EXPECT_GT(stuck, 0u);
}

TEST(ParameterProperties, PrefixRestrictsCoherently) {
  const ParameterSpec s = spec_with(6, 5);
  std::vector<Sort> pool;
  for (const Sort& u : enumerate_sorts(6, 2)) {
    if (!u.empty()) pool.push_back(u);
  }
  each_monotone(6, 4, [&](const std::vector<std::uint64_t>& values) {
    const TaggedMonotone g{Ordinal(4), std::vector<Ordinal>(values.begin(), values.end())};
    const auto h = derive_h(g);
    const auto ig = index_set(s, g, pool);
    const Family fg = family_of(s, g, pool);
    for (std::uint64_t g1 = 1; g1 < g.domain(); ++g1) {
      bool strict = true;
      for (std::uint64_t i = 0; i < g1; ++i) strict = strict && values[i] < values[g1];
      if (!strict) continue;
      const TaggedMonotone p = g.prefix(g1);
      const auto hp = derive_h(p);
      for (std::size_t i = 0; i < hp.size(); ++i) EXPECT_EQ(hp[i], h[i]);
      const auto ip = index_set(s, p, pool);
      for (const Sort& u : ip) EXPECT_NE(std::find(ig.begin(), ig.end(), u), ig.end());
      EXPECT_EQ(fg.restricted_to(ip), family_of(s, p, pool));
    }
  });
}
