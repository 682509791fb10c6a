#include <gtest/gtest.h>

#include <random>

#include "efeq/freegroup.hpp"
#include "oracles.hpp"

using namespace efeq;

namespace {

const GroupMode F = GroupMode::free_group;
const GroupMode B = GroupMode::boolean;

GroupElement x(const std::string& name, int e = 1) { return GroupElement::generator(F, Generator(name), e); }
GroupElement bset(std::vector<std::string> names) {
  std::vector<Generator> gens;
  for (auto& n : names) gens.emplace_back(n);
  return GroupElement::from_set(gens);
}

oracle::Word random_word(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
  oracle::Word w;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    w.emplace_back(std::string(1, static_cast<char>('a' + rng() % alphabet)), rng() % 2 ? 1 : -1);
  }
  return w;
}

GroupElement to_element(const oracle::Word& w) {
  std::vector<Letter> letters;
  for (const auto& [n, e] : w) letters.push_back({Generator(n), e});
  return GroupElement::from_letters(letters);
}

oracle::Word to_word(const GroupElement& g) {
  oracle::Word w;
  for (const auto& l : g.letters()) w.emplace_back(l.gen.key(), l.exponent);
  return w;
}

}  // namespace

TEST(FreeGroup, MultiplyExamples) {
  EXPECT_TRUE(gmul(x("a"), x("a", -1)).is_identity());
  EXPECT_EQ(gmul(gmul(x("a"), x("b")), gmul(x("b", -1), x("c"))), gmul(x("a"), x("c")));
  EXPECT_EQ(gmul(bset({"a", "b"}), bset({"b", "c"})), bset({"a", "c"}));
}

TEST(FreeGroup, InverseExamples) {
  EXPECT_EQ(ginv(GroupElement::identity(F)), GroupElement::identity(F));
  EXPECT_EQ(ginv(gmul(x("a"), x("b"))), gmul(x("b", -1), x("a", -1)));
  EXPECT_EQ(ginv(bset({"a"})), bset({"a"}));
}

TEST(FreeGroup, InducedHomExamples) {
  const std::map<Generator, Generator> m{{Generator("b"), Generator("a")}, {Generator("c"), Generator("a")}};
  EXPECT_TRUE(induced_hom(m, GroupElement::identity(F)).is_identity());
  EXPECT_TRUE(induced_hom(m, gmul(x("b"), x("c", -1))).is_identity());
  EXPECT_TRUE(induced_hom(m, bset({"b", "c"})).is_identity());
  EXPECT_THROW(induced_hom(m, x("z")), GroupError);
}

TEST(FreeGroup, TextRoundTrip) {
  const GroupElement w = gmul(x("a"), x("b", -1));
  EXPECT_EQ(w.to_string(), "g<a>*g<b>^-1");
  EXPECT_EQ(GroupElement::parse(w.to_string(), F), w);
  EXPECT_EQ(GroupElement::parse("e", F), GroupElement::identity(F));
  EXPECT_EQ(bset({"b", "a"}).to_string(), "{g<a>,g<b>}");
  EXPECT_EQ(GroupElement::parse("{g<a>,g<b>}", B), bset({"a", "b"}));
  EXPECT_EQ(GroupElement::identity(B).to_string(), "e");
}

TEST(FreeGroup, PairMembershipExamples) {
  const GeneratorMap pi = [](const Generator& g) -> std::optional<Generator> {
    if (g.key() == "t2") return Generator("t1");
    return std::nullopt;
  };
  const GroupElement e = GroupElement::identity(F);
  EXPECT_TRUE(pair_membership_functional(pi, e, e));
  EXPECT_TRUE(pair_membership_functional(pi, x("t1"), x("t2")));
  EXPECT_FALSE(pair_membership_functional(pi, e, x("t2")));
  EXPECT_FALSE(pair_membership_functional(pi, x("t1"), e));
}

TEST(FreeGroup, NonFunctionalPairsAreUndecidableInFreeMode) {
  const std::vector<std::pair<Generator, Generator>> pairs{{Generator("a"), Generator("c")},
                                                           {Generator("b"), Generator("c")}};
  EXPECT_THROW(pair_membership_pairs(pairs, x("a"), x("c")), UndecidableConfiguration);
}

TEST(FreeGroupProperties, ReductionMatchesScanningOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const oracle::Word a = random_word(rng, 8, 3), b = random_word(rng, 8, 3);
    const GroupElement ga = to_element(a), gb = to_element(b);
    EXPECT_EQ(to_word(ga), oracle::reduce_by_scanning(a));
    oracle::Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_EQ(to_word(gmul(ga, gb)), oracle::reduce_by_scanning(ab));
  }
}

TEST(FreeGroupProperties, GroupLaws) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const GroupElement a = to_element(random_word(rng, 6, 3));
    const GroupElement b = to_element(random_word(rng, 6, 3));
    const GroupElement c = to_element(random_word(rng, 6, 3));
    EXPECT_EQ(gmul(gmul(a, b), c), gmul(a, gmul(b, c)));
    EXPECT_TRUE(gmul(a, ginv(a)).is_identity());
    EXPECT_EQ(ginv(gmul(a, b)), gmul(ginv(b), ginv(a)));
    EXPECT_EQ(GroupElement::parse(a.to_string(), F), a);
  }
}

TEST(FreeGroupProperties, InducedHomIsAHomomorphism) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::map<Generator, Generator> m;
    for (char c = 'a'; c <= 'c'; ++c) m[Generator(std::string(1, c))] = Generator(std::string(1, static_cast<char>('a' + rng() % 2)));
    const GroupElement a = to_element(random_word(rng, 6, 3));
    const GroupElement b = to_element(random_word(rng, 6, 3));
    EXPECT_EQ(induced_hom(m, gmul(a, b)), gmul(induced_hom(m, a), induced_hom(m, b)));
  }
}

TEST(FreeGroupProperties, FunctionalMembershipAgreesWithGeneratedPairs) {
  // Elements of the subgroup are exactly (pi(w), w); anything else is outside.
  std::mt19937_64 rng(4);
  const std::map<Generator, Generator> pi{{Generator("a"), Generator("p")}, {Generator("b"), Generator("p")}};
  const GeneratorMap fn = [&](const Generator& g) -> std::optional<Generator> {
    auto it = pi.find(g);
    if (it == pi.end()) return std::nullopt;
    return it->second;
  };
  std::vector<std::pair<Generator, Generator>> pairs;
  for (const auto& [r, l] : pi) pairs.emplace_back(l, r);
  for (int trial = 0; trial < 500; ++trial) {
    const GroupElement w = to_element(random_word(rng, 6, 2));
    const GroupElement img = induced_hom(pi, w);
    EXPECT_TRUE(pair_membership_functional(fn, img, w));
    EXPECT_TRUE(pair_membership_pairs(pairs, img, w));
    const GroupElement off = gmul(img, x("p"));
    EXPECT_FALSE(pair_membership_functional(fn, off, w));
    EXPECT_FALSE(pair_membership_pairs(pairs, off, w));
  }
}

TEST(FreeGroupProperties, BooleanMembershipMatchesClosure) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> names{"a", "b", "c"};
  auto random_subset = [&] {
    std::set<std::string> s;
    for (const auto& n : names) {
      if (rng() % 2) s.insert(n);
    }
    return s;
  };
  auto as_element = [](const std::set<std::string>& s) { return bset({s.begin(), s.end()}); };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<oracle::BoolPair> gens;
    std::vector<std::pair<Generator, Generator>> pairs;
    const std::size_t count = 1 + rng() % 3;
    for (std::size_t i = 0; i < count; ++i) {
      const std::string l = names[rng() % 3], r = names[rng() % 3];
      gens.push_back({{l}, {r}});
      pairs.emplace_back(Generator(l), Generator(r));
    }
    const auto sub = oracle::boolean_subgroup(gens);
    for (int probe = 0; probe < 20; ++probe) {
      const auto l = random_subset(), r = random_subset();
      EXPECT_EQ(pair_membership_pairs(pairs, as_element(l), as_element(r)), sub.count({l, r}) > 0);
    }
  }
}
