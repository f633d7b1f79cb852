#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace fistab;
using fistab::testing::workspace;

namespace {

const std::vector<std::string> kFixtures = {"points",       "pairs",  "triples", "ordered-pairs", "half-triples",
                                            "points-and-pairs", "crush2", "crush3",  "empty"};

std::vector<int> random_injection(std::mt19937& rng, int n, int p) {
  std::vector<int> img(static_cast<std::size_t>(p));
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  img.resize(static_cast<std::size_t>(n));
  return img;
}

}  // namespace

TEST(FISet, SizesOfInducedFixtures) {
  for (int n = 0; n <= 8; ++n) {
    EXPECT_EQ(Integer(static_cast<unsigned long>(workspace().fiset("pairs")->evaluate(n)->size())), binomial(n, 2));
    EXPECT_EQ(Integer(static_cast<unsigned long>(workspace().fiset("triples")->evaluate(n)->size())), binomial(n, 3));
    EXPECT_EQ(workspace().fiset("ordered-pairs")->evaluate(n)->size(), static_cast<std::size_t>(n * std::max(n - 1, 0)));
    // three cosets per 3-subset, plus the points
    EXPECT_EQ(Integer(static_cast<unsigned long>(workspace().fiset("half-triples")->evaluate(n)->size())), binomial(n, 3) * 3 + n);
    EXPECT_EQ(workspace().fiset("empty")->evaluate(n)->size(), 0u);
  }
}

TEST(FISet, CrushQuotientCollapsesAtItsDegree) {
  auto c2 = workspace().fiset("crush2");
  auto c3 = workspace().fiset("crush3");
  EXPECT_EQ(c2->evaluate(1)->size(), 1u);
  EXPECT_EQ(c3->evaluate(2)->size(), 2u);
  for (int n = 3; n <= 7; ++n) {
    EXPECT_EQ(c2->evaluate(n)->size(), 1u);
    EXPECT_EQ(c3->evaluate(n)->size(), 1u);
    EXPECT_TRUE(c3->evaluate(n)->is_quotient());
  }
}

TEST(FISet, ElementLiteralsRoundTrip) {
  auto X = workspace().fiset("half-triples");
  auto e = X->make_element("h", {2, 4, 5}, Permutation::parse_cycles("(1 3)", 3));
  const std::string text = X->describe(e);
  EXPECT_EQ(Workspace::element(*X, Workspace::literal(*X, e)), e);
  EXPECT_NO_THROW(X->validate(e, 5));
  EXPECT_THROW(X->validate(e, 4), InvalidArgument);
  EXPECT_THROW(X->make_element("h", {1, 1, 2}, Permutation::identity(3)), InvalidArgument);
  EXPECT_THROW(X->orbit_index("nope"), InvalidArgument);
  EXPECT_FALSE(text.empty());
}

TEST(FISet, TransitionsAreFunctorial) {
  std::mt19937 rng(11);
  for (const auto& name : kFixtures) {
    auto X = workspace().fiset(name);
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<int> dn(0, 4);
      const int n = dn(rng);
      const int p = n + dn(rng) % 3;
      const int q = p + dn(rng) % 3;
      auto level = X->evaluate(n);
      if (level->size() == 0) continue;
      auto x = level->element(std::uniform_int_distribution<std::size_t>(0, level->size() - 1)(rng));
      auto f = random_injection(rng, n, p);
      auto g = random_injection(rng, p, q);
      std::vector<int> gf(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) gf[i] = g[static_cast<std::size_t>(f[i] - 1)];
      EXPECT_EQ(X->transition(p, X->transition(n, x, f, p), g, q), X->transition(n, x, gf, q)) << name;
    }
    // the identity map acts trivially
    auto level = X->evaluate(4);
    for (std::size_t c = 0; c < level->size(); ++c) EXPECT_EQ(X->transition(4, level->element(c), {1, 2, 3, 4}, 4), level->element(c));
  }
}

TEST(FISet, SymmetricGroupActionIsAnAction) {
  std::mt19937 rng(5);
  for (const auto& name : kFixtures) {
    auto X = workspace().fiset(name);
    auto level = X->evaluate(5);
    auto perms = all_permutations(5);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      const auto& a = perms[pick(rng)];
      const auto& b = perms[pick(rng)];
      for (std::size_t c = 0; c < level->size(); ++c) EXPECT_EQ(level->apply(compose(a, b), c), level->apply(a, level->apply(b, c))) << name;
    }
  }
}

TEST(FISet, TransitionsCommuteWithTheAction) {
  // σ ∈ S_n acting before ι equals σ ⊕ id acting after it
  for (const auto& name : kFixtures) {
    auto X = workspace().fiset(name);
    auto lo = X->evaluate(4);
    auto hi = X->evaluate(6);
    for (const auto& s : all_permutations(4)) {
      std::vector<int> ext(s.images().begin(), s.images().end());
      ext.push_back(4);
      ext.push_back(5);
      const Permutation big(std::move(ext));
      for (std::size_t c = 0; c < lo->size(); ++c) {
        auto up = hi->index_of(X->include(4, lo->element(c), 6));
        auto lhs = hi->index_of(X->include(4, lo->element(lo->apply(s, c)), 6));
        EXPECT_EQ(lhs, hi->apply(big, up)) << name;
      }
    }
  }
}

TEST(FISet, BurnsideCountsOrbits) {
  for (const auto& name : kFixtures) {
    auto X = workspace().fiset(name);
    for (int n = 0; n <= 5; ++n) {
      Integer total = 0;
      for (const auto& g : all_permutations(n)) total += static_cast<unsigned long>(fixed_points(*X, n, g));
      EXPECT_EQ(total, factorial(n) * static_cast<unsigned long>(orbits(*X, n).size())) << name << " n=" << n;
    }
  }
}

TEST(FISet, FixedPointsOfATransposition) {
  // {1,2} and {3,4} are the 2-subsets of [4] fixed by (1 2)
  EXPECT_EQ(fixed_points(*workspace().fiset("pairs"), 4, Permutation::parse_cycles("(1 2)", 4)), 2u);
  EXPECT_EQ(fixed_points(*workspace().fiset("ordered-pairs"), 4, Permutation::parse_cycles("(1 2)", 4)), 2u);
}

TEST(FISet, OrbitStabilizerForEveryOrbit) {
  for (const auto& name : kFixtures) {
    auto X = workspace().fiset(name);
    for (int n = 1; n <= 6; ++n) {
      auto level = X->evaluate(n);
      for (const auto& o : orbits(*level)) {
        auto stab = stabilizer_in_symmetric_group(level, o.representative);
        EXPECT_EQ(Integer(static_cast<unsigned long>(stab.order() * o.members.size())), factorial(n)) << name;
        for (const auto& g : stab.generators()) EXPECT_EQ(level->apply(g, o.representative), o.representative);
      }
    }
  }
}

TEST(FISet, StabilizerOfStandardSubsetIsYoungSubgroup) {
  auto level = workspace().fiset("triples")->evaluate(6);
  auto stab = stabilizer_in_symmetric_group(level, level->index_of({0, {1, 2, 3}, 0}));
  EXPECT_EQ(stab.order(), 36u);
  EXPECT_TRUE(stab.contains(Permutation::parse_cycles("(1 2 3)(4 5)", 6)));
  EXPECT_FALSE(stab.contains(Permutation::parse_cycles("(3 4)", 6)));
}

TEST(StableRange, StartsForFixtures) {
  const std::map<std::string, int> expected = {{"points", 1},        {"pairs", 2},  {"triples", 3}, {"ordered-pairs", 2},
                                               {"half-triples", 3},  {"points-and-pairs", 2}, {"crush2", 1},
                                               {"crush3", 3},        {"empty", 0}};
  for (const auto& [name, start] : expected) {
    auto r = detect_stable_range(*workspace().fiset(name), 10);
    ASSERT_TRUE(r.start.has_value()) << name;
    EXPECT_EQ(*r.start, start) << name;
    for (const auto& s : r.stats)
      if (s.n >= start && s.n < 10) {
        EXPECT_TRUE(s.injective_to_next) << name << " n=" << s.n;
        EXPECT_TRUE(s.orbit_map_bijective) << name << " n=" << s.n;
      }
  }
  EXPECT_FALSE(detect_stable_range(*workspace().fiset("crush3"), 4).start.has_value());
}

TEST(Decomposition, FixturesRecoverTheirStabilizers) {
  struct Want {
    std::string name;
    std::vector<std::pair<int, std::size_t>> terms;  // (m, |H|)
  };
  const std::vector<Want> cases = {{"pairs", {{2, 2}}},          {"triples", {{3, 6}}},
                                   {"ordered-pairs", {{2, 1}}},  {"half-triples", {{3, 2}, {1, 1}}},
                                   {"crush3", {{0, 1}}},         {"empty", {}}};
  for (const auto& c : cases) {
    auto d = theorem_a_decomposition(*workspace().fiset(c.name), 10);
    ASSERT_TRUE(d.certified) << c.name << ": " << d.note;
    std::vector<std::pair<int, std::size_t>> got;
    for (const auto& t : d.terms) got.emplace_back(t.m, t.H.order());
    std::sort(got.begin(), got.end());
    auto want = c.terms;
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << c.name;
    EXPECT_LE(d.confirmed_at, 10);
  }
}

TEST(Decomposition, UndecidedWithoutEnoughDegrees) {
  auto d = theorem_a_decomposition(*workspace().fiset("crush3"), 4);
  EXPECT_FALSE(d.certified);
  EXPECT_FALSE(d.note.empty());
}

TEST(Multiplicity, PieriAgreesWithCharacterInnerProducts) {
  for (const std::string name : {"points", "pairs", "triples", "ordered-pairs", "half-triples", "points-and-pairs"}) {
    auto X = workspace().fiset(name);
    auto range = detect_stable_range(*X, 10);
    for (const auto& lambda : partitions_up_to(3)) {
      const Integer stable = pieri_multiplicity(*X, lambda);
      for (int n = multiplicity_stable_from(*X, lambda, *range.start); n <= 10; ++n)
        EXPECT_EQ(per_n_multiplicity(*X, n, lambda), stable) << name << " " << lambda.to_string() << " n=" << n;
    }
  }
}

TEST(Multiplicity, DecompositionAccountsForEveryElement) {
  for (const auto& name : kFixtures) {
    auto X = workspace().fiset(name);
    for (int n = 1; n <= 7; ++n) {
      auto chi = permutation_character(*X, n);
      Integer dim = 0;
      for (const auto& mu : partitions_of(n)) {
        std::vector<int> rest(mu.parts().begin() + 1, mu.parts().end());
        dim += per_n_multiplicity(*X, n, Partition(rest), chi) * hook_dimension(mu);
      }
      EXPECT_EQ(dim, Integer(static_cast<unsigned long>(X->evaluate(n)->size()))) << name << " n=" << n;
    }
  }
}

TEST(Multiplicity, KnownStableValues) {
  auto P1 = workspace().fiset("points");
  EXPECT_EQ(stable_multiplicity(*P1, Partition{}), 1);
  EXPECT_EQ(stable_multiplicity(*P1, Partition{1}), 1);
  EXPECT_EQ(stable_multiplicity(*P1, Partition{2}), 0);
  auto P2 = workspace().fiset("pairs");
  EXPECT_EQ(stable_multiplicity(*P2, Partition{2}), 1);
  EXPECT_EQ(stable_multiplicity(*P2, Partition({1, 1})), 0);
  auto O2 = workspace().fiset("ordered-pairs");
  EXPECT_EQ(stable_multiplicity(*O2, Partition{1}), 2);
  EXPECT_EQ(stable_multiplicity(*O2, Partition({1, 1})), 1);
  EXPECT_EQ(stable_multiplicity(*workspace().fiset("crush3"), Partition{}), 1);
  EXPECT_EQ(stable_multiplicity(*workspace().fiset("crush3"), Partition{1}), 0);
}
