#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace fistab;
using fistab::testing::workspace;

namespace {

const std::vector<std::string> kRelations = {"distinct-points", "kneser2",          "kneser3",          "johnson2",
                                             "triples-meet1",   "triples-meet2",    "ordered-disjoint", "containment",
                                             "incidence"};

std::size_t meet(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

}  // namespace

TEST(Relation, KneserMatchesDisjointnessOracle) {
  auto R = workspace().relation("kneser2");
  for (int n = 0; n <= 8; ++n) {
    auto M = materialize(R, n);
    auto L = R.source->evaluate(n);
    for (std::size_t x = 0; x < L->size(); ++x)
      for (std::size_t y = 0; y < L->size(); ++y)
        EXPECT_EQ(M.contains(x, y), meet(L->element(x).support, L->element(y).support) == 0);
  }
  // Petersen graph: 10 vertices, 15 edges
  EXPECT_EQ(materialize(R, 5).nonzeros(), 30u);
}

TEST(Relation, IntersectionSizeFamilies) {
  const std::vector<std::pair<std::string, std::size_t>> cases = {{"johnson2", 1}, {"triples-meet1", 1}, {"triples-meet2", 2}};
  for (const auto& [name, size] : cases) {
    auto R = workspace().relation(name);
    for (int n = 0; n <= 8; ++n) {
      auto M = materialize(R, n);
      auto L = R.source->evaluate(n);
      for (std::size_t x = 0; x < L->size(); ++x)
        for (std::size_t y = 0; y < L->size(); ++y)
          EXPECT_EQ(M.contains(x, y), meet(L->element(x).support, L->element(y).support) == size) << name;
    }
  }
}

TEST(Relation, ContainmentMatrix) {
  auto R = workspace().relation("containment");
  auto A = linearize(R, 5);
  ASSERT_EQ(A.rows(), 10u);
  ASSERT_EQ(A.cols(), 5u);
  auto LX = R.source->evaluate(5);
  auto LY = R.target->evaluate(5);
  for (std::size_t y = 0; y < 10; ++y)
    for (std::size_t x = 0; x < 5; ++x) {
      const auto& s = LY->element(y).support;
      const int pt = LX->element(x).support[0];
      EXPECT_EQ(A(y, x), std::count(s.begin(), s.end(), pt));
    }
}

TEST(Relation, ClosedUnderTheSymmetricGroup) {
  for (const auto& name : kRelations) {
    auto R = workspace().relation(name);
    for (int n = 2; n <= 6; ++n) {
      auto M = materialize(R, n);
      auto LX = R.source->evaluate(n);
      auto LY = R.target->evaluate(n);
      for (std::size_t x = 0; x < M.cols(); ++x)
        for (auto y : M.related(x))
          for (int i = 1; i < n; ++i) EXPECT_TRUE(M.contains(LX->apply_adjacent(x, i), LY->apply_adjacent(y, i))) << name;
    }
  }
}

TEST(Relation, ClosedUnderTransitions) {
  std::mt19937 rng(3);
  for (const auto& name : kRelations) {
    auto R = workspace().relation(name);
    for (int n = 2; n <= 6; ++n) {
      auto M = materialize(R, n);
      auto up = materialize(R, n + 1);
      auto LX = R.source->evaluate(n), HX = R.source->evaluate(n + 1);
      auto LY = R.target->evaluate(n), HY = R.target->evaluate(n + 1);
      std::vector<int> g(static_cast<std::size_t>(n + 1));
      std::iota(g.begin(), g.end(), 1);
      std::shuffle(g.begin(), g.end(), rng);
      g.pop_back();
      for (std::size_t x = 0; x < M.cols(); ++x)
        for (auto y : M.related(x)) {
          auto gx = HX->index_of(R.source->transition(n, LX->element(x), g, n + 1));
          auto gy = HY->index_of(R.target->transition(n, LY->element(y), g, n + 1));
          EXPECT_TRUE(up.contains(gx, gy)) << name << " n=" << n;
        }
    }
  }
}

TEST(Relation, TransposeSwapsTheMatrix) {
  for (const auto& name : kRelations) {
    auto R = workspace().relation(name);
    auto T = transpose(R);
    for (int n = 0; n <= 6; ++n) {
      auto A = linearize(R, n);
      auto B = linearize(T, n);
      EXPECT_TRUE(A.transposed() == B) << name;
      if (R.symmetric) EXPECT_TRUE(A.is_symmetric()) << name;
    }
  }
}

TEST(Relation, SymmetricFlagIsChecked) {
  auto P = workspace().fiset("points");
  RelationSpec bad{P, P, {{2, {0, {1}, 0}, {0, {2}, 0}}}, true};
  EXPECT_NO_THROW(materialize(bad, 4));
  auto O = workspace().fiset("ordered-pairs");
  // (1,2) ~ (2,3) is not symmetric as an ordered-pair relation
  RelationSpec chain{O, O, {{3, {0, {1, 2}, 0}, {0, {2, 3}, 0}}}, true};
  EXPECT_THROW(materialize(chain, 3), InvalidArgument);
}

TEST(Relation, GeneratorsAreValidated) {
  auto P2 = workspace().fiset("pairs");
  RelationSpec bad{P2, P2, {{3, {0, {1, 4}, 0}, {0, {2, 3}, 0}}}, false};
  EXPECT_THROW(materialize(bad, 5), InvalidArgument);
}

TEST(FromPredicate, RecoversIntersectionGenerators) {
  auto P2 = workspace().fiset("pairs");
  auto R = from_predicate(P2, P2, [](const ElementRep& a, const ElementRep& b, int) { return meet(a.support, b.support) == 1; }, 0, 6);
  ASSERT_EQ(R.generators.size(), 1u);
  EXPECT_EQ(R.generators[0].degree, 3);
  EXPECT_TRUE(R.symmetric);
  auto J = workspace().relation("johnson2");
  for (int n = 0; n <= 7; ++n) EXPECT_TRUE(linearize(R, n) == linearize(J, n));
}

TEST(FromPredicate, RejectsNonEquivariantPredicate) {
  auto P1 = workspace().fiset("points");
  try {
    from_predicate(P1, P1, [](const ElementRep& a, const ElementRep&, int) { return a.support[0] == 1; }, 2, 4);
    FAIL() << "expected rejection";
  } catch (const PredicateRejected& e) {
    EXPECT_NE(std::string(e.what()).find("not equivariant"), std::string::npos);
  }
}

TEST(FromPredicate, RejectsNonPersistentPredicate) {
  auto P1 = workspace().fiset("points");
  // i ≠ j only while n ≤ 3
  auto pred = [](const ElementRep& a, const ElementRep& b, int n) { return n <= 3 && a.support != b.support; };
  EXPECT_THROW(from_predicate(P1, P1, pred, 2, 5), PredicateRejected);
}

// Overlap counts for a source element on [m] are 0 or a binomial in n − m.
TEST(CountingLemma, OverlapCountsAreBinomial) {
  for (const std::string name : {"kneser2", "kneser3", "ordered-disjoint", "johnson2", "triples-meet1", "triples-meet2", "containment"}) {
    auto R = workspace().relation(name);
    const auto& X = *R.source;
    for (std::size_t ox = 0; ox < X.num_orbits(); ++ox) {
      const int m = X.spec().orbits[ox].m;
      for (std::size_t cx = 0; cx < X.num_cosets(ox); ++cx) {
        std::vector<int> base(static_cast<std::size_t>(m));
        std::iota(base.begin(), base.end(), 1);
        ElementRep x{ox, base, cx};
        for (std::size_t oy = 0; oy < R.target->num_orbits(); ++oy) {
          const int t = R.target->spec().orbits[oy].m;
          for (std::size_t cy = 0; cy < R.target->num_cosets(oy); ++cy)
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
              std::vector<int> S;
              for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) S.push_back(i + 1);
              std::vector<Integer> counts;
              for (int n = m; n <= 10; ++n) counts.push_back(counting_profile(R, n, x, oy, cy, S));
              const bool zero = std::all_of(counts.begin(), counts.end(), [](const Integer& c) { return c == 0; });
              bool binom = true;
              for (int n = m; n <= 10; ++n)
                binom = binom && counts[static_cast<std::size_t>(n - m)] == binomial(n - m, t - static_cast<int>(S.size()));
              EXPECT_TRUE(zero || binom) << name << " S-mask=" << mask;
            }
        }
      }
    }
  }
}

TEST(CountingLemma, KneserProfile) {
  auto R = workspace().relation("kneser2");
  ElementRep x{0, {1, 2}, 0};
  std::vector<std::string> got;
  for (int n = 2; n <= 8; ++n) got.push_back(counting_profile(R, n, x, 0, 0, {}).get_str());
  EXPECT_EQ(got, (std::vector<std::string>{"0", "0", "1", "3", "6", "10", "15"}));
  EXPECT_EQ(counting_profile(R, 8, x, 0, 0, {1}), 0);
}
