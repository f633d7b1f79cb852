#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace fistab;
using fistab::testing::workspace;

namespace {

// Faddeev–LeVerrier over Q: an oracle independent of the modular path.
RationalPolynomial faddeev_leverrier(const IntMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n)), M(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(static_cast<long>(A(i, j)));
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> AM(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * M[l][j];
        AM[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * M[l][i];
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return RationalPolynomial(c);
}

Rational trace_of_power(const IntMatrix& A, int k) {
  IntMatrix P = IntMatrix::identity(A.rows());
  for (int i = 0; i < k; ++i) P = P * A;
  return Rational(static_cast<long>(P.trace()));
}

RationalPolynomial poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return RationalPolynomial(v);
}

// Sorted (eigenvalue, multiplicity) list predicted by the polynomial families at n.
std::map<Rational, Integer> polynomial_spectrum_at(const SpectralReport& r, int n) {
  std::map<Rational, Integer> out;
  for (const auto& f : r.families) {
    EXPECT_TRUE(f.polynomial);
    const Rational m = f.multiplicity(Rational(n));
    if (m != 0) out[f.value(Rational(n))] += Integer(m);
  }
  return out;
}

}  // namespace

TEST(CharPoly, MultimodularMatchesFaddeevLeverrier) {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int size = 0; size <= 9; ++size)
    for (int trial = 0; trial < 5; ++trial) {
      IntMatrix A(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = entry(rng);
      EXPECT_EQ(charpoly_exact(A), faddeev_leverrier(A)) << "size " << size;
    }
}

TEST(CharPoly, NewtonFromTracesOfDiagonalMatrix) {
  IntMatrix D(3, 3);
  D(0, 0) = 2, D(1, 1) = -1, D(2, 2) = 5;
  std::vector<Rational> traces;
  for (int k = 1; k <= 3; ++k) traces.push_back(trace_of_power(D, k));
  EXPECT_EQ(charpoly_from_traces(traces, 3), poly({-2, 1}) * poly({1, 1}) * poly({-5, 1}));
}

TEST(Factorization, PetersenGraph) {
  auto bf = brute_force_spectrum(workspace().relation("kneser2"), 5);
  EXPECT_EQ(bf.factors.to_string(), "(x + 2)^4(x - 1)^5(x - 3)");
  EXPECT_EQ(bf.factors.expand(), bf.charpoly);
}

TEST(Factorization, ExpandsBackWithIrreducibleResidual) {
  auto p = poly({-2, 0, 1}).pow(2) * poly({3, 1}).pow(3) * poly({1, 1, 1});
  auto f = factor_over_rationals(p);
  EXPECT_EQ(f.expand(), p);
  ASSERT_EQ(f.roots.size(), 1u);
  EXPECT_EQ(f.roots[0].first, -3);
  EXPECT_EQ(f.roots[0].second, 3);
}

TEST(Traces, IsotypicTracesSumToMatrixTraces) {
  for (const std::string name : {"kneser2", "johnson2", "incidence", "ordered-disjoint"}) {
    auto R = workspace().relation(name);
    for (int n = 4; n <= 6; ++n) {
      auto A = linearize(R, n);
      auto data = degree_data(adjacency_operator(R), n, 3);
      for (int k = 1; k <= 3; ++k) {
        Rational total = 0;
        for (const auto& mu : partitions_of(n)) {
          std::vector<int> rest(mu.parts().begin() + 1, mu.parts().end());
          auto tr = isotypic_traces(data, Partition(rest), 3);
          total += Rational(hook_dimension(mu)) * tr[static_cast<std::size_t>(k - 1)];
        }
        EXPECT_EQ(total, trace_of_power(A, k)) << name << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Spectrum, KneserPairsClosedForm) {
  auto r = spectrum(workspace().relation("kneser2"));
  EXPECT_EQ(r.distinct_count, 3);
  for (int n = 5; n <= 12; ++n) {
    std::map<Rational, Integer> expected;
    for (int i = 0; i <= 2; ++i) {
      Integer value = binomial(n - 2 - i, 2 - i);
      if (i % 2) value = -value;
      expected[Rational(value)] += binomial(n, i) - (i ? binomial(n, i - 1) : Integer(0));
    }
    EXPECT_EQ(polynomial_spectrum_at(r, n), expected) << "n=" << n;
  }
}

TEST(Spectrum, BlockSizesAreStableMultiplicities) {
  auto R = workspace().relation("incidence");
  auto r = spectrum(R);
  for (const auto& b : r.blocks) EXPECT_EQ(Integer(b.size), stable_multiplicity(*R.source, b.lambda));
}

TEST(Spectrum, CompleteGraph) {
  auto r = spectrum(workspace().relation("distinct-points"));
  ASSERT_EQ(r.families.size(), 2u);
  for (int n = 3; n <= 8; ++n) {
    std::map<Rational, Integer> expected{{Rational(n - 1), 1}, {Rational(-1), n - 1}};
    EXPECT_EQ(polynomial_spectrum_at(r, n), expected);
  }
}

TEST(Spectrum, LaplacianHasZeroOnTheTrivialBlock) {
  auto r = laplacian_spectrum(workspace().relation("kneser2"));
  for (int n = 6; n <= 9; ++n) {
    auto spec = polynomial_spectrum_at(r, n);
    EXPECT_EQ(spec[Rational(0)], 1);
    auto check = consistency_check(r, laplacian_operator(workspace().relation("kneser2")), n);
    EXPECT_TRUE(check.blocks_ok && check.families_ok) << check.diagnostic;
  }
}

TEST(Spectrum, GramOfContainment) {
  auto R = workspace().relation("containment");
  auto r = singular_value_analysis(R);
  for (int n = 4; n <= 9; ++n) {
    std::map<Rational, Integer> expected{{Rational(2 * n - 2), 1}, {Rational(n - 2), n - 1}};
    EXPECT_EQ(polynomial_spectrum_at(r, n), expected);
  }
  EXPECT_FALSE(r.notes.empty());
}

TEST(Spectrum, IrreducibleResidualFamilies) {
  auto R = workspace().relation("incidence");
  auto r = spectrum(R);
  int residual = 0;
  for (const auto& f : r.families)
    if (!f.polynomial) {
      ++residual;
      EXPECT_EQ(f.width(), 2);
    }
  EXPECT_EQ(residual, 2);
  for (int n = 6; n <= 9; ++n) {
    auto check = consistency_check(r, adjacency_operator(R), n);
    EXPECT_TRUE(check.blocks_ok && check.families_ok) << check.diagnostic;
  }
}

TEST(Spectrum, OracleAgreementAcrossRelations) {
  for (const std::string name : {"johnson2", "triples-meet2", "ordered-disjoint"}) {
    auto R = workspace().relation(name);
    auto r = spectrum(R);
    for (int n = r.sample_start; n <= r.sample_start + 1; ++n) {
      auto check = consistency_check(r, adjacency_operator(R), n);
      EXPECT_TRUE(check.blocks_ok && check.families_ok) << name << " n=" << n << ": " << check.diagnostic;
    }
  }
}

TEST(Spectrum, CorruptedBlockIsCaught) {
  auto R = workspace().relation("kneser2");
  auto r = spectrum(R);
  r.blocks[0].coefficients[0] += RationalPolynomial(Rational(1));
  auto check = consistency_check(r, adjacency_operator(R), 8);
  EXPECT_FALSE(check.blocks_ok);
  EXPECT_FALSE(check.diagnostic.empty());
}

TEST(Spectrum, WorkerCountDoesNotChangeTheReport) {
  auto R = workspace().relation("kneser3");
  SpectrumOptions one, two;
  two.workers = 2;
  auto a = spectrum(R, one), b = spectrum(R, two);
  ASSERT_EQ(a.blocks.size(), b.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) EXPECT_TRUE(a.blocks[i].as_bivariate() == b.blocks[i].as_bivariate());
}

TEST(Operators, ShapeRequirements) {
  auto C = workspace().relation("containment");
  EXPECT_THROW(adjacency_operator(C), InvalidArgument);
  auto O = workspace().fiset("ordered-pairs");
  RelationSpec chain{O, O, {{3, {0, {1, 2}, 0}, {0, {2, 3}, 0}}}, false};
  EXPECT_THROW(laplacian_operator(chain).matrix(4), InvalidArgument);
}

TEST(Operators, OracleRespectsItsCap) {
  Limits small;
  small.oracle_size = 5;
  auto X = std::make_shared<const FISet>(FISetSpec{{{2, PermutationGroup::symmetric(2), "p"}}, {}}, small);
  RelationSpec R{X, X, {{4, {0, {1, 2}, 0}, {0, {3, 4}, 0}}}, true};
  EXPECT_THROW(brute_force_spectrum(R, 5), CapExceeded);
}

TEST(Bivariate, SquareFreeDecomposition) {
  auto x_minus_n = BivariatePolynomial::linear(RationalPolynomial::variable());
  auto x_plus_1 = BivariatePolynomial::linear(RationalPolynomial(Rational(-1)));
  auto p = x_minus_n.pow(2) * x_plus_1;
  auto parts = square_free_decomposition(p);
  ASSERT_EQ(parts.size(), 2u);
  BivariatePolynomial rebuilt = BivariatePolynomial::linear(RationalPolynomial(Rational(0))).pow(0);
  for (const auto& [f, e] : parts) rebuilt = rebuilt * f.pow(e);
  EXPECT_TRUE(rebuilt.normalized() == p.normalized());
}

TEST(Interpolation, FailsWhenTheBoundIsTooSmall) {
  std::map<int, RationalPolynomial> samples;
  for (int n = 1; n <= 8; ++n) samples.emplace(n, poly({static_cast<long>(n) * n * n * n, 1}));
  EXPECT_THROW(interpolate_family(Partition{}, samples, 1), InterpolationFailure);
  auto fam = interpolate_family(Partition{}, samples, 4);
  EXPECT_EQ(fam.at(11), poly({11L * 11 * 11 * 11, 1}));
}
