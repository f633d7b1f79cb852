#ifndef FISTAB_SPECTRA_HPP
#define FISTAB_SPECTRA_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fistab/bivariate.hpp"
#include "fistab/characters.hpp"
#include "fistab/error.hpp"
#include "fistab/fiset.hpp"
#include "fistab/linalg.hpp"
#include "fistab/multiplicity.hpp"
#include "fistab/partition.hpp"
#include "fistab/rational.hpp"
#include "fistab/relation.hpp"

namespace fistab {

/// An S_n-equivariant integer operator on kX_n, given per degree in the
/// class order of X_n.
struct EquivariantOperator {
  std::string kind;
  std::shared_ptr<const FISet> space;
  std::function<IntMatrix(int)> matrix;
  int entry_degree = 0;  // t: matrix entries grow like n^t
  int min_degree = 0;    // largest generator threshold
};

namespace detail {

inline int max_threshold(const RelationSpec& R) {
  int a = 0;
  for (const auto& g : R.generators) a = std::max(a, g.degree);
  return a;
}

}  // namespace detail

inline EquivariantOperator adjacency_operator(const RelationSpec& R) {
  if (!R.is_self()) throw InvalidArgument("adjacency spectrum needs a self-relation");
  return {"adjacency", R.source, [R](int n) { return linearize(R, n); }, R.target->max_generation_degree(),
          detail::max_threshold(R)};
}

/// D − A for a symmetric relation without loops.
inline EquivariantOperator laplacian_operator(const RelationSpec& R) {
  if (!R.is_self()) throw InvalidArgument("Laplacian needs a self-relation");
  return {"laplacian", R.source,
          [R](int n) {
            IntMatrix A = linearize(R, n);
            if (!A.is_symmetric()) throw InvalidArgument("Laplacian needs a symmetric relation (degree " + std::to_string(n) + ")");
            IntMatrix L(A.rows(), A.cols());
            for (std::size_t i = 0; i < A.rows(); ++i) {
              if (A(i, i) != 0) throw InvalidArgument("Laplacian needs a relation without loops");
              std::int64_t deg = 0;
              for (std::size_t j = 0; j < A.cols(); ++j) {
                deg += A(i, j);
                L(i, j) = -A(i, j);
              }
              L(i, i) = deg;
            }
            return L;
          },
          R.target->max_generation_degree(), detail::max_threshold(R)};
}

/// rᵀr on kX_n. Entries count common neighbours in Y_n, so they grow like n^{t_Y}.
inline EquivariantOperator gram_operator(const RelationSpec& R) {
  return {"gram", R.source,
          [R](int n) {
            IntMatrix M = linearize(R, n);
            return M.transposed() * M;
          },
          R.target->max_generation_degree(), detail::max_threshold(R)};
}

/// Per-degree invariants shared by all λ: fixed points and the class traces
/// tr(A^k g) = Σ_x A^k[x][g·x] for each conjugacy class.
struct DegreeData {
  int n = 0;
  std::size_t size = 0;
  std::vector<Integer> fixed;
  std::vector<std::vector<Integer>> class_traces;  // [k-1][class]
};

inline DegreeData degree_data(const EquivariantOperator& op, int n, int k_max) {
  const auto& X = *op.space;
  auto level = X.evaluate(n);
  if (level->size() > X.limits().matrix_size) throw CapExceeded("matrix dimension", X.limits().matrix_size);
  const auto& classes = conjugacy_classes(n, X.limits().class_degree);
  DegreeData out;
  out.n = n;
  out.size = level->size();
  std::vector<std::vector<std::size_t>> actions;
  for (const auto& cls : classes) {
    actions.push_back(level->permutation_action(cls.representative));
    std::size_t fix = 0;
    for (std::size_t x = 0; x < level->size(); ++x) fix += actions.back()[x] == x;
    out.fixed.emplace_back(static_cast<unsigned long>(fix));
  }
  if (k_max <= 0) return out;
  const IntMatrix A = op.matrix(n);
  if (A.rows() != level->size() || A.cols() != level->size()) throw MathError("operator has the wrong shape");
  // sparse rows of A for the repeated products A·P
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0) rows[i].emplace_back(j, A(i, j));
  IntMatrix power = A;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) {
      IntMatrix next(A.rows(), A.cols());
      for (std::size_t i = 0; i < A.rows(); ++i)
        for (const auto& [j, v] : rows[i])
          for (std::size_t c = 0; c < A.cols(); ++c) {
            std::int64_t prod;
            if (__builtin_mul_overflow(v, power(j, c), &prod) || __builtin_add_overflow(next(i, c), prod, &next(i, c)))
              throw MathError("matrix power overflows int64");
          }
      power = std::move(next);
    }
    std::vector<Integer> traces;
    for (const auto& pi : actions) {
      Integer t = 0;
      for (std::size_t x = 0; x < level->size(); ++x) t += static_cast<long>(power(x, pi[x]));
      traces.push_back(std::move(t));
    }
    out.class_traces.push_back(std::move(traces));
  }
  return out;
}

/// tr(A_λ(n)^k) for k = 1..k_max from the class traces; empty when λ[n] is
/// undefined.
inline std::vector<Rational> isotypic_traces(const DegreeData& data, const Partition& lambda, int k_max) {
  auto shape = pad(lambda, data.n);
  if (!shape) return {};
  if (k_max > static_cast<int>(data.class_traces.size())) throw InvalidArgument("not enough class traces");
  const auto& classes = conjugacy_classes(data.n);
  const Rational nf(factorial(data.n));
  std::vector<Rational> out;
  for (int k = 1; k <= k_max; ++k) {
    Integer sum = 0;
    for (std::size_t c = 0; c < classes.size(); ++c)
      sum += classes[c].class_size * mn_character(*shape, classes[c].cycle_type) *
             data.class_traces[static_cast<std::size_t>(k - 1)][c];
    out.push_back(Rational(sum) / nf);
  }
  return out;
}

inline std::vector<Rational> isotypic_traces(const EquivariantOperator& op, int n, const Partition& lambda, int k_max) {
  if (!pad(lambda, n)) return {};
  return isotypic_traces(degree_data(op, n, k_max), lambda, k_max);
}

inline std::vector<Rational> isotypic_traces(const RelationSpec& R, int n, const Partition& lambda, int k_max) {
  return isotypic_traces(adjacency_operator(R), n, lambda, k_max);
}

/// Monic characteristic polynomial from power sums p_1..p_m (Newton).
inline RationalPolynomial charpoly_from_traces(const std::vector<Rational>& traces, int size) {
  if (size < 0) throw InvalidArgument("negative block size");
  if (static_cast<int>(traces.size()) < size) throw InvalidArgument("fewer traces than the block size");
  std::vector<Rational> e(static_cast<std::size_t>(size) + 1);
  e[0] = 1;
  for (int k = 1; k <= size; ++k) {
    Rational acc = 0;
    for (int i = 1; i <= k; ++i) {
      const Rational term = e[static_cast<std::size_t>(k - i)] * traces[static_cast<std::size_t>(i - 1)];
      acc += (i % 2 == 1) ? term : Rational(-term);
    }
    e[static_cast<std::size_t>(k)] = acc / k;
  }
  std::vector<Rational> coeffs(static_cast<std::size_t>(size) + 1);
  for (int k = 0; k <= size; ++k)
    coeffs[static_cast<std::size_t>(size - k)] = (k % 2 == 0) ? e[static_cast<std::size_t>(k)] : Rational(-e[static_cast<std::size_t>(k)]);
  return RationalPolynomial(std::move(coeffs));
}

/// Characteristic polynomial of A_λ(n) with coefficients in Q[n].
struct CharPolyFamily {
  Partition lambda;
  int size = 0;
  std::vector<RationalPolynomial> coefficients;  // coefficient of x^j, j = 0..size
  int valid_from = 0;
  int degree_bound = 0;
  std::vector<int> sampled;
  std::vector<int> verified_at;

  BivariatePolynomial as_bivariate() const { return BivariatePolynomial(coefficients); }
  RationalPolynomial at(int n) const { return as_bivariate().at(Rational(n)); }
};

class InterpolationFailure : public MathError {
 public:
  InterpolationFailure(const std::string& what, int degree) : MathError(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// Fits each x-coefficient by exact interpolation through the lowest
/// bound+1 sample degrees and checks the rest. Retries once with twice the
/// bound when enough samples exist.
inline CharPolyFamily interpolate_family(const Partition& lambda, const std::map<int, RationalPolynomial>& samples,
                                         int degree_bound) {
  if (samples.empty()) throw InvalidArgument("no samples to interpolate");
  const int size = samples.begin()->second.degree();
  int failing = -1;
  for (int bound : {degree_bound, 2 * degree_bound}) {
    if (static_cast<int>(samples.size()) < bound + 3) break;
    CharPolyFamily fam{lambda, size, {}, samples.begin()->first, bound, {}, {}};
    std::vector<std::pair<int, const RationalPolynomial*>> pts;
    for (const auto& [n, p] : samples) {
      if (p.degree() != size) throw MathError("sampled characteristic polynomials differ in degree");
      pts.emplace_back(n, &p);
    }
    for (int j = 0; j <= size; ++j) {
      std::vector<std::pair<Rational, Rational>> nodes;
      for (int i = 0; i <= bound; ++i)
        nodes.emplace_back(Rational(pts[static_cast<std::size_t>(i)].first),
                           pts[static_cast<std::size_t>(i)].second->coefficient(static_cast<std::size_t>(j)));
      fam.coefficients.push_back(RationalPolynomial::interpolate(nodes));
    }
    bool ok = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i <= static_cast<std::size_t>(bound)) {
        fam.sampled.push_back(pts[i].first);
        continue;
      }
      if (!(fam.at(pts[i].first) == *pts[i].second)) {
        ok = false;
        failing = pts[i].first;
        break;
      }
      fam.verified_at.push_back(pts[i].first);
    }
    if (ok) return fam;
  }
  throw InterpolationFailure("not in stable range or bound too small: " + lambda.to_string() +
                                 " family fails verification at degree " + std::to_string(failing),
                             failing);
}

/// m_λ · t.
inline int default_degree_bound(int stable_multiplicity, int target_degree) { return stable_multiplicity * target_degree; }

inline int default_degree_bound(const RelationSpec& R, const Partition& lambda, int n_max = 10) {
  const Integer m = stable_multiplicity(*R.source, lambda, n_max);
  return default_degree_bound(static_cast<int>(m.get_si()), R.target->max_generation_degree());
}

/// Factors of one block: linear factors with polynomial roots, then the
/// square-free residual.
struct BlockSplit {
  std::vector<std::pair<RationalPolynomial, int>> roots;
  std::vector<std::pair<BivariatePolynomial, int>> residual;
};

/// Polynomial roots f(n) are found by interpolating integer roots at
/// consecutive degrees and kept only if P(n, f(n)) vanishes identically.
inline BlockSplit split_family(const CharPolyFamily& fam, std::size_t combination_cap) {
  BlockSplit out;
  BivariatePolynomial P = fam.as_bivariate();
  const int m = P.degree();
  if (m <= 0) return out;
  // a root of degree D > max_j deg(c_{m-j})/j cannot cancel the leading x^m
  int D = 0;
  for (int j = 1; j <= m; ++j) {
    const int dc = P.coefficient(static_cast<std::size_t>(m - j)).degree();
    if (dc > 0) D = std::max(D, (dc + j - 1) / j);
  }
  std::vector<int> nodes;
  std::vector<std::vector<Integer>> roots_at;
  for (int i = 0; i <= D; ++i) {
    const int n = fam.valid_from + i;
    nodes.push_back(n);
    roots_at.push_back(integer_roots(P.at(Rational(n))));
  }
  std::size_t combos = 1;
  for (const auto& r : roots_at) {
    if (r.empty()) {
      combos = 0;
      break;
    }
    combos *= r.size();
    if (combos > combination_cap) throw CapExceeded("root combinations", combination_cap);
  }
  std::vector<RationalPolynomial> found;
  std::vector<std::size_t> pick(roots_at.size(), 0);
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (std::size_t i = 0; i < pick.size(); ++i) pts.emplace_back(Rational(nodes[i]), Rational(roots_at[i][pick[i]]));
    auto f = RationalPolynomial::interpolate(pts);
    if (P.substitute(f).is_zero() && std::find(found.begin(), found.end(), f) == found.end()) found.push_back(f);
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < roots_at[i].size()) break;
      pick[i] = 0;
    }
  }
  std::sort(found.begin(), found.end(), [](const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coefficients() < b.coefficients();
  });
  for (const auto& f : found) {
    const auto lin = BivariatePolynomial::linear(f);
    int e = 0;
    while (P.degree() > 0 && P.substitute(f).is_zero()) {
      P = exact_divide(P, lin);
      ++e;
    }
    out.roots.emplace_back(f, e);
  }
  if (P.degree() > 0) out.residual = square_free_decomposition(P);
  return out;
}

struct EigenvalueFamily {
  bool polynomial = true;
  RationalPolynomial value;    // when polynomial
  BivariatePolynomial factor;  // x − value, or the residual factor
  RationalPolynomial multiplicity;
  std::vector<std::pair<Partition, int>> sources;  // (λ, multiplicity inside A_λ)
  std::vector<std::pair<int, int>> real_roots;     // residual evidence: (n, distinct real roots)

  /// Number of distinct eigenvalues this family contributes for generic n.
  int width() const { return factor.degree(); }
};

struct Coincidence {
  std::size_t first = 0, second = 0;  // family indices; equal for a discriminant
  std::vector<Integer> degrees;       // integer n where the values collide
};

struct OracleCheck {
  int n = 0;
  bool blocks_ok = false;
  bool families_ok = false;
  std::string diagnostic;
};

struct SpectralReport {
  std::string kind;
  int stable_start = 0;
  int sample_start = 0;
  int lambda_cutoff = 4;
  bool complete = true;  // false if the cutoff dropped partitions that can occur
  std::vector<CharPolyFamily> blocks;
  std::vector<EigenvalueFamily> families;
  std::vector<Coincidence> coincidences;
  int distinct_count = 0;
  int distinct_from = 0;
  RationalPolynomial cardinality;
  std::vector<std::string> notes;
  std::vector<OracleCheck> transcript;
  Limits limits;
};

namespace detail {

/// Resultant in x of two bivariate polynomials, as a polynomial in n, by
/// evaluation and interpolation.
inline RationalPolynomial resultant_in_x(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const int bound = a.degree() * std::max(0, b.degree_n()) + b.degree() * std::max(0, a.degree_n());
  std::vector<std::pair<Rational, Rational>> pts;
  for (int i = 0; i <= bound; ++i) {
    const Rational n0(i);
    pts.emplace_back(n0, resultant(a.at(n0), b.at(n0)));
  }
  return RationalPolynomial::interpolate(pts);
}

inline std::vector<Integer> integer_zeros(const RationalPolynomial& p) {
  if (p.is_zero()) throw MathError("families coincide identically");
  if (p.degree() == 0) return {};
  return integer_roots(p);
}

}  // namespace detail

/// Merges per-λ block factorizations into eigenvalue families with
/// multiplicity polynomials, then locates coincidences.
inline void eigenvalue_families(SpectralReport& report) {
  report.families.clear();
  for (const auto& fam : report.blocks) {
    const RationalPolynomial dim = dimension_polynomial(fam.lambda);
    const BlockSplit split = split_family(fam, report.limits.root_combinations);
    auto merge = [&](const BivariatePolynomial& factor, bool polynomial, const RationalPolynomial& value, int e) {
      auto it = std::find_if(report.families.begin(), report.families.end(),
                             [&](const EigenvalueFamily& f) { return f.factor == factor; });
      if (it == report.families.end()) {
        report.families.push_back({polynomial, value, factor, {}, {}, {}});
        it = std::prev(report.families.end());
      }
      it->multiplicity += dim * Rational(e);
      it->sources.emplace_back(fam.lambda, e);
      if (!polynomial)
        for (int n : fam.sampled) it->real_roots.emplace_back(n, count_real_roots(factor.at(Rational(n))));
    };
    for (const auto& [f, e] : split.roots) merge(BivariatePolynomial::linear(f), true, f, e);
    for (const auto& [g, e] : split.residual) merge(g, false, {}, e);
  }
  std::stable_sort(report.families.begin(), report.families.end(), [](const EigenvalueFamily& a, const EigenvalueFamily& b) {
    if (a.polynomial != b.polynomial) return a.polynomial;
    return a.factor.to_strings() < b.factor.to_strings();
  });
  report.coincidences.clear();
  report.distinct_count = 0;
  Integer last = report.stable_start - 1;
  for (std::size_t i = 0; i < report.families.size(); ++i) {
    const auto& a = report.families[i];
    report.distinct_count += a.width();
    if (!a.polynomial) {
      auto disc = detail::integer_zeros(detail::resultant_in_x(a.factor, a.factor.derivative()));
      if (!disc.empty()) report.coincidences.push_back({i, i, disc});
    }
    for (std::size_t j = i + 1; j < report.families.size(); ++j) {
      const auto& b = report.families[j];
      RationalPolynomial meet;
      if (a.polynomial && b.polynomial)
        meet = a.value - b.value;
      else if (a.polynomial)
        meet = b.factor.substitute(a.value);
      else
        meet = detail::resultant_in_x(a.factor, b.factor);
      auto roots = detail::integer_zeros(meet);
      if (!roots.empty()) report.coincidences.push_back({i, j, roots});
    }
  }
  for (const auto& c : report.coincidences)
    for (const auto& r : c.degrees) last = std::max(last, r);
  report.distinct_from = static_cast<int>(last.get_si()) + 1;
}

struct SpectrumOptions {
  int lambda_cutoff = 4;
  int window = 3;
  int stability_n_max = 10;
  int workers = 1;
};

namespace detail {

class DegreeCache {
 public:
  DegreeCache(const EquivariantOperator& op, int k_max, int workers) : op_(op), k_max_(k_max), workers_(std::max(1, workers)) {}

  /// Computes the listed degrees, in parallel when workers > 1.
  void prefetch(const std::vector<int>& degrees) {
    std::vector<int> todo;
    {
      std::lock_guard lock(mutex_);
      for (int n : degrees)
        if (!data_.contains(n)) todo.push_back(n);
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t i = next++; i < todo.size(); i = next++) {
        try {
          auto d = degree_data(op_, todo[i], k_max_);
          std::lock_guard lock(mutex_);
          data_.emplace(todo[i], std::move(d));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const int threads = std::min<int>(workers_, static_cast<int>(todo.size()));
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
  }

  const DegreeData& at(int n) {
    prefetch({n});
    std::lock_guard lock(mutex_);
    return data_.at(n);
  }

 private:
  const EquivariantOperator& op_;
  int k_max_;
  int workers_;
  std::mutex mutex_;
  std::map<int, DegreeData> data_;
};

}  // namespace detail

/// Full pipeline for one operator: stable multiplicities, per-λ block
/// families by sampling and interpolation, then eigenvalue families.
inline SpectralReport analyze_operator(const EquivariantOperator& op, const SpectrumOptions& opt = {}) {
  const FISet& X = *op.space;
  SpectralReport report;
  report.kind = op.kind;
  report.lambda_cutoff = opt.lambda_cutoff;
  report.limits = X.limits();
  const auto range = detect_stable_range(X, opt.stability_n_max, opt.window);
  if (!range.start) throw Undecided("stable range not detected up to degree " + std::to_string(opt.stability_n_max));
  report.stable_start = *range.start;
  const int d = X.max_generation_degree();
  report.sample_start = std::max({*range.start, 2 * d, op.min_degree});
  if (d > opt.lambda_cutoff) {
    report.complete = false;
    report.notes.push_back("partitions with |λ| > " + std::to_string(opt.lambda_cutoff) + " were not examined");
  }

  std::vector<std::pair<Partition, int>> shapes;
  int k_max = 0;
  for (const auto& lambda : partitions_up_to(std::min(d, opt.lambda_cutoff))) {
    const Integer m = stable_multiplicity(X, lambda, range);
    if (m == 0) continue;
    shapes.emplace_back(lambda, static_cast<int>(m.get_si()));
    k_max = std::max(k_max, static_cast<int>(m.get_si()));
  }
  detail::DegreeCache cache(op, k_max, opt.workers);
  constexpr int kMaxShift = 3;

  for (const auto& [lambda, m] : shapes) {
    const int bound = default_degree_bound(m, op.entry_degree);
    int start = std::max(report.sample_start, multiplicity_stable_from(X, lambda, *range.start));
    std::optional<CharPolyFamily> fam;
    for (int shift = 0; shift <= kMaxShift && !fam; ++shift, ++start) {
      std::map<int, RationalPolynomial> samples;
      auto sample = [&](int count) {
        std::vector<int> degrees;
        for (int n = start; n < start + count; ++n) degrees.push_back(n);
        cache.prefetch(degrees);
        for (int n : degrees) {
          if (samples.contains(n)) continue;
          const auto& data = cache.at(n);
          const Integer block = per_n_multiplicity(X, n, lambda, data.fixed);
          if (block != m) return false;
          samples.emplace(n, charpoly_from_traces(isotypic_traces(data, lambda, m), m));
        }
        return true;
      };
      if (!sample(bound + 3)) continue;
      try {
        fam = interpolate_family(lambda, samples, bound);
      } catch (const InterpolationFailure&) {
        if (!sample(2 * bound + 3)) continue;
        fam = interpolate_family(lambda, samples, bound);
      }
    }
    if (!fam) throw Undecided("block size of " + lambda.to_string() + " did not settle at its stable value");
    report.blocks.push_back(std::move(*fam));
  }

  for (const auto& [lambda, m] : shapes) report.cardinality += dimension_polynomial(lambda) * Rational(m);
  for (const auto& b : report.blocks) {
    for (int n : b.sampled)
      if (report.cardinality(Rational(n)) != Rational(static_cast<long>(cache.at(n).size)))
        report.notes.push_back("multiplicities do not account for all of X_" + std::to_string(n));
  }
  eigenvalue_families(report);
  if (op.kind == "gram")
    report.notes.push_back("eigenvalues of rᵀr are squared singular values; they equal squared eigenvalues of r only when r is normal");
  return report;
}

inline SpectralReport spectrum(const RelationSpec& R, const SpectrumOptions& opt = {}) {
  return analyze_operator(adjacency_operator(R), opt);
}
inline SpectralReport laplacian_spectrum(const RelationSpec& R, const SpectrumOptions& opt = {}) {
  return analyze_operator(laplacian_operator(R), opt);
}
inline SpectralReport singular_value_analysis(const RelationSpec& R, const SpectrumOptions& opt = {}) {
  return analyze_operator(gram_operator(R), opt);
}

/// Exact characteristic polynomial of the operator at degree n, factored.
struct BruteForceSpectrum {
  RationalPolynomial charpoly;
  Factorization factors;
};

inline BruteForceSpectrum brute_force_spectrum(const EquivariantOperator& op, int n) {
  auto level = op.space->evaluate(n);
  if (level->size() > op.space->limits().oracle_size) throw CapExceeded("oracle matrix dimension", op.space->limits().oracle_size);
  BruteForceSpectrum out;
  out.charpoly = charpoly_exact(op.matrix(n));
  out.factors = factor_over_rationals(out.charpoly);
  return out;
}

inline BruteForceSpectrum brute_force_spectrum(const RelationSpec& R, int n) {
  return brute_force_spectrum(adjacency_operator(R), n);
}

namespace detail {

inline std::string first_difference(const RationalPolynomial& expected, const RationalPolynomial& actual) {
  const int top = std::max(expected.degree(), actual.degree());
  for (int j = top; j >= 0; --j) {
    const auto a = expected.coefficient(static_cast<std::size_t>(j)), b = actual.coefficient(static_cast<std::size_t>(j));
    if (a != b) return "coefficient of x^" + std::to_string(j) + ": predicted " + a.get_str() + ", oracle " + b.get_str();
  }
  return {};
}

}  // namespace detail

/// Compares Π_λ P_λ(n, x)^{dim 𝕊(λ[n])} and the family product against the
/// exact characteristic polynomial at degree n.
inline OracleCheck consistency_check(const SpectralReport& report, const RationalPolynomial& oracle, int n) {
  OracleCheck out{n, false, false, {}};
  RationalPolynomial blocks(1L);
  for (const auto& b : report.blocks) {
    auto shape = pad(b.lambda, n);
    if (!shape) continue;
    blocks *= b.at(n).pow(static_cast<unsigned>(hook_dimension(*shape).get_ui()));
  }
  RationalPolynomial fams(1L);
  for (const auto& f : report.families) {
    const Rational mult = f.multiplicity(Rational(n));
    if (mult < 0 || mult.get_den() != 1) {
      out.diagnostic = "family multiplicity " + f.multiplicity.to_string() + " is not a count at n = " + std::to_string(n);
      return out;
    }
    fams *= f.factor.at(Rational(n)).pow(static_cast<unsigned>(mult.get_num().get_ui()));
  }
  out.blocks_ok = blocks == oracle;
  out.families_ok = fams == oracle;
  if (!out.blocks_ok)
    out.diagnostic = "blocks: " + detail::first_difference(blocks, oracle);
  else if (!out.families_ok)
    out.diagnostic = "families: " + detail::first_difference(fams, oracle);
  return out;
}

inline OracleCheck consistency_check(const SpectralReport& report, const EquivariantOperator& op, int n) {
  return consistency_check(report, brute_force_spectrum(op, n).charpoly, n);
}

}  // namespace fistab

#endif  // FISTAB_SPECTRA_HPP
