#ifndef FISTAB_RELATION_HPP
#define FISTAB_RELATION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/fiset.hpp"
#include "fistab/linalg.hpp"
#include "fistab/rational.hpp"

namespace fistab {

struct RelationGenerator {
  int degree = 0;  // threshold a
  ElementRep x;    // in X_a
  ElementRep y;    // in Y_a
  friend bool operator==(const RelationGenerator&, const RelationGenerator&) = default;
};

/// An equivariant relation R ⊆ X × Y given intensionally: R_n is the union of
/// the S_n-orbits of ι_{a,n}(x, y) over generators with a ≤ n.
struct RelationSpec {
  std::shared_ptr<const FISet> source;
  std::shared_ptr<const FISet> target;
  std::vector<RelationGenerator> generators;
  bool symmetric = false;

  bool is_self() const { return source == target; }
};

/// R_n stored by source element: related_[x] lists the y with (x, y) ∈ R_n,
/// sorted. Indices are class indices of X_n and Y_n.
class RelationMatrix {
 public:
  RelationMatrix(int n, std::size_t rows, std::size_t cols, std::vector<std::vector<std::size_t>> related)
      : n_(n), rows_(rows), cols_(cols), related_(std::move(related)) {}

  int degree() const { return n_; }
  std::size_t rows() const { return rows_; }  // |Y_n|
  std::size_t cols() const { return cols_; }  // |X_n|
  const std::vector<std::size_t>& related(std::size_t x) const { return related_[x]; }
  bool contains(std::size_t x, std::size_t y) const {
    return std::binary_search(related_[x].begin(), related_[x].end(), y);
  }
  std::size_t nonzeros() const {
    std::size_t total = 0;
    for (const auto& r : related_) total += r.size();
    return total;
  }

 private:
  int n_;
  std::size_t rows_, cols_;
  std::vector<std::vector<std::size_t>> related_;
};

namespace detail {

inline void check_generator(const RelationSpec& R, const RelationGenerator& g) {
  R.source->validate(g.x, g.degree);
  R.target->validate(g.y, g.degree);
}

/// Adds the diagonal S_n-orbit of (x, y) to `pairs`.
inline void add_pair_orbit(const Level& LX, const Level& LY, std::size_t x, std::size_t y,
                           std::unordered_set<std::uint64_t>& pairs, std::size_t cap) {
  const std::uint64_t width = LY.size();
  std::vector<std::uint64_t> queue;
  if (!pairs.insert(x * width + y).second) return;
  queue.push_back(x * width + y);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t a = queue[head] / width, b = queue[head] % width;
    for (int i = 1; i < LX.degree(); ++i) {
      const std::uint64_t next = LX.apply_adjacent(a, i) * width + LY.apply_adjacent(b, i);
      if (pairs.insert(next).second) {
        if (pairs.size() > cap) throw CapExceeded("relation size", cap);
        queue.push_back(next);
      }
    }
  }
}

}  // namespace detail

inline RelationMatrix materialize(const RelationSpec& R, int n) {
  auto LX = R.source->evaluate(n);
  auto LY = R.target->evaluate(n);
  std::unordered_set<std::uint64_t> pairs;
  const std::size_t cap = R.source->limits().orbit_size;
  for (const auto& g : R.generators) {
    detail::check_generator(R, g);
    if (g.degree > n) continue;
    detail::add_pair_orbit(*LX, *LY, LX->index_of(g.x), LY->index_of(g.y), pairs, cap);
  }
  std::vector<std::vector<std::size_t>> related(LX->size());
  for (auto p : pairs) related[p / LY->size()].push_back(p % LY->size());
  for (auto& r : related) std::sort(r.begin(), r.end());
  RelationMatrix M(n, LY->size(), LX->size(), std::move(related));
  if (R.symmetric) {
    if (!R.is_self()) throw InvalidArgument("a symmetric relation must have equal source and target");
    for (std::size_t x = 0; x < M.cols(); ++x)
      for (auto y : M.related(x))
        if (!M.contains(y, x))
          throw InvalidArgument("relation flagged symmetric is not symmetric at degree " + std::to_string(n) +
                                ": " + R.source->describe(LX->element(x)) + " ~ " +
                                R.target->describe(LY->element(y)));
  }
  return M;
}

/// |Y_n| × |X_n| matrix with M[y][x] = 1 iff (x, y) ∈ R_n.
inline IntMatrix linearize(const RelationSpec& R, int n) {
  auto M = materialize(R, n);
  const std::size_t cap = R.source->limits().matrix_size;
  if (M.rows() > cap || M.cols() > cap) throw CapExceeded("matrix dimension", cap);
  IntMatrix out(M.rows(), M.cols());
  for (std::size_t x = 0; x < M.cols(); ++x)
    for (auto y : M.related(x)) out(y, x) = 1;
  return out;
}

inline RelationSpec transpose(const RelationSpec& R) {
  RelationSpec out{R.target, R.source, {}, R.symmetric};
  for (const auto& g : R.generators) out.generators.push_back({g.degree, g.y, g.x});
  return out;
}

/// Rejection from from_predicate, with the offending data spelled out in what().
class PredicateRejected : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

using PairPredicate = std::function<bool(const ElementRep& x, const ElementRep& y, int n)>;

/// Builds generators from a predicate by probing every pair at degrees
/// lo..hi. Each orbit of true pairs not explained by earlier generators gets
/// a generator at the first degree it appears. Persistence across the probe
/// degrees is necessary for FI-closure but is not a proof of it.
inline RelationSpec from_predicate(std::shared_ptr<const FISet> X, std::shared_ptr<const FISet> Y,
                                   const PairPredicate& pred, int lo, int hi) {
  if (lo > hi) throw InvalidArgument("empty probe range");
  RelationSpec R{X, Y, {}, false};
  for (int n = lo; n <= hi; ++n) {
    auto LX = X->evaluate(n);
    auto LY = Y->evaluate(n);
    std::vector<char> truth(LX->size() * LY->size());
    for (std::size_t x = 0; x < LX->size(); ++x)
      for (std::size_t y = 0; y < LY->size(); ++y)
        truth[x * LY->size() + y] = pred(LX->element(x), LY->element(y), n);
    for (std::size_t x = 0; x < LX->size(); ++x)
      for (std::size_t y = 0; y < LY->size(); ++y)
        for (int i = 1; i < n; ++i) {
          const std::size_t sx = LX->apply_adjacent(x, i), sy = LY->apply_adjacent(y, i);
          if (truth[x * LY->size() + y] != truth[sx * LY->size() + sy])
            throw PredicateRejected("predicate is not equivariant at degree " + std::to_string(n) + ": pair (" +
                                    X->describe(LX->element(x)) + ", " + Y->describe(LY->element(y)) +
                                    ") vs its image under (" + std::to_string(i) + " " + std::to_string(i + 1) + ")");
        }
    auto current = materialize(R, n);
    for (std::size_t x = 0; x < LX->size(); ++x)
      for (auto y : current.related(x))
        if (!truth[x * LY->size() + y]) {
          int first = n;
          for (const auto& g : R.generators) first = std::min(first, g.degree);
          throw PredicateRejected("predicate is not persistent: pair (" + X->describe(LX->element(x)) + ", " +
                                  Y->describe(LY->element(y)) + ") is forced by a generator from degree " +
                                  std::to_string(first) + " but false at degree " + std::to_string(n));
        }
    std::unordered_set<std::uint64_t> covered;
    for (std::size_t x = 0; x < LX->size(); ++x)
      for (auto y : current.related(x)) covered.insert(x * LY->size() + y);
    for (std::size_t x = 0; x < LX->size(); ++x)
      for (std::size_t y = 0; y < LY->size(); ++y)
        if (truth[x * LY->size() + y] && !covered.contains(x * LY->size() + y)) {
          R.generators.push_back({n, LX->element(x), LY->element(y)});
          detail::add_pair_orbit(*LX, *LY, x, y, covered, X->limits().orbit_size);
        }
  }
  if (R.is_self()) {
    auto T = transpose(R);
    bool sym = true;
    for (int n = lo; n <= hi && sym; ++n) {
      auto a = materialize(R, n), b = materialize(T, n);
      for (std::size_t x = 0; x < a.cols() && sym; ++x) sym = a.related(x) == b.related(x);
    }
    R.symmetric = sym;
  }
  return R;
}

/// #{y = (T, d) ∈ Y_n : (x, y) ∈ R_n, T ∩ [m] = S}, where x has support [m]
/// and d fixes the target orbit and coset.
inline Integer counting_profile(const RelationSpec& R, int n, const ElementRep& x, std::size_t target_orbit,
                                std::size_t target_coset, const std::vector<int>& S) {
  if (!R.target->is_induced()) throw InvalidArgument("counting_profile needs an induced target");
  const int m = static_cast<int>(x.support.size());
  for (int i = 0; i < m; ++i)
    if (x.support[static_cast<std::size_t>(i)] != i + 1) throw InvalidArgument("source element must have support [m]");
  for (int s : S)
    if (s < 1 || s > m) throw InvalidArgument("S must be a subset of [m]");
  if (n < m) return 0;
  auto M = materialize(R, n);
  auto LX = R.source->evaluate(n);
  auto LY = R.target->evaluate(n);
  std::vector<int> sorted_S = S;
  std::sort(sorted_S.begin(), sorted_S.end());
  Integer count = 0;
  for (auto y : M.related(LX->index_of(x))) {
    const auto& e = LY->element(y);
    if (e.orbit != target_orbit || e.coset != target_coset) continue;
    std::vector<int> meet;
    for (int v : e.support)
      if (v <= m) meet.push_back(v);
    if (meet == sorted_S) ++count;
  }
  return count;
}

}  // namespace fistab

#endif  // FISTAB_RELATION_HPP
