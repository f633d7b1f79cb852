#ifndef FISTAB_PERMGROUP_HPP
#define FISTAB_PERMGROUP_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/partition.hpp"
#include "fistab/permutation.hpp"
#include "fistab/rational.hpp"

namespace fistab {

/// Finitely generated subgroup of S_m. Elements are enumerated on demand by
/// BFS closure and cached; an optional membership predicate answers
/// `contains` without enumeration (used for stabilizers in large S_n).
class PermutationGroup {
 public:
  using Membership = std::function<bool(const Permutation&)>;

  PermutationGroup() : PermutationGroup(0, {}) {}
  PermutationGroup(int degree, std::vector<Permutation> generators,
                   std::size_t order_cap = Limits{}.group_order)
      : degree_(degree), generators_(std::move(generators)), cap_(order_cap),
        cache_(std::make_shared<Cache>()) {
    if (degree < 0) throw InvalidArgument("group degree must be nonnegative");
    for (const auto& g : generators_)
      if (g.degree() != degree)
        throw InvalidArgument("generator " + g.to_cycles() + " has degree " +
                              std::to_string(g.degree()) + ", expected " + std::to_string(degree));
    std::erase_if(generators_, [](const Permutation& g) { return g.is_identity(); });
  }

  static PermutationGroup trivial(int degree) { return PermutationGroup(degree, {}); }

  /// S_m generated by (1 2) and (1 2 ... m).
  static PermutationGroup symmetric(int degree, std::size_t order_cap = Limits{}.group_order) {
    std::vector<Permutation> gens;
    if (degree >= 2) {
      gens.push_back(Permutation::transposition(degree, 0, 1));
      std::vector<int> cyc(static_cast<std::size_t>(degree));
      for (int i = 0; i < degree; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % degree;
      gens.emplace_back(std::move(cyc));
    }
    return PermutationGroup(degree, std::move(gens), order_cap);
  }

  /// Generators given in cycle notation.
  static PermutationGroup from_cycles(int degree, const std::vector<std::string>& cycles,
                                      std::size_t order_cap = Limits{}.group_order) {
    std::vector<Permutation> gens;
    for (const auto& c : cycles) gens.push_back(Permutation::parse_cycles(c, degree));
    return PermutationGroup(degree, std::move(gens), order_cap);
  }

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  std::size_t order_cap() const { return cap_; }

  PermutationGroup with_membership(Membership pred) const {
    PermutationGroup g = *this;
    g.cache_ = std::make_shared<Cache>();
    g.membership_ = std::move(pred);
    return g;
  }
  bool has_membership_oracle() const { return static_cast<bool>(membership_); }

  /// All elements in lexicographic order of image sequences.
  const std::vector<Permutation>& elements() const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->elements) cache_->elements = close_under_generators();
    return *cache_->elements;
  }

  std::size_t order() const { return elements().size(); }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    if (membership_) return membership_(g);
    const auto& els = elements();
    return std::binary_search(els.begin(), els.end(), g);
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<Permutation>> elements;
  };

  std::vector<Permutation> close_under_generators() const {
    std::unordered_set<Permutation, PermutationHash> seen;
    std::deque<Permutation> queue;
    auto id = Permutation::identity(degree_);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
      Permutation cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& s : generators_) {
        Permutation next = compose(s, cur);
        if (seen.insert(next).second) {
          if (seen.size() > cap_) throw CapExceeded("group too large: order", cap_);
          queue.push_back(std::move(next));
        }
      }
    }
    std::vector<Permutation> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  int degree_;
  std::vector<Permutation> generators_;
  std::size_t cap_;
  Membership membership_;
  std::shared_ptr<Cache> cache_;
};

inline const std::vector<Permutation>& enumerate(const PermutationGroup& group) {
  return group.elements();
}

/// Greedy generating set for an explicit list of elements, in element order.
inline std::vector<Permutation> generating_subset(int degree, const std::vector<Permutation>& elements,
                                                  std::size_t cap) {
  std::vector<Permutation> gens;
  std::set<Permutation> current{Permutation::identity(degree)};
  for (const auto& e : elements) {
    if (current.contains(e)) continue;
    gens.push_back(e);
    const PermutationGroup closure(degree, gens, cap);
    current = std::set<Permutation>(closure.elements().begin(), closure.elements().end());
  }
  return gens;
}

/// Closure of {point} under the generators, in BFS order.
template <typename T, typename Action>
std::vector<T> orbit_of(const PermutationGroup& group, const T& point, Action&& action,
                        std::size_t cap = Limits{}.orbit_size) {
  std::set<T> seen{point};
  std::vector<T> order{point};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& g : group.generators()) {
      T next = action(g, order[head]);
      if (seen.insert(next).second) {
        if (order.size() + 1 > cap) throw CapExceeded("orbit size", cap);
        order.push_back(std::move(next));
      }
    }
  }
  return order;
}

/// {g in group : g·point = point}, by filtering the enumerated group.
template <typename T, typename Action>
PermutationGroup stabilizer_of(const PermutationGroup& group, const T& point, Action&& action) {
  std::vector<Permutation> keep;
  for (const auto& g : group.elements())
    if (action(g, point) == point) keep.push_back(g);
  auto gens = generating_subset(group.degree(), keep, group.order_cap());
  return PermutationGroup(group.degree(), std::move(gens), group.order_cap())
      .with_membership([group, point, action](const Permutation& g) {
        return group.contains(g) && action(g, point) == point;
      });
}

struct ConjugacyClassDatum {
  Partition cycle_type;
  Permutation representative;
  Integer class_size;
};

/// z_μ = Π_i i^{a_i} a_i!
inline Integer centralizer_order(const Partition& mu) {
  Integer z = 1;
  const auto& p = mu.parts();
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    const auto mult = static_cast<int>(j - i);
    for (int k = 0; k < mult; ++k) z *= p[i];
    z *= factorial(mult);
    i = j;
  }
  return z;
}

/// Permutation with consecutive cycles of the given lengths.
inline Permutation permutation_of_type(const Partition& mu) {
  std::vector<int> img(static_cast<std::size_t>(mu.size()));
  int start = 0;
  for (int len : mu.parts()) {
    for (int k = 0; k < len; ++k) img[static_cast<std::size_t>(start + k)] = start + (k + 1) % len;
    start += len;
  }
  return Permutation(std::move(img));
}

/// One datum per partition of n, in reverse lexicographic order of cycle
/// type. Cached per n.
inline const std::vector<ConjugacyClassDatum>& conjugacy_classes(int n, int cap = Limits{}.class_degree) {
  if (n < 0) throw InvalidArgument("conjugacy_classes: negative degree");
  if (n > cap) throw CapExceeded("conjugacy class degree " + std::to_string(n), static_cast<std::size_t>(cap));
  static std::mutex mutex;
  static std::map<int, std::vector<ConjugacyClassDatum>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<ConjugacyClassDatum> out;
  const Integer nf = factorial(n);
  for (auto& mu : partitions_of(n)) {
    auto rep = permutation_of_type(mu);
    Integer size = nf / centralizer_order(mu);
    out.push_back({std::move(mu), std::move(rep), std::move(size)});
  }
  return cache.emplace(n, std::move(out)).first->second;
}

/// Orbits of a group on its points {0..degree-1}, each sorted, ordered by
/// smallest point.
inline std::vector<std::vector<int>> point_orbits(const PermutationGroup& group) {
  const int n = group.degree();
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& g : group.generators())
    for (int i = 0; i < n; ++i) {
      int a = find(i), b = find(g(i));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, pts] : groups) out.push_back(std::move(pts));
  return out;
}

struct ProductDecomposition {
  enum class Kind { Found, Absent, Undecided };
  Kind kind = Kind::Absent;
  /// H, relabelled onto positions 1..|B| of the sorted block B.
  std::optional<PermutationGroup> factor;
  /// Points of [n] (0-based) moved onto B by the conjugation.
  std::vector<int> moved_block;
  std::string note;
};

/// Decides whether G is conjugate to Sym([n]∖B) × H for some H ⊆ Sym(B).
/// The complement of B must map to an orbit A of G with Sym(A) ⊆ G; the
/// orbit containing the last point is tried first.
inline ProductDecomposition is_conjugate_to_product(const PermutationGroup& G, const std::vector<int>& block) {
  const int n = G.degree();
  const int m = static_cast<int>(block.size());
  std::vector<int> B = block;
  std::sort(B.begin(), B.end());
  if (std::adjacent_find(B.begin(), B.end()) != B.end() || (m > 0 && (B.front() < 0 || B.back() >= n)))
    throw InvalidArgument("is_conjugate_to_product: block must be distinct points of [n]");
  const int a = n - m;

  std::vector<std::vector<int>> candidates;
  if (a == 0) {
    candidates.emplace_back();
  } else {
    auto orbits = point_orbits(G);
    std::vector<std::vector<int>> sized;
    for (auto& o : orbits)
      if (static_cast<int>(o.size()) == a) sized.push_back(o);
    if (a == 1) {
      // any fixed point works; prefer the largest
      std::reverse(sized.begin(), sized.end());
    } else {
      std::stable_partition(sized.begin(), sized.end(),
                            [n](const std::vector<int>& o) { return o.back() == n - 1; });
    }
    candidates = std::move(sized);
  }

  ProductDecomposition result;
  bool undecided = false;
  for (const auto& A : candidates) {
    bool full = true;
    try {
      for (std::size_t i = 0; i + 1 < A.size() && full; ++i)
        full = G.contains(Permutation::transposition(n, A[i], A[i + 1]));
    } catch (const CapExceeded& e) {
      undecided = true;
      result.note = e.what();
      continue;
    }
    if (!full) continue;
    std::vector<int> rest;
    for (int p = 0, k = 0; p < n; ++p) {
      if (k < static_cast<int>(A.size()) && A[static_cast<std::size_t>(k)] == p) {
        ++k;
        continue;
      }
      rest.push_back(p);
    }
    // relabel the complement of A onto 0..m-1 in increasing order
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < m; ++i) pos[static_cast<std::size_t>(rest[static_cast<std::size_t>(i)])] = i;
    std::vector<Permutation> hgens;
    for (const auto& g : G.generators()) {
      std::vector<int> img(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(g(rest[static_cast<std::size_t>(i)]))];
      Permutation h(std::move(img));
      if (!h.is_identity() && std::find(hgens.begin(), hgens.end(), h) == hgens.end())
        hgens.push_back(std::move(h));
    }
    std::sort(hgens.begin(), hgens.end());
    result.kind = ProductDecomposition::Kind::Found;
    result.factor = PermutationGroup(m, std::move(hgens), G.order_cap());
    result.moved_block = std::move(rest);
    return result;
  }
  result.kind = undecided ? ProductDecomposition::Kind::Undecided : ProductDecomposition::Kind::Absent;
  return result;
}

}  // namespace fistab

#endif  // FISTAB_PERMGROUP_HPP
