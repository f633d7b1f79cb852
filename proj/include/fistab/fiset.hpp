#ifndef FISTAB_FISET_HPP
#define FISTAB_FISET_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/permgroup.hpp"
#include "fistab/permutation.hpp"
#include "fistab/rational.hpp"

namespace fistab {

/// One induced piece M(S_m/H): elements at degree n are pairs (K, xH)
/// with K an m-subset of [n] and xH a left coset of H in S_m.
struct InducedOrbitSpec {
  int m = 0;
  PermutationGroup H;
  std::string label;
};

/// Canonical element: orbit index, sorted 1-based support, coset index.
/// Coset indices follow the lexicographic order of the canonical
/// (lexicographically minimal) coset representatives.
struct ElementRep {
  std::size_t orbit = 0;
  std::vector<int> support;
  std::size_t coset = 0;

  friend auto operator<=>(const ElementRep&, const ElementRep&) = default;
  friend bool operator==(const ElementRep&, const ElementRep&) = default;
};

struct Identification {
  int degree = 0;
  ElementRep a;
  ElementRep b;
  friend bool operator==(const Identification&, const Identification&) = default;
};

struct FISetSpec {
  std::vector<InducedOrbitSpec> orbits;
  std::vector<Identification> identifications;
};

namespace detail {

inline std::uint64_t small_binomial(int n, int k) {
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(64, std::vector<std::uint64_t>(64, 0));
    for (int i = 0; i < 64; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j < i ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (k < 0 || n < 0 || k > n) return 0;
  if (n >= 64) throw CapExceeded("binomial table degree", 63);
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

/// Lexicographic rank of a sorted 1-based m-subset of [n].
inline std::uint64_t subset_rank(const std::vector<int>& support, int n) {
  const int m = static_cast<int>(support.size());
  std::uint64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = prev + 1; j < support[static_cast<std::size_t>(i)]; ++j)
      rank += small_binomial(n - j, m - i - 1);
    prev = support[static_cast<std::size_t>(i)];
  }
  return rank;
}

/// Coset bookkeeping for S_m/H.
struct OrbitModel {
  int m = 0;
  std::vector<Permutation> coset_rep;          // canonical representatives
  std::vector<std::size_t> coset_of_rank;      // lex rank of σ ∈ S_m -> coset
  std::vector<std::vector<std::size_t>> adjacent;  // [j][c]: (j j+1)·c

  explicit OrbitModel(const InducedOrbitSpec& spec) : m(spec.m) {
    const auto& H = spec.H.elements();
    const auto all = all_permutations(m);
    const std::size_t unset = static_cast<std::size_t>(-1);
    coset_of_rank.assign(all.size(), unset);
    for (std::size_t r = 0; r < all.size(); ++r) {
      if (coset_of_rank[r] != unset) continue;
      const std::size_t idx = coset_rep.size();
      coset_rep.push_back(all[r]);
      for (const auto& h : H) coset_of_rank[lex_rank(compose(all[r], h).images())] = idx;
    }
    adjacent.resize(static_cast<std::size_t>(std::max(0, m - 1)));
    for (int j = 0; j + 1 < m; ++j) {
      auto t = Permutation::transposition(m, j, j + 1);
      for (std::size_t c = 0; c < coset_rep.size(); ++c) adjacent[static_cast<std::size_t>(j)].push_back(act(t, c));
    }
  }

  std::size_t num_cosets() const { return coset_rep.size(); }

  std::size_t act(const Permutation& sigma, std::size_t coset) const {
    return coset_of_rank[lex_rank(compose(sigma, coset_rep[coset]).images())];
  }
  std::size_t coset_of(const Permutation& sigma) const { return coset_of_rank[lex_rank(sigma.images())]; }
};

}  // namespace detail

class FISet;

/// X_n for one degree: the elements of the induced cover and, when the FISetSpec
/// carries identifications, the quotient classes. Class indices follow the
/// order of their minimal cover element.
class Level {
 public:
  int degree() const { return n_; }
  std::size_t size() const { return rep_.size(); }
  std::size_t cover_size() const { return cover_.size(); }
  bool is_quotient() const { return quotient_; }

  const ElementRep& element(std::size_t cls) const { return cover_[rep_[cls]]; }
  const ElementRep& cover_element(std::size_t idx) const { return cover_[idx]; }
  std::size_t class_of_cover(std::size_t idx) const { return class_of_[idx]; }

  /// Index into the cover; throws if e is not an element at this degree.
  std::size_t cover_index(const ElementRep& e) const {
    if (e.orbit >= models_->size()) throw InvalidArgument("element orbit index out of range");
    const auto& model = (*models_)[e.orbit];
    if (static_cast<int>(e.support.size()) != model.m || e.coset >= model.num_cosets())
      throw InvalidArgument("element shape does not match its orbit");
    for (std::size_t i = 0; i < e.support.size(); ++i)
      if (e.support[i] < 1 || e.support[i] > n_ || (i && e.support[i] <= e.support[i - 1]))
        throw InvalidArgument("element support is not a sorted subset of [" + std::to_string(n_) + "]");
    return offset_[e.orbit] + detail::subset_rank(e.support, n_) * model.num_cosets() + e.coset;
  }

  std::size_t index_of(const ElementRep& e) const { return class_of_[cover_index(e)]; }

  /// Image of a cover element under an injection [n] → [p] given by 0-based
  /// images; the result is a cover element at degree p.
  ElementRep push_cover(const ElementRep& e, const std::vector<int>& g) const {
    const auto& model = (*models_)[e.orbit];
    const std::size_t m = e.support.size();
    std::vector<int> imgs(m);
    for (std::size_t j = 0; j < m; ++j) imgs[j] = g[static_cast<std::size_t>(e.support[j] - 1)] + 1;
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return imgs[static_cast<std::size_t>(a)] < imgs[static_cast<std::size_t>(b)]; });
    std::vector<int> sigma(m);
    ElementRep out{e.orbit, std::vector<int>(m), 0};
    for (std::size_t pos = 0; pos < m; ++pos) {
      out.support[pos] = imgs[static_cast<std::size_t>(order[pos])];
      sigma[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
    }
    out.coset = model.act(Permutation(std::move(sigma)), e.coset);
    return out;
  }

  /// Adjacent transposition swapping the 1-based points i and i+1, on a cover index.
  std::size_t adjacent_cover(std::size_t idx, int i) const {
    const ElementRep& e = cover_[idx];
    auto lo = std::lower_bound(e.support.begin(), e.support.end(), i);
    const bool has_i = lo != e.support.end() && *lo == i;
    auto hi = has_i ? lo + 1 : lo;
    const bool has_next = hi != e.support.end() && *hi == i + 1;
    if (!has_i && !has_next) return idx;
    ElementRep out = e;
    if (has_i && has_next) {
      const auto j = static_cast<std::size_t>(lo - e.support.begin());
      out.coset = (*models_)[e.orbit].adjacent[j][e.coset];
    } else if (has_i) {
      out.support[static_cast<std::size_t>(lo - e.support.begin())] = i + 1;
    } else {
      out.support[static_cast<std::size_t>(hi - e.support.begin())] = i;
    }
    return cover_index(out);
  }

  std::size_t apply_adjacent(std::size_t cls, int i) const {
    return class_of_[adjacent_cover(rep_[cls], i)];
  }

  std::size_t apply(const Permutation& g, std::size_t cls) const {
    if (g.degree() != n_) throw InvalidArgument("permutation degree does not match level");
    std::vector<int> imgs(g.images().begin(), g.images().end());
    return class_of_[cover_index(push_cover(cover_[rep_[cls]], imgs))];
  }

  /// Class index of g·x for every class x.
  std::vector<std::size_t> permutation_action(const Permutation& g) const {
    std::vector<std::size_t> out(size());
    for (std::size_t c = 0; c < size(); ++c) out[c] = apply(g, c);
    return out;
  }

 private:
  friend class FISet;
  int n_ = 0;
  bool quotient_ = false;
  std::shared_ptr<const std::vector<detail::OrbitModel>> models_;
  std::vector<std::size_t> offset_;
  std::vector<ElementRep> cover_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> rep_;
};

/// A finitely generated FI-set: a disjoint union of induced orbits, possibly
/// with degree-tagged identifications generating an FI-compatible quotient.
class FISet {
 public:
  explicit FISet(FISetSpec spec, Limits limits = {})
      : spec_(std::move(spec)), limits_(limits), cache_(std::make_shared<Cache>()) {
    auto models = std::make_shared<std::vector<detail::OrbitModel>>();
    std::set<std::string> labels;
    for (const auto& o : spec_.orbits) {
      if (o.m < 0) throw InvalidArgument("orbit generation degree must be nonnegative");
      if (o.H.degree() != o.m)
        throw InvalidArgument("orbit '" + o.label + "': H has degree " + std::to_string(o.H.degree()) +
                              " but m = " + std::to_string(o.m));
      if (!labels.insert(o.label).second) throw InvalidArgument("duplicate orbit label '" + o.label + "'");
      models->emplace_back(o);
    }
    models_ = std::move(models);
    for (const auto& id : spec_.identifications) {
      validate(id.a, id.degree);
      validate(id.b, id.degree);
    }
  }

  const FISetSpec& spec() const { return spec_; }
  const Limits& limits() const { return limits_; }
  bool is_induced() const { return spec_.identifications.empty(); }
  std::size_t num_orbits() const { return spec_.orbits.size(); }
  std::size_t num_cosets(std::size_t orbit) const { return (*models_)[orbit].num_cosets(); }
  const Permutation& coset_representative(std::size_t orbit, std::size_t coset) const {
    return (*models_)[orbit].coset_rep[coset];
  }

  int max_generation_degree() const {
    int d = 0;
    for (const auto& o : spec_.orbits) d = std::max(d, o.m);
    return d;
  }

  int max_identification_degree() const {
    int d = 0;
    for (const auto& id : spec_.identifications) d = std::max(d, id.degree);
    return d;
  }

  std::size_t orbit_index(std::string_view label) const {
    for (std::size_t i = 0; i < spec_.orbits.size(); ++i)
      if (spec_.orbits[i].label == label) return i;
    throw InvalidArgument("unknown orbit label '" + std::string(label) + "'");
  }

  /// Builds the canonical element (label, K, coset of the given permutation).
  ElementRep make_element(std::string_view label, std::vector<int> support, const Permutation& member) const {
    const std::size_t orbit = orbit_index(label);
    const auto& model = (*models_)[orbit];
    if (member.degree() != model.m)
      throw InvalidArgument("coset permutation degree does not match m = " + std::to_string(model.m));
    if (static_cast<int>(support.size()) != model.m)
      throw InvalidArgument("support size does not match m = " + std::to_string(model.m));
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] < 1 || (i && support[i] <= support[i - 1]))
        throw InvalidArgument("support must be strictly increasing positive points");
    return ElementRep{orbit, std::move(support), model.coset_of(member)};
  }

  /// label:K=[1,3]:coset="(1 2)"
  std::string describe(const ElementRep& e) const {
    std::string s = spec_.orbits.at(e.orbit).label + ":K=[";
    for (std::size_t i = 0; i < e.support.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(e.support[i]);
    }
    return s + "]:coset=\"" + (*models_)[e.orbit].coset_rep.at(e.coset).to_cycles() + "\"";
  }

  void validate(const ElementRep& e, int n) const {
    if (e.orbit >= spec_.orbits.size()) throw InvalidArgument("element orbit index out of range");
    const auto& model = (*models_)[e.orbit];
    if (static_cast<int>(e.support.size()) != model.m)
      throw InvalidArgument("element support size differs from m");
    if (e.coset >= model.num_cosets()) throw InvalidArgument("element coset index out of range");
    for (std::size_t i = 0; i < e.support.size(); ++i)
      if (e.support[i] < 1 || e.support[i] > n || (i && e.support[i] <= e.support[i - 1]))
        throw InvalidArgument("element " + describe(e) + " is not valid at degree " + std::to_string(n));
  }

  /// |M_n| of the induced cover: Σ binom(n, m_i)·[S_{m_i} : H_i].
  std::uint64_t cover_size(int n) const {
    std::uint64_t total = 0;
    for (const auto& model : *models_) total += detail::small_binomial(n, model.m) * model.num_cosets();
    return total;
  }

  std::shared_ptr<const Level> evaluate(int n) const {
    if (n < 0) throw InvalidArgument("degree must be nonnegative");
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->levels.find(n);
      if (it != cache_->levels.end()) return it->second;
    }
    auto level = build_level(n);
    std::lock_guard lock(cache_->mutex);
    return cache_->levels.emplace(n, std::move(level)).first->second;
  }

  /// g_*(x) for an injection g: [n] → [p] given by 1-based images.
  ElementRep transition(int n, const ElementRep& x, const std::vector<int>& g, int p) const {
    if (static_cast<int>(g.size()) != n) throw InvalidArgument("injection has wrong source size");
    std::vector<char> hit(static_cast<std::size_t>(p), 0);
    std::vector<int> zero_based(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] < 1 || g[i] > p || hit[static_cast<std::size_t>(g[i] - 1)])
        throw InvalidArgument("map is not an injection into [" + std::to_string(p) + "]");
      hit[static_cast<std::size_t>(g[i] - 1)] = 1;
      zero_based[i] = g[i] - 1;
    }
    auto src = evaluate(n);
    src->cover_index(x);
    auto dst = evaluate(p);
    auto pushed = src->push_cover(x, zero_based);
    return dst->element(dst->index_of(pushed));
  }

  /// Push along the standard inclusion [n] ⊆ [p].
  ElementRep include(int n, const ElementRep& x, int p) const {
    std::vector<int> g(static_cast<std::size_t>(n));
    std::iota(g.begin(), g.end(), 1);
    return transition(n, x, g, p);
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, std::shared_ptr<const Level>> levels;
  };

  std::shared_ptr<const Level> build_level(int n) const {
    const std::uint64_t total = cover_size(n);
    if (total > limits_.fiset_size) throw CapExceeded("FI-set size at degree " + std::to_string(n), limits_.fiset_size);
    auto level = std::make_shared<Level>();
    level->n_ = n;
    level->models_ = models_;
    level->cover_.reserve(total);
    for (std::size_t o = 0; o < models_->size(); ++o) {
      level->offset_.push_back(level->cover_.size());
      const auto& model = (*models_)[o];
      if (model.m > n) continue;
      std::vector<int> K(static_cast<std::size_t>(model.m));
      std::iota(K.begin(), K.end(), 1);
      for (;;) {
        for (std::size_t c = 0; c < model.num_cosets(); ++c) level->cover_.push_back(ElementRep{o, K, c});
        int i = model.m - 1;
        while (i >= 0 && K[static_cast<std::size_t>(i)] == n - model.m + i + 1) --i;
        if (i < 0) break;
        ++K[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < model.m; ++j) K[static_cast<std::size_t>(j)] = K[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
    const std::size_t size = level->cover_.size();
    std::vector<std::size_t> parent(size);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    std::vector<std::pair<std::size_t, std::size_t>> queue;
    auto unite = [&](std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a == b) return false;
      parent[std::max(a, b)] = std::min(a, b);
      return true;
    };
    for (const auto& id : spec_.identifications) {
      if (id.degree > n) continue;
      // ι pushes keep support and coset unchanged
      const std::size_t a = level->cover_index(id.a), b = level->cover_index(id.b);
      if (unite(a, b)) queue.emplace_back(a, b);
    }
    level->quotient_ = !spec_.identifications.empty();
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto [a, b] = queue[head];
      for (int i = 1; i < n; ++i) {
        const std::size_t sa = level->adjacent_cover(a, i), sb = level->adjacent_cover(b, i);
        if (unite(sa, sb)) queue.emplace_back(sa, sb);
      }
    }
    level->class_of_.resize(size);
    std::vector<std::size_t> class_of_root(size, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t r = find(i);
      if (class_of_root[r] == static_cast<std::size_t>(-1)) {
        class_of_root[r] = level->rep_.size();
        level->rep_.push_back(i);
      }
      level->class_of_[i] = class_of_root[r];
    }
    return level;
  }

  FISetSpec spec_;
  Limits limits_;
  std::shared_ptr<const std::vector<detail::OrbitModel>> models_;
  std::shared_ptr<Cache> cache_;
};

/// Canonical class representatives of X_n.
inline std::vector<ElementRep> evaluate(const FISet& X, int n) {
  auto level = X.evaluate(n);
  std::vector<ElementRep> out;
  out.reserve(level->size());
  for (std::size_t c = 0; c < level->size(); ++c) out.push_back(level->element(c));
  return out;
}

inline ElementRep transition(const FISet& X, int n, const ElementRep& x, const std::vector<int>& g, int p) {
  return X.transition(n, x, g, p);
}

struct Orbit {
  std::size_t representative = 0;  // class index
  std::vector<std::size_t> members;  // sorted class indices
};

/// S_n-orbits on X_n, via closure under adjacent transpositions; ordered by
/// their minimal (canonical) representative.
inline std::vector<Orbit> orbits(const Level& level) {
  const std::size_t size = level.size();
  const std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> orbit_id(size, unseen);
  std::vector<Orbit> out;
  for (std::size_t start = 0; start < size; ++start) {
    if (orbit_id[start] != unseen) continue;
    Orbit o{start, {start}};
    orbit_id[start] = out.size();
    for (std::size_t head = 0; head < o.members.size(); ++head)
      for (int i = 1; i < level.degree(); ++i) {
        const std::size_t next = level.apply_adjacent(o.members[head], i);
        if (orbit_id[next] == unseen) {
          orbit_id[next] = out.size();
          o.members.push_back(next);
        }
      }
    std::sort(o.members.begin(), o.members.end());
    out.push_back(std::move(o));
  }
  return out;
}

inline std::vector<Orbit> orbits(const FISet& X, int n) { return orbits(*X.evaluate(n)); }

/// #{x ∈ X_n : g·x = x}.
inline std::size_t fixed_points(const FISet& X, int n, const Permutation& g) {
  auto level = X.evaluate(n);
  std::size_t count = 0;
  for (std::size_t c = 0; c < level->size(); ++c)
    if (level->apply(g, c) == c) ++count;
  return count;
}

/// Stabilizer of a class of X_n inside S_n, generated by Schreier generators
/// of its orbit and carrying an exact membership test.
inline PermutationGroup stabilizer_in_symmetric_group(std::shared_ptr<const Level> level, std::size_t cls,
                                                      std::size_t order_cap = Limits{}.group_order) {
  const int n = level->degree();
  std::map<std::size_t, Permutation> transversal;
  transversal.emplace(cls, Permutation::identity(n));
  std::vector<std::size_t> queue{cls};
  std::set<Permutation> gens;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t z = queue[head];
    const Permutation uz = transversal.at(z);
    for (int i = 0; i + 1 < n; ++i) {
      const auto s = Permutation::transposition(n, i, i + 1);
      const std::size_t next = level->apply_adjacent(z, i + 1);
      const Permutation su = compose(s, uz);
      auto it = transversal.find(next);
      if (it == transversal.end()) {
        transversal.emplace(next, su);
        queue.push_back(next);
        continue;
      }
      Permutation sg = compose(it->second.inverse(), su);
      if (!sg.is_identity()) gens.insert(std::move(sg));
    }
  }
  return PermutationGroup(n, std::vector<Permutation>(gens.begin(), gens.end()), order_cap)
      .with_membership([level, cls](const Permutation& g) { return level->apply(g, cls) == cls; });
}

struct DegreeStats {
  int n = 0;
  std::size_t size = 0;
  std::size_t orbit_count = 0;
  bool injective_to_next = false;       // ι_*: X_n → X_{n+1}
  bool orbit_map_bijective = false;     // X_n/S_n → X_{n+1}/S_{n+1}
};

struct StableRange {
  std::optional<int> start;
  int window = 3;
  std::vector<DegreeStats> stats;
};

/// Smallest N₀ ≤ n_max − window such that for every n in [N₀, N₀+window)
/// the inclusion X_n → X_{n+1} is injective and induces a bijection on
/// orbits.
inline StableRange detect_stable_range(const FISet& X, int n_max, int window = 3) {
  if (window < 1) throw InvalidArgument("window must be positive");
  StableRange out;
  out.window = window;
  std::vector<std::vector<Orbit>> orbs;
  for (int n = 0; n <= n_max; ++n) orbs.push_back(orbits(X, n));
  for (int n = 0; n <= n_max; ++n) {
    auto level = X.evaluate(n);
    DegreeStats st{n, level->size(), orbs[static_cast<std::size_t>(n)].size(), false, false};
    if (n < n_max) {
      auto next = X.evaluate(n + 1);
      std::vector<std::size_t> orbit_of_next(next->size());
      for (std::size_t k = 0; k < orbs[static_cast<std::size_t>(n + 1)].size(); ++k)
        for (auto c : orbs[static_cast<std::size_t>(n + 1)][k].members) orbit_of_next[c] = k;
      std::set<std::size_t> images;
      bool injective = true;
      for (std::size_t c = 0; c < level->size(); ++c) {
        auto pushed = next->index_of(level->element(c));
        if (!images.insert(pushed).second) injective = false;
      }
      std::set<std::size_t> orbit_images;
      bool orbit_injective = true;
      for (const auto& o : orbs[static_cast<std::size_t>(n)]) {
        auto pushed = next->index_of(level->element(o.representative));
        if (!orbit_images.insert(orbit_of_next[pushed]).second) orbit_injective = false;
      }
      st.injective_to_next = injective;
      st.orbit_map_bijective = orbit_injective && orbit_images.size() == orbs[static_cast<std::size_t>(n + 1)].size();
    }
    out.stats.push_back(st);
  }
  for (int start = 0; start + window <= n_max; ++start) {
    bool ok = true;
    for (int n = start; n < start + window && ok; ++n)
      ok = out.stats[static_cast<std::size_t>(n)].injective_to_next && out.stats[static_cast<std::size_t>(n)].orbit_map_bijective;
    if (ok) {
      out.start = start;
      break;
    }
  }
  return out;
}

struct DecompositionTerm {
  int m = 0;
  PermutationGroup H;
  std::size_t stable_orbit = 0;  // index among the orbits at the base degree
  ElementRep base_element;       // canonical orbit representative at the base degree
};

struct DecompositionObservation {
  int n = 0;
  std::size_t stable_orbit = 0;
  ProductDecomposition::Kind kind = ProductDecomposition::Kind::Absent;
  int m = -1;
  std::size_t h_order = 0;
};

struct Decomposition {
  bool certified = false;
  std::vector<DecompositionTerm> terms;
  int base_degree = 0;      // degree k the orbit representatives were taken at
  int certified_from = -1;  // first degree of the agreeing window
  int confirmed_at = -1;    // last degree checked
  std::vector<DecompositionObservation> observations;
  std::string note;
};

/// Observes the stabilizers G_n of ι_{k,n}(x) for each stable orbit x and
/// reports X_n ≅ ⊔ S_n/(H_i × S_{n−m_i}) once each (m_i, H_i) has been the
/// same for `window` consecutive degrees.
inline Decomposition theorem_a_decomposition(const FISet& X, int n_max, int window = 3) {
  Decomposition out;
  auto range = detect_stable_range(X, n_max, window);
  if (!range.start) {
    out.note = "stable range not detected up to degree " + std::to_string(n_max);
    return out;
  }
  const int k = *range.start;
  out.base_degree = k;
  auto base = X.evaluate(k);
  auto base_orbits = orbits(*base);
  if (base_orbits.empty()) {
    out.certified = true;
    out.certified_from = k;
    out.confirmed_at = k;
    return out;
  }
  struct Track {
    int run_start = -1;
    int m = -1;
    std::vector<Permutation> h_elements;
    std::optional<PermutationGroup> h;
  };
  std::vector<Track> tracks(base_orbits.size());
  for (int n = k + 1; n <= n_max; ++n) {
    auto level = X.evaluate(n);
    bool all_done = true;
    for (std::size_t i = 0; i < base_orbits.size(); ++i) {
      const ElementRep x = base->element(base_orbits[i].representative);
      const std::size_t cls = level->index_of(x);  // ι_{k,n} keeps the canonical form
      auto G = stabilizer_in_symmetric_group(level, cls, X.limits().group_order);
      std::vector<int> block;
      std::vector<int> orbit_of_last;
      for (const auto& o : point_orbits(G))
        if (o.back() == n - 1) orbit_of_last = o;
      for (int p = 0; p < n; ++p)
        if (!std::binary_search(orbit_of_last.begin(), orbit_of_last.end(), p)) block.push_back(p);
      auto res = is_conjugate_to_product(G, block);
      DecompositionObservation obs{n, i, res.kind, -1, 0};
      auto& t = tracks[i];
      if (res.kind == ProductDecomposition::Kind::Found) {
        std::vector<Permutation> els;
        try {
          els = res.factor->elements();
        } catch (const CapExceeded&) {
          res.kind = ProductDecomposition::Kind::Undecided;
        }
        if (res.kind == ProductDecomposition::Kind::Found) {
          obs.m = res.factor->degree();
          obs.h_order = els.size();
          if (t.run_start >= 0 && t.m == obs.m && t.h_elements == els) {
            // run continues
          } else {
            t.run_start = n;
            t.m = obs.m;
            t.h_elements = std::move(els);
            t.h = res.factor;
          }
        }
      }
      obs.kind = res.kind;
      if (res.kind != ProductDecomposition::Kind::Found) t.run_start = -1;
      out.observations.push_back(obs);
      if (t.run_start < 0 || n - t.run_start + 1 < window) all_done = false;
    }
    out.confirmed_at = n;
    if (all_done) {
      out.certified = true;
      out.certified_from = 0;
      for (std::size_t i = 0; i < tracks.size(); ++i) {
        out.certified_from = std::max(out.certified_from, tracks[i].run_start);
        const auto& gens = tracks[i].h->generators();
        auto minimal = generating_subset(tracks[i].m, tracks[i].h_elements, X.limits().group_order);
        (void)gens;
        out.terms.push_back({tracks[i].m, PermutationGroup(tracks[i].m, std::move(minimal)), i,
                             base->element(base_orbits[i].representative)});
      }
      return out;
    }
  }
  out.note = "no agreeing window of " + std::to_string(window) + " degrees up to " + std::to_string(n_max);
  return out;
}

}  // namespace fistab

#endif  // FISTAB_FISET_HPP
