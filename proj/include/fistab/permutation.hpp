#ifndef FISTAB_PERMUTATION_HPP
#define FISTAB_PERMUTATION_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fistab/error.hpp"

namespace fistab {

/// A bijection of {0, ..., degree-1}. Cycle notation and the public
/// image accessors use the 1-based labels of [n].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)])
        throw InvalidArgument("image sequence is not a bijection");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  static Permutation identity(int degree) {
    std::vector<int> v(static_cast<std::size_t>(degree));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v), Unchecked{});
  }

  /// From 1-based images, e.g. {2, 1, 3} is (1 2).
  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<int> v(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) v[i] = images[i] - 1;
    return Permutation(std::move(v));
  }

  /// Transposition of the 0-based points a and b.
  static Permutation transposition(int degree, int a, int b) {
    auto p = identity(degree);
    std::swap(p.images_[static_cast<std::size_t>(a)], p.images_[static_cast<std::size_t>(b)]);
    return p;
  }

  /// Parses "(1 2)(3 4 5)"; "()" is the identity.
  static Permutation parse_cycles(std::string_view text, int degree) {
    auto p = identity(degree);
    std::vector<char> used(static_cast<std::size_t>(degree), 0);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty cycle notation");
    while (i < text.size()) {
      if (text[i] != '(') throw ParseError("expected '(' in cycle notation '" + std::string(text) + "'");
      ++i;
      std::vector<int> cycle;
      for (;;) {
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          throw ParseError("malformed cycle notation '" + std::string(text) + "'");
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          v = v * 10 + (text[i++] - '0');
        if (v < 1 || v > degree)
          throw ParseError("point " + std::to_string(v) + " outside [" + std::to_string(degree) + "]");
        if (used[static_cast<std::size_t>(v - 1)])
          throw ParseError("point " + std::to_string(v) + " repeated in cycle notation");
        used[static_cast<std::size_t>(v - 1)] = 1;
        cycle.push_back(v - 1);
      }
      for (std::size_t k = 0; k < cycle.size(); ++k)
        p.images_[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
      skip_ws();
    }
    return p;
  }

  int degree() const { return static_cast<int>(images_.size()); }
  /// 0-based image.
  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }
  std::span<const int> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv), Unchecked{});
  }

  /// Cycle lengths, descending.
  std::vector<int> cycle_type() const {
    std::vector<char> seen(images_.size(), 0);
    std::vector<int> lens;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
        seen[j] = 1;
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
  }

  std::string to_cycles() const {
    std::string out;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == static_cast<int>(i)) continue;
      out += '(';
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
        seen[j] = 1;
        if (!first) out += ' ';
        out += std::to_string(j + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}
  friend Permutation compose(const Permutation&, const Permutation&);

  std::vector<int> images_;
};

/// (p ∘ q)(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw InvalidArgument("compose: degree mismatch " + std::to_string(p.degree()) + " vs " +
                          std::to_string(q.degree()));
  std::vector<int> out(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p(q(static_cast<int>(i)));
  return Permutation(std::move(out), Permutation::Unchecked{});
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int v : p.images()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

/// Rank of a permutation of {0..m-1} in lexicographic order of image
/// sequences (Lehmer code).
inline std::size_t lex_rank(std::span<const int> images) {
  const std::size_t m = images.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < m; ++j)
      if (images[j] < images[i]) ++smaller;
    rank = rank * (m - i) + smaller;
  }
  return rank;
}

/// All permutations of degree m in lexicographic order.
inline std::vector<Permutation> all_permutations(int m) {
  std::vector<Permutation> out;
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace fistab

#endif  // FISTAB_PERMUTATION_HPP
