#ifndef FISTAB_PARTITION_HPP
#define FISTAB_PARTITION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/rational.hpp"

namespace fistab {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw InvalidArgument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw InvalidArgument("partition parts must be weakly decreasing");
    }
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Sorts and drops zeros.
  static Partition from_unsorted(std::vector<int> parts) {
    std::erase(parts, 0);
    std::sort(parts.rbegin(), parts.rend());
    return Partition(std::move(parts));
  }

  /// Accepts "[3,1,1]" or "[]".
  static Partition parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw ParseError("partition must look like [3,1,1], got '" + std::string(text) + "'");
    std::vector<int> parts;
    std::string body = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
        throw ParseError("bad partition part '" + tok + "'");
      parts.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  /// Part j (0-based), zero beyond the length.
  int part(std::size_t j) const { return j < parts_.size() ? parts_[j] : 0; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// λ[n] = (n − |λ|, λ_1, ..., λ_r), or nullopt when n − |λ| < λ_1 (the
/// corresponding Specht module is taken to be zero).
inline std::optional<Partition> pad(const Partition& lambda, int n) {
  const int first = n - lambda.size();
  if (first < lambda.part(0) || first < 0) return std::nullopt;
  std::vector<int> parts;
  if (first > 0) parts.push_back(first);
  parts.insert(parts.end(), lambda.parts().begin(), lambda.parts().end());
  return Partition(std::move(parts));
}

/// Smallest n for which pad(lambda, n) is defined.
inline int min_padding_degree(const Partition& lambda) { return lambda.size() + lambda.part(0); }

/// Partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// All partitions with |λ| <= bound, grouped by size.
inline std::vector<Partition> partitions_up_to(int bound) {
  std::vector<Partition> out;
  for (int k = 0; k <= bound; ++k) {
    auto ps = partitions_of(k);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

/// |μ|! / Π hook lengths.
inline Integer hook_dimension(const Partition& mu) {
  Integer prod = 1;
  const auto& p = mu.parts();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j < p[i]; ++j) {
      int arm = p[i] - j - 1;
      int leg = 0;
      for (std::size_t k = i + 1; k < p.size() && p[k] > j; ++k) ++leg;
      prod *= arm + leg + 1;
    }
  return factorial(mu.size()) / prod;
}

/// True iff ν ⊆ μ and μ/ν has at most one cell per column.
inline bool horizontal_strip(const Partition& nu, const Partition& mu) {
  if (nu.length() > mu.length()) return false;
  for (std::size_t j = 0; j < static_cast<std::size_t>(mu.length()); ++j) {
    if (nu.part(j) > mu.part(j)) return false;
    if (mu.part(j + 1) > nu.part(j)) return false;
  }
  return true;
}

/// Large-n form of the Pieri condition: λ[n]/ν is a horizontal strip for all
/// large n iff λ_j <= ν_j <= λ_{j-1} (λ_0 = ∞).
inline bool interlaces(const Partition& lambda, const Partition& nu) {
  const std::size_t len = static_cast<std::size_t>(std::max(lambda.length(), nu.length()));
  for (std::size_t j = 0; j < len + 1; ++j) {
    if (nu.part(j) < lambda.part(j)) return false;
    if (j > 0 && nu.part(j) > lambda.part(j - 1)) return false;
  }
  return true;
}

/// dim 𝕊(λ[n]) as a polynomial in n, by exact interpolation at |λ|+1 points
/// and checked at two further points.
inline RationalPolynomial dimension_polynomial(const Partition& lambda) {
  const int start = min_padding_degree(lambda);
  const int k = lambda.size();
  std::vector<std::pair<Rational, Rational>> pts;
  for (int n = start; n <= start + k; ++n)
    pts.emplace_back(Rational(n), Rational(hook_dimension(*pad(lambda, n))));
  auto poly = RationalPolynomial::interpolate(pts);
  for (int n = start + k + 1; n <= start + k + 2; ++n)
    if (poly(Rational(n)) != Rational(hook_dimension(*pad(lambda, n))))
      throw MathError("dimension polynomial verification failed for " + lambda.to_string());
  return poly;
}

}  // namespace fistab

#endif  // FISTAB_PARTITION_HPP
