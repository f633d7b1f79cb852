#ifndef FISTAB_CHARACTERS_HPP
#define FISTAB_CHARACTERS_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/partition.hpp"
#include "fistab/permgroup.hpp"
#include "fistab/rational.hpp"

namespace fistab {

namespace detail {

inline std::vector<int> beta_set(const std::vector<int>& parts) {
  const int len = static_cast<int>(parts.size());
  std::vector<int> beta(parts.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)] + len - 1 - i;
  return beta;  // strictly decreasing
}

inline std::vector<int> from_beta_set(std::vector<int> beta) {
  std::sort(beta.rbegin(), beta.rend());
  const int len = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 0; i < len; ++i) {
    int p = beta[static_cast<std::size_t>(i)] - (len - 1 - i);
    if (p > 0) parts.push_back(p);
  }
  return parts;
}

class CharacterTableCache {
 public:
  std::int64_t value(const std::vector<int>& shape, const std::vector<int>& cycles) {
    if (shape.empty() && cycles.empty()) return 1;
    {
      std::lock_guard lock(mutex_);
      auto it = memo_.find({shape, cycles});
      if (it != memo_.end()) return it->second;
    }
    // strip the largest remaining cycle as a rim hook
    const int r = cycles.front();
    std::vector<int> rest(cycles.begin() + 1, cycles.end());
    auto beta = beta_set(shape);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      const int target = beta[i] - r;
      if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
      int between = 0;
      for (int b : beta)
        if (b > target && b < beta[i]) ++between;
      auto moved = beta;
      moved[i] = target;
      const std::int64_t sub = value(from_beta_set(std::move(moved)), rest);
      total += (between % 2 == 0) ? sub : -sub;
    }
    std::lock_guard lock(mutex_);
    memo_.emplace(std::make_pair(shape, cycles), total);
    return total;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> memo_;
};

inline CharacterTableCache& character_cache() {
  static CharacterTableCache cache;
  return cache;
}

}  // namespace detail

/// χ_μ evaluated on the class of cycle type ρ (Murnaghan–Nakayama).
inline std::int64_t mn_character(const Partition& mu, const Partition& rho) {
  if (mu.size() != rho.size())
    throw InvalidArgument("mn_character: |" + mu.to_string() + "| != |" + rho.to_string() + "|");
  return detail::character_cache().value(mu.parts(), rho.parts());
}

/// Multiplicities c_ν of 𝕊(ν) in Ind_H^{S_m} 1, for all ν ⊢ m.
inline std::map<Partition, Integer> decompose_trivial_induction(const PermutationGroup& H) {
  const int m = H.degree();
  std::map<Partition, Integer> counts;
  for (const auto& h : H.elements()) {
    auto ct = Partition(h.cycle_type());
    counts[ct] += 1;
  }
  const Integer order = H.elements().size();
  std::map<Partition, Integer> out;
  for (const auto& nu : partitions_of(m)) {
    Integer sum = 0;
    for (const auto& [rho, cnt] : counts) sum += cnt * mn_character(nu, rho);
    if (sum % order != 0) throw MathError("non-integral induced multiplicity");
    out.emplace(nu, sum / order);
  }
  return out;
}

/// ⟨χ, ψ⟩ for class functions given as per-class values over conjugacy_classes(n).
inline Rational class_inner_product(int n, const std::vector<Rational>& f, const std::vector<Rational>& g) {
  const auto& classes = conjugacy_classes(n);
  Rational sum = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) sum += Rational(classes[i].class_size) * f[i] * g[i];
  return sum / Rational(factorial(n));
}

}  // namespace fistab

#endif  // FISTAB_CHARACTERS_HPP
