#ifndef FISTAB_MULTIPLICITY_HPP
#define FISTAB_MULTIPLICITY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "fistab/characters.hpp"
#include "fistab/error.hpp"
#include "fistab/fiset.hpp"
#include "fistab/partition.hpp"
#include "fistab/permgroup.hpp"
#include "fistab/rational.hpp"

namespace fistab {

/// Fixed-point counts of each conjugacy class of S_n on X_n, in the order of
/// conjugacy_classes(n).
inline std::vector<Integer> permutation_character(const FISet& X, int n) {
  const auto& classes = conjugacy_classes(n, X.limits().class_degree);
  std::vector<Integer> out;
  out.reserve(classes.size());
  for (const auto& cls : classes) out.emplace_back(static_cast<unsigned long>(fixed_points(X, n, cls.representative)));
  return out;
}

/// Multiplicity of 𝕊(λ[n]) in kX_n as a character inner product; zero when
/// λ[n] is undefined.
inline Integer per_n_multiplicity(const FISet& X, int n, const Partition& lambda,
                                  const std::vector<Integer>& fixed) {
  auto shape = pad(lambda, n);
  if (!shape) return 0;
  const auto& classes = conjugacy_classes(n, X.limits().class_degree);
  Integer sum = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    sum += classes[i].class_size * fixed[i] * mn_character(*shape, classes[i].cycle_type);
  const Integer nf = factorial(n);
  if (sum % nf != 0) throw MathError("non-integral multiplicity for " + lambda.to_string());
  return sum / nf;
}

inline Integer per_n_multiplicity(const FISet& X, int n, const Partition& lambda) {
  return per_n_multiplicity(X, n, lambda, permutation_character(X, n));
}

/// Pieri count for a pure induced union: Σ_i Σ_{ν ⊢ m_i} c_ν · [λ, ν interlace].
inline Integer pieri_multiplicity(const FISet& X, const Partition& lambda) {
  if (!X.is_induced()) throw InvalidArgument("Pieri multiplicity needs a spec without identifications");
  Integer total = 0;
  for (const auto& orbit : X.spec().orbits)
    for (const auto& [nu, c] : decompose_trivial_induction(orbit.H))
      if (c != 0 && interlaces(lambda, nu)) total += c;
  return total;
}

/// First degree from which per_n_multiplicity(X, n, λ) is expected to be
/// stable: the padding must exist, every ν ⊢ m_i must fit in the first row,
/// and for quotients the orbit structure must have settled.
inline int multiplicity_stable_from(const FISet& X, const Partition& lambda, int stable_start) {
  return std::max({stable_start, min_padding_degree(lambda), lambda.size() + X.max_generation_degree()});
}

/// Stable multiplicity m_λ. Induced unions use Pieri; quotients compare two
/// consecutive stable degrees and throw if they disagree.
inline Integer stable_multiplicity(const FISet& X, const Partition& lambda, const StableRange& range) {
  if (X.is_induced()) return pieri_multiplicity(X, lambda);
  if (!range.start) throw Error("stable range not detected; stable multiplicity undecided");
  const int n = multiplicity_stable_from(X, lambda, *range.start);
  Integer a = per_n_multiplicity(X, n, lambda), b = per_n_multiplicity(X, n + 1, lambda);
  if (a != b)
    throw Error("multiplicity of " + lambda.to_string() + " differs at degrees " + std::to_string(n) + " and " +
                std::to_string(n + 1));
  return a;
}

inline Integer stable_multiplicity(const FISet& X, const Partition& lambda, int n_max = 10) {
  if (X.is_induced()) return pieri_multiplicity(X, lambda);
  return stable_multiplicity(X, lambda, detect_stable_range(X, n_max));
}

}  // namespace fistab

#endif  // FISTAB_MULTIPLICITY_HPP
