#ifndef FISTAB_RATIONAL_HPP
#define FISTAB_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fistab/error.hpp"

namespace fistab {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw ParseError("malformed rational literal '" + s + "'");
  q.canonicalize();
  return q;
}

inline Integer factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. Used both for polynomials in the degree variable n and, at a fixed
/// n, for characteristic polynomials in x.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs)
      : coeffs_(std::move(coeffs)) {
    trim();
  }
  RationalPolynomial(const Rational& c) : coeffs_{c} { trim(); }  // NOLINT
  RationalPolynomial(long c) : coeffs_{Rational(c)} { trim(); }   // NOLINT

  static RationalPolynomial variable() { return RationalPolynomial(std::vector<Rational>{0, 1}); }

  /// c * var^k
  static RationalPolynomial monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return RationalPolynomial(std::move(v));
  }

  /// (var - r)
  static RationalPolynomial linear_root(const Rational& r) {
    return RationalPolynomial(std::vector<Rational>{-r, 1});
  }

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Rational coefficient(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
  }
  Rational leading() const {
    return coeffs_.empty() ? Rational(0) : coeffs_.back();
  }

  Rational operator()(const Rational& at) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * at + *it;
    return acc;
  }

  RationalPolynomial& operator+=(const RationalPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  RationalPolynomial& operator-=(const RationalPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  RationalPolynomial& operator*=(const Rational& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
  }

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) {
    return a += b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) {
    return a -= b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& c) {
    return a *= c;
  }
  friend RationalPolynomial operator*(const RationalPolynomial& a,
                                      const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPolynomial(std::move(out));
  }
  RationalPolynomial& operator*=(const RationalPolynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  RationalPolynomial pow(unsigned e) const {
    RationalPolynomial result(1), base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  RationalPolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return RationalPolynomial(std::move(d));
  }

  /// p(inner(var))
  RationalPolynomial compose(const RationalPolynomial& inner) const {
    RationalPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * inner + RationalPolynomial(*it);
    return acc;
  }

  /// Euclidean division; divisor must be nonzero.
  std::pair<RationalPolynomial, RationalPolynomial> divmod(
      const RationalPolynomial& divisor) const {
    if (divisor.is_zero()) throw MathError("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    if (degree() < dd) return {RationalPolynomial(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
    const Rational lead = divisor.leading();
    for (int k = degree() - dd; k >= 0; --k) {
      Rational c = rem[static_cast<std::size_t>(k + dd)] / lead;
      quot[static_cast<std::size_t>(k)] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(k + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
  }

  RationalPolynomial monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
  }

  friend RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
    while (!b.is_zero()) {
      auto r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Human-readable form such as "1/2*n^2 - 5/2*n + 3".
  std::string to_string(std::string_view var = "n") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Rational& c = coeffs_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (k == 0) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1) os << mag.get_str() << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    return os.str();
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.get_str());
    return out;
  }

  static RationalPolynomial from_strings(const std::vector<std::string>& items) {
    std::vector<Rational> v;
    v.reserve(items.size());
    for (const auto& s : items) v.push_back(parse_rational(s));
    return RationalPolynomial(std::move(v));
  }

  /// Exact Lagrange interpolation through (x_i, y_i) with distinct x_i,
  /// via Newton divided differences.
  static RationalPolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
    const std::size_t k = pts.size();
    std::vector<Rational> dd(k);
    for (std::size_t i = 0; i < k; ++i) dd[i] = pts[i].second;
    for (std::size_t level = 1; level < k; ++level)
      for (std::size_t i = k - 1; i >= level; --i) {
        Rational denom = pts[i].first - pts[i - level].first;
        if (denom == 0) throw MathError("interpolation nodes must be distinct");
        dd[i] = (dd[i] - dd[i - 1]) / denom;
        if (i == level) break;
      }
    RationalPolynomial acc;
    for (std::size_t i = k; i-- > 0;) {
      acc = acc * linear_root(pts[i].first) + RationalPolynomial(dd[i]);
    }
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

namespace detail {

/// Scales a rational polynomial to a primitive integer polynomial with the
/// same roots.
inline std::vector<Integer> integer_coefficients(const RationalPolynomial& p) {
  Integer l = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(p.coefficients().size());
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

inline bool divisors_of(Integer value, std::vector<Integer>& out,
                        unsigned long trial_limit = 2'000'000) {
  value = abs(value);
  std::vector<std::pair<Integer, int>> factors;
  for (unsigned long p = 2; p <= trial_limit; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > value) break;
    int e = 0;
    while (mpz_divisible_ui_p(value.get_mpz_t(), p)) {
      value /= p;
      ++e;
    }
    if (e) factors.emplace_back(Integer(p), e);
  }
  if (value > 1) {
    if (Integer(trial_limit) * trial_limit < value &&
        mpz_probab_prime_p(value.get_mpz_t(), 30) == 0)
      return false;
    factors.emplace_back(value, 1);
  }
  out.assign(1, Integer(1));
  for (const auto& [p, e] : factors) {
    const std::size_t sz = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  return true;
}

}  // namespace detail

/// Distinct integer roots, ascending.
inline std::vector<Integer> integer_roots(const RationalPolynomial& p) {
  if (p.is_zero()) throw MathError("integer_roots of the zero polynomial");
  auto c = detail::integer_coefficients(p);
  std::vector<Integer> roots;
  std::size_t shift = 0;
  while (shift < c.size() && c[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  if (c.size() <= 1) return roots;
  auto eval = [&](const Integer& x) {
    Integer acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  std::vector<Integer> cands;
  if (detail::divisors_of(c.front(), cands)) {
    for (const auto& d : cands) {
      // a root must also make the leading coefficient divisible appropriately;
      // exact evaluation settles it
      if (eval(d) == 0) roots.push_back(d);
      if (eval(-d) == 0) roots.push_back(-d);
    }
  } else {
    // Cauchy bound fallback
    Integer bound = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      Integer q = abs(c[i]) / abs(c.back()) + 1;
      if (q > bound) bound = q;
    }
    bound += 1;
    if (bound > 10'000'000) throw MathError("integer root search exceeds bound");
    for (Integer x = -bound; x <= bound; ++x)
      if (x != 0 && eval(x) == 0) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Number of distinct real roots, by Sturm sequence.
inline int count_real_roots(const RationalPolynomial& p) {
  if (p.degree() <= 0) return 0;
  RationalPolynomial sf = p.divmod(gcd(p, p.derivative())).first;
  std::vector<RationalPolynomial> seq{sf, sf.derivative()};
  while (!seq.back().is_zero()) {
    auto r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto changes = [&](bool at_plus_inf) {
    int count = 0;
    int prev = 0;
    for (const auto& q : seq) {
      if (q.is_zero()) continue;
      int s = sgn(q.leading());
      if (!at_plus_inf && (q.degree() % 2 == 1)) s = -s;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

inline Rational pow_rational(Rational base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Resultant of two univariate polynomials via the Sylvester determinant.
inline Rational resultant(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int da = a.degree(), db = b.degree();
  if (da == 0) return pow_rational(a.leading(), db);
  if (db == 0) return pow_rational(b.leading(), da);
  const int size = da + db;
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(size),
                                       std::vector<Rational>(static_cast<std::size_t>(size)));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) m[r][r + k] = a.coefficient(static_cast<std::size_t>(da - k));
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) m[db + r][r + k] = b.coefficient(static_cast<std::size_t>(db - k));
  Rational det = 1;
  for (int col = 0; col < size; ++col) {
    int piv = -1;
    for (int r = col; r < size; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < size; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (int c2 = col; c2 < size; ++c2) m[r][c2] -= f * m[col][c2];
    }
  }
  return det;
}

}  // namespace fistab

#endif  // FISTAB_RATIONAL_HPP
