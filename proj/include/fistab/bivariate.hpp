#ifndef FISTAB_BIVARIATE_HPP
#define FISTAB_BIVARIATE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/rational.hpp"

namespace fistab {

/// P(n, x) = Σ_j c_j(n) x^j, stored lowest power of x first.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<RationalPolynomial> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// x − f(n)
  static BivariatePolynomial linear(const RationalPolynomial& f) {
    return BivariatePolynomial({-f, RationalPolynomial(1L)});
  }

  const std::vector<RationalPolynomial>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const RationalPolynomial& leading() const { return coeffs_.back(); }
  RationalPolynomial coefficient(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : RationalPolynomial(); }

  /// Highest degree in n over all coefficients.
  int degree_n() const {
    int d = -1;
    for (const auto& c : coeffs_) d = std::max(d, c.degree());
    return d;
  }

  /// P(n0, x) as a polynomial in x.
  RationalPolynomial at(const Rational& n0) const {
    std::vector<Rational> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(c(n0));
    return RationalPolynomial(std::move(v));
  }

  /// P(n, f(n)) as a polynomial in n.
  RationalPolynomial substitute(const RationalPolynomial& f) const {
    RationalPolynomial acc;
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * f + coeffs_[j];
    return acc;
  }

  BivariatePolynomial derivative() const {
    std::vector<RationalPolynomial> v;
    for (std::size_t j = 1; j < coeffs_.size(); ++j) v.push_back(coeffs_[j] * Rational(static_cast<long>(j)));
    return BivariatePolynomial(std::move(v));
  }

  friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    std::vector<RationalPolynomial> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.coefficient(j) + b.coefficient(j);
    return BivariatePolynomial(std::move(v));
  }
  friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    std::vector<RationalPolynomial> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.coefficient(j) - b.coefficient(j);
    return BivariatePolynomial(std::move(v));
  }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<RationalPolynomial> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return BivariatePolynomial(std::move(v));
  }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const RationalPolynomial& c) {
    std::vector<RationalPolynomial> v;
    for (const auto& k : a.coeffs_) v.push_back(k * c);
    return BivariatePolynomial(std::move(v));
  }
  friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a.coeffs_ == b.coeffs_; }

  BivariatePolynomial pow(unsigned e) const {
    BivariatePolynomial r({RationalPolynomial(1L)});
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// gcd of the coefficients in Q[n], monic.
  RationalPolynomial content() const {
    RationalPolynomial g;
    for (const auto& c : coeffs_) g = gcd(g, c);
    return g;
  }

  BivariatePolynomial primitive_part() const {
    if (is_zero()) return {};
    const RationalPolynomial g = content();
    std::vector<RationalPolynomial> v;
    for (const auto& c : coeffs_) {
      auto [q, r] = c.divmod(g);
      if (!r.is_zero()) throw MathError("content does not divide a coefficient");
      v.push_back(std::move(q));
    }
    return BivariatePolynomial(std::move(v));
  }

  /// lc(b)^{deg a − deg b + 1} · a mod b, computed in Q[n][x].
  friend BivariatePolynomial pseudo_remainder(BivariatePolynomial a, const BivariatePolynomial& b) {
    if (b.is_zero()) throw MathError("pseudo-division by zero");
    const RationalPolynomial& lb = b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const int shift = a.degree() - b.degree();
      const RationalPolynomial la = a.leading();
      std::vector<RationalPolynomial> v(a.coeffs_.size());
      for (std::size_t j = 0; j < a.coeffs_.size(); ++j) v[j] = a.coeffs_[j] * lb;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[j + static_cast<std::size_t>(shift)] -= b.coeffs_[j] * la;
      a = BivariatePolynomial(std::move(v));
    }
    return a;
  }

  /// Exact quotient a / b in Q[n][x]; throws if b does not divide a there.
  friend BivariatePolynomial exact_divide(BivariatePolynomial a, const BivariatePolynomial& b) {
    if (b.is_zero()) throw MathError("division by zero");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw MathError("exact_divide: divisor has larger degree");
    std::vector<RationalPolynomial> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
      auto [c, r] = a.leading().divmod(b.leading());
      if (!r.is_zero()) throw MathError("exact_divide: leading coefficient does not divide");
      q[shift] = c;
      std::vector<RationalPolynomial> v = a.coeffs_;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[j + shift] -= b.coeffs_[j] * c;
      a = BivariatePolynomial(std::move(v));
    }
    if (!a.is_zero()) throw MathError("exact_divide: nonzero remainder");
    return BivariatePolynomial(std::move(q));
  }

  /// gcd over Q(n), normalized primitive with monic leading coefficient.
  friend BivariatePolynomial gcd(BivariatePolynomial a, BivariatePolynomial b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
      auto r = pseudo_remainder(a, b);
      a = std::move(b);
      b = r.is_zero() ? r : r.primitive_part();
    }
    return a.normalized();
  }

  /// Primitive part scaled so the leading coefficient is monic in n.
  BivariatePolynomial normalized() const {
    if (is_zero()) return {};
    auto p = primitive_part();
    const Rational lead = p.leading().leading();
    return p * RationalPolynomial(Rational(1) / lead);
  }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : coeffs_) out.push_back(c.to_strings());
    return out;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
      if (coeffs_[j].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string c = coeffs_[j].to_string("n");
      if (j == 0) {
        s += "(" + c + ")";
        continue;
      }
      if (!(coeffs_[j] == RationalPolynomial(1L))) s += "(" + c + ")*";
      s += "x";
      if (j > 1) s += "^" + std::to_string(j);
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<RationalPolynomial> coeffs_;
};

/// Square-free decomposition in x over Q(n), by Yun's algorithm with
/// primitive gcds. Returns pairs (g_i, i) with each g_i normalized.
inline std::vector<std::pair<BivariatePolynomial, int>> square_free_decomposition(const BivariatePolynomial& p) {
  std::vector<std::pair<BivariatePolynomial, int>> out;
  if (p.degree() <= 0) return out;
  const BivariatePolynomial a = p.primitive_part();
  const BivariatePolynomial b = a.derivative();
  const BivariatePolynomial c = gcd(a, b);
  BivariatePolynomial w = exact_divide(a, c);
  BivariatePolynomial y = exact_divide(b, c);
  BivariatePolynomial z = y - w.derivative();
  for (int i = 1; w.degree() > 0; ++i) {
    BivariatePolynomial g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = exact_divide(w, g);
    y = exact_divide(z, g);
    z = y - w.derivative();
  }
  return out;
}

}  // namespace fistab

#endif  // FISTAB_BIVARIATE_HPP
