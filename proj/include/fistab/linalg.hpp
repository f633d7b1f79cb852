#ifndef FISTAB_LINALG_HPP
#define FISTAB_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/rational.hpp"

namespace fistab {

/// Dense row-major int64 matrix; products are overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t size) {
    IntMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  std::int64_t trace() const {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
      if (__builtin_add_overflow(t, (*this)(i, i), &t)) throw MathError("trace overflows int64");
    return t;
  }

  /// Largest absolute row sum.
  std::int64_t row_norm() const {
    std::int64_t best = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) < 0 ? -(*this)(r, c) : (*this)(r, c);
      best = std::max(best, s);
    }
    return best;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::int64_t aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          std::int64_t prod;
          if (__builtin_mul_overflow(aik, b(k, j), &prod) || __builtin_add_overflow(out(i, j), prod, &out(i, j)))
            throw MathError("matrix product overflows int64");
        }
      }
    return out;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix difference shape mismatch");
    IntMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> data_;
};

namespace detail {

// all moduli are below 2^32, so residues multiply without overflow
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (a %= p; e; e >>= 1, a = mul_mod(a, a, p))
    if (e & 1) r = mul_mod(r, a, p);
  return r;
}

/// Deterministic Miller–Rabin for 32-bit inputs.
inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u})
    if (n % p == 0) return n == p;
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2u, 7u, 61u}) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// Characteristic polynomial of a square matrix modulo a prime p, lowest
/// coefficient first, via reduction to upper Hessenberg form.
inline std::vector<std::uint64_t> charpoly_mod(const IntMatrix& A, std::uint64_t p) {
  const std::size_t N = A.rows();
  std::vector<std::vector<std::uint64_t>> h(N, std::vector<std::uint64_t>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      std::int64_t v = A(i, j) % static_cast<std::int64_t>(p);
      h[i][j] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(p) : v);
    }
  for (std::size_t m = 1; m + 1 < N; ++m) {
    std::size_t piv = m;
    while (piv < N && h[piv][m - 1] == 0) ++piv;
    if (piv == N) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (std::size_t r = 0; r < N; ++r) std::swap(h[r][piv], h[r][m]);
    }
    const std::uint64_t inv = pow_mod(h[m][m - 1], p - 2, p);
    for (std::size_t i = m + 1; i < N; ++i) {
      if (h[i][m - 1] == 0) continue;
      const std::uint64_t u = mul_mod(h[i][m - 1], inv, p);
      for (std::size_t j = 0; j < N; ++j) h[i][j] = (h[i][j] + p - mul_mod(u, h[m][j], p)) % p;
      for (std::size_t r = 0; r < N; ++r) h[r][m] = (h[r][m] + mul_mod(u, h[r][i], p)) % p;
    }
  }
  // p_k = (x - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
  std::vector<std::vector<std::uint64_t>> polys(N + 1);
  polys[0] = {1};
  for (std::size_t k = 1; k <= N; ++k) {
    const std::size_t kk = k - 1;
    std::vector<std::uint64_t> next(k + 1, 0);
    const auto& prev = polys[k - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = (next[d + 1] + prev[d]) % p;
      next[d] = (next[d] + p - mul_mod(h[kk][kk], prev[d], p)) % p;
    }
    std::uint64_t prod = 1;
    for (std::size_t i = kk; i-- > 0;) {
      prod = mul_mod(prod, h[i + 1][i], p);
      if (prod == 0) break;
      const std::uint64_t coef = mul_mod(h[i][kk], prod, p);
      if (coef == 0) continue;
      for (std::size_t d = 0; d < polys[i].size(); ++d) next[d] = (next[d] + p - mul_mod(coef, polys[i][d], p)) % p;
    }
    polys[k] = std::move(next);
  }
  return polys[N];
}

}  // namespace detail

/// Exact characteristic polynomial det(xI − A), reconstructed by CRT from
/// Hessenberg computations modulo 31-bit primes. The prime product exceeds
/// twice the Hadamard-style bound (1 + ρ)^N with ρ the largest absolute row
/// sum, so signed lifting is exact.
inline RationalPolynomial charpoly_exact(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidArgument("charpoly of a non-square matrix");
  const std::size_t N = A.rows();
  if (N == 0) return RationalPolynomial(1L);
  Integer bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(A.row_norm() + 1), N);
  bound *= 2;
  Integer modulus = 1;
  std::vector<Integer> coeffs(N + 1, 0);
  std::uint64_t p = (1ULL << 31);
  while (modulus <= bound) {
    do --p;
    while (!detail::is_prime_u32(p));
    auto residues = detail::charpoly_mod(A, p);
    // combine: c ≡ coeffs (mod modulus), c ≡ r (mod p)
    Integer pz(static_cast<unsigned long>(p));
    Integer inv;
    Integer mod_p = modulus % pz;
    mpz_invert(inv.get_mpz_t(), mod_p.get_mpz_t(), pz.get_mpz_t());
    for (std::size_t d = 0; d <= N; ++d) {
      Integer r(static_cast<unsigned long>(residues[d]));
      Integer cur = coeffs[d] % pz;
      Integer t = ((r - cur) * inv) % pz;
      if (t < 0) t += pz;
      coeffs[d] += modulus * t;
    }
    modulus *= pz;
  }
  const Integer half = modulus / 2;
  std::vector<Rational> out;
  out.reserve(N + 1);
  for (auto& c : coeffs) out.emplace_back(c > half ? Integer(c - modulus) : c);
  return RationalPolynomial(std::move(out));
}

/// Square-free decomposition over Q (Yun): pairs (g_i, i) with p = lc · Π g_i^i,
/// each g_i monic and square-free.
inline std::vector<std::pair<RationalPolynomial, int>> square_free_decomposition(const RationalPolynomial& p) {
  std::vector<std::pair<RationalPolynomial, int>> out;
  if (p.degree() <= 0) return out;
  const RationalPolynomial a = p.monic();
  const RationalPolynomial b = a.derivative();
  const RationalPolynomial c = gcd(a, b);
  RationalPolynomial w = a.divmod(c).first;
  RationalPolynomial y = b.divmod(c).first;
  RationalPolynomial z = y - w.derivative();
  for (int i = 1; w.degree() > 0; ++i) {
    RationalPolynomial g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w.divmod(g).first;
    y = z.divmod(g).first;
    z = y - w.derivative();
  }
  return out;
}

/// Integer roots with multiplicity plus square-free residual factors.
struct Factorization {
  std::vector<std::pair<Integer, int>> roots;
  std::vector<std::pair<RationalPolynomial, int>> residual;

  RationalPolynomial expand() const {
    RationalPolynomial acc(1L);
    for (const auto& [r, e] : roots) acc *= RationalPolynomial::linear_root(Rational(r)).pow(static_cast<unsigned>(e));
    for (const auto& [f, e] : residual) acc *= f.pow(static_cast<unsigned>(e));
    return acc;
  }

  /// "(x - 3)(x - 1)^5(x + 2)^4"
  std::string to_string() const {
    std::string s;
    for (const auto& [r, e] : roots) {
      s += "(x";
      if (r > 0) s += " - " + r.get_str();
      if (r < 0) s += " + " + Integer(-r).get_str();
      s += ")";
      if (e > 1) s += "^" + std::to_string(e);
    }
    for (const auto& [f, e] : residual) {
      s += "(" + f.to_string("x") + ")";
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }
};

/// Factors a monic integer polynomial: integer roots first, then Yun on what
/// remains.
inline Factorization factor_over_rationals(RationalPolynomial p) {
  if (p.is_zero()) throw MathError("cannot factor the zero polynomial");
  Factorization f;
  p = p.monic();
  if (p.degree() <= 0) return f;
  for (const auto& r : integer_roots(p)) {
    const auto lin = RationalPolynomial::linear_root(Rational(r));
    int e = 0;
    for (;;) {
      auto [q, rem] = p.divmod(lin);
      if (!rem.is_zero()) break;
      p = std::move(q);
      ++e;
    }
    f.roots.emplace_back(r, e);
  }
  f.residual = square_free_decomposition(p);
  return f;
}

}  // namespace fistab

#endif  // FISTAB_LINALG_HPP
