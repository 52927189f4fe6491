#pragma once

// Arithmetic in the convolution rings Z[x]/(x^N - 1) and (Z/qZ)[x]/(x^N - 1).

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ntrulab/error.hpp"
#include "ntrulab/integer.hpp"
#include "ntrulab/matrix.hpp"
#include "ntrulab/rng.hpp"

namespace ntrulab::ring {

// An element of Z[x]/(x^N - 1); coefficient of x^j lives at index j.
class ConvPoly {
 public:
  ConvPoly() = default;
  explicit ConvPoly(std::size_t n) : coeffs_(n, Integer(0)) {}
  explicit ConvPoly(IntVector coeffs) : coeffs_(std::move(coeffs)) {}
  ConvPoly(std::initializer_list<long long> coeffs) : coeffs_(coeffs.begin(), coeffs.end()) {}

  static ConvPoly zero(std::size_t n) { return ConvPoly(n); }
  static ConvPoly one(std::size_t n) { return monomial(n, 0); }
  static ConvPoly monomial(std::size_t n, std::size_t k) {
    ConvPoly p(n);
    p.coeffs_.at(k) = 1;
    return p;
  }
  // 1 + x + ... + x^(N-1).
  static ConvPoly all_ones(std::size_t n) { return ConvPoly(IntVector(n, Integer(1))); }

  std::size_t n() const { return coeffs_.size(); }
  const IntVector& coeffs() const { return coeffs_; }
  IntVector& coeffs() { return coeffs_; }

  Integer& operator[](std::size_t i) { return coeffs_[i]; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
  }

  // Value at x = 1, i.e. the coefficient sum.
  Integer evaluate_at_one() const {
    return std::accumulate(coeffs_.begin(), coeffs_.end(), Integer(0));
  }

  Integer max_abs() const {
    Integer m = 0;
    for (const auto& c : coeffs_) m = std::max(m, Integer(abs(c)));
    return m;
  }

  Integer squared_norm() const { return ntrulab::squared_norm(coeffs_); }

  ConvPoly& operator+=(const ConvPoly& o) {
    require_same_degree(o);
    for (std::size_t i = 0; i < n(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  ConvPoly& operator-=(const ConvPoly& o) {
    require_same_degree(o);
    for (std::size_t i = 0; i < n(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  ConvPoly& operator*=(const Integer& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend ConvPoly operator+(ConvPoly a, const ConvPoly& b) { return a += b; }
  friend ConvPoly operator-(ConvPoly a, const ConvPoly& b) { return a -= b; }
  friend ConvPoly operator-(ConvPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend ConvPoly operator*(const Integer& s, ConvPoly a) { return a *= s; }
  friend bool operator==(const ConvPoly&, const ConvPoly&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < n(); ++i) {
      if (i) s += ",";
      s += coeffs_[i].str();
    }
    return s + ")";
  }

 private:
  void require_same_degree(const ConvPoly& o) const {
    if (o.n() != n()) throw DimensionMismatch("ring degree mismatch");
  }

  IntVector coeffs_;
};

// T(d1, d2): ternary polynomials of degree < n with d1 entries +1 and d2 entries -1.
struct TernarySpace {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t n = 0;

  bool valid() const { return d1 + d2 <= n; }
  bool contains(const ConvPoly& p) const {
    if (p.n() != n) return false;
    std::size_t plus = 0, minus = 0;
    for (const auto& c : p.coeffs()) {
      if (c == 1) ++plus;
      else if (c == -1) ++minus;
      else if (c != 0) return false;
    }
    return plus == d1 && minus == d2;
  }
  friend bool operator==(const TernarySpace&, const TernarySpace&) = default;
};

// c_k = sum over i + j = k (mod N) of a_i b_j, exact.
inline ConvPoly star_multiply(const ConvPoly& a, const ConvPoly& b) {
  if (a.n() != b.n()) throw DimensionMismatch("star_multiply: ring degree mismatch");
  const std::size_t n = a.n();
  ConvPoly c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& ai = a[i];
    if (ai == 0) continue;
    std::size_t k = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] != 0) {
        if (ai == 1) c[k] += b[j];
        else if (ai == -1) c[k] -= b[j];
        else add_mul(c[k], ai, b[j]);
      }
      if (++k == n) k = 0;
    }
  }
  return c;
}

inline ConvPoly reduce_mod(const ConvPoly& a, const Integer& q) {
  if (q < 2) throw ParameterError("reduce_mod: modulus must be >= 2");
  ConvPoly r(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) r[i] = floor_mod(a[i], q);
  return r;
}

// Representatives in (-q/2, q/2]; q/2 itself stays positive.
inline ConvPoly centerlift(const ConvPoly& a, const Integer& q) {
  if (q < 2) throw ParameterError("centerlift: modulus must be >= 2");
  ConvPoly r(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    Integer v = floor_mod(a[i], q);
    if (2 * v > q) v -= q;
    r[i] = v;
  }
  return r;
}

// Product reduced into {0, ..., q-1}.
inline ConvPoly star_multiply_mod(const ConvPoly& a, const ConvPoly& b, const Integer& q) {
  return reduce_mod(star_multiply(a, b), q);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool is_power_of_two(const Integer& q) {
  return q >= 2 && mpz_popcount(q.backend().data()) == 1;
}

namespace detail {

// Dense polynomial over F_p, lowest degree first, no trailing zeros (zero = empty).
using FpPoly = std::vector<std::int64_t>;

inline std::int64_t mod_p(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

inline std::int64_t inverse_mod_p(std::int64_t a, std::int64_t p) {
  // a^(p-2) for prime p.
  std::int64_t result = 1, base = mod_p(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) result = static_cast<std::int64_t>((__int128)result * base % p);
    base = static_cast<std::int64_t>((__int128)base * base % p);
    e >>= 1;
  }
  return result;
}

inline void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly sub_mul_shift(FpPoly a, const FpPoly& b, std::int64_t c, std::size_t shift,
                            std::int64_t p) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i + shift] = mod_p(a[i + shift] - static_cast<std::int64_t>((__int128)c * b[i] % p), p);
  trim(a);
  return a;
}

inline FpPoly multiply(const FpPoly& a, const FpPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::int64_t>((c[i + j] + (__int128)a[i] * b[j]) % p);
  trim(c);
  return c;
}

inline FpPoly subtract(FpPoly a, const FpPoly& b, std::int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod_p(a[i] - b[i], p);
  trim(a);
  return a;
}

// Quotient and remainder of a by b (b nonzero).
inline std::pair<FpPoly, FpPoly> divmod(FpPoly a, const FpPoly& b, std::int64_t p) {
  FpPoly quot;
  const std::int64_t lead_inv = inverse_mod_p(b.back(), p);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::int64_t c = static_cast<std::int64_t>((__int128)a.back() * lead_inv % p);
    if (quot.size() < shift + 1) quot.resize(shift + 1, 0);
    quot[shift] = c;
    a = sub_mul_shift(std::move(a), b, c, shift, p);
  }
  trim(quot);
  return {quot, a};
}

}  // namespace detail

// Inverse of f in F_p[x]/(x^N - 1) by the extended Euclidean algorithm.
inline ConvPoly invert_mod_prime(const ConvPoly& f, std::int64_t p) {
  if (!is_prime(static_cast<std::uint64_t>(p))) throw ParameterError("invert_mod_prime: p must be prime");
  using detail::FpPoly;
  const std::size_t n = f.n();
  const Integer pz = p;

  FpPoly modulus(n + 1, 0);
  modulus[0] = p - 1;
  modulus[n] = 1;
  FpPoly fp(n);
  for (std::size_t i = 0; i < n; ++i) fp[i] = floor_mod(f[i], pz).convert_to<std::int64_t>();
  detail::trim(fp);
  if (fp.empty()) throw NotInvertible("invert_mod_prime: f is zero mod p");

  // Invariant: t_i * f == r_i (mod x^N - 1, p).
  FpPoly r_prev = modulus, r = fp;
  FpPoly t_prev, t{1};
  while (!r.empty()) {
    auto [quot, rem] = detail::divmod(r_prev, r, p);
    r_prev = std::move(r);
    r = std::move(rem);
    FpPoly t_next = detail::subtract(t_prev, detail::multiply(quot, t, p), p);
    t_prev = std::move(t);
    t = std::move(t_next);
  }
  if (r_prev.size() != 1) throw NotInvertible("invert_mod_prime: gcd(f, x^N - 1) is not constant mod p");
  const std::int64_t scale = detail::inverse_mod_p(r_prev[0], p);

  ConvPoly inv(n);
  for (std::size_t i = 0; i < t_prev.size(); ++i) {
    const std::size_t k = i % n;
    inv[k] = (inv[k] + Integer(static_cast<std::int64_t>((__int128)t_prev[i] * scale % p))) % pz;
  }
  return reduce_mod(inv, pz);
}

// Inverse of f modulo q = 2^e: invert mod 2, then Newton-lift F <- F*(2 - f*F).
inline ConvPoly invert_mod_prime_power(const ConvPoly& f, const Integer& q) {
  if (!is_power_of_two(q)) throw ParameterError("invert_mod_prime_power: q must be a power of 2");
  ConvPoly inv = invert_mod_prime(f, 2);
  Integer modulus = 2;
  const ConvPoly two = Integer(2) * ConvPoly::one(f.n());
  while (modulus < q) {
    modulus *= modulus;
    inv = star_multiply_mod(inv, two - star_multiply(f, inv), modulus);
  }
  return reduce_mod(inv, q);
}

// Uniform element of T(d1, d2): Fisher-Yates placement of the nonzero positions.
inline ConvPoly sample_ternary(const TernarySpace& space, Rng& rng) {
  if (!space.valid()) throw ParameterError("sample_ternary: d1 + d2 exceeds n");
  std::vector<std::size_t> pos(space.n);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  const std::size_t k = space.d1 + space.d2;
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, space.n - 1);
    std::swap(pos[i], pos[pick(rng)]);
  }
  ConvPoly p(space.n);
  for (std::size_t i = 0; i < space.d1; ++i) p[pos[i]] = 1;
  for (std::size_t i = space.d1; i < k; ++i) p[pos[i]] = -1;
  return p;
}

// Uniform over {lo, ..., hi}^n.
inline ConvPoly sample_uniform(std::size_t n, std::int64_t lo, std::int64_t hi, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> pick(lo, hi);
  ConvPoly p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = pick(rng);
  return p;
}

// Row i is a rotated right by i places, so that u * C(a) == u star a.
inline IntMatrix circulant(const ConvPoly& a) {
  const std::size_t n = a.n();
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = a[(j + n - i) % n];
  return c;
}

}  // namespace ntrulab::ring
