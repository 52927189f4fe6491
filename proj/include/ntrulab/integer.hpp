#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace ntrulab {

// Expression templates are off so `auto` never captures a lazy expression.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using IntVector = std::vector<Integer>;

// acc += a * b, without a temporary.
inline void add_mul(Integer& acc, const Integer& a, const Integer& b) {
  mpz_addmul(acc.backend().data(), a.backend().data(), b.backend().data());
}

// acc -= a * b, without a temporary.
inline void sub_mul(Integer& acc, const Integer& a, const Integer& b) {
  mpz_submul(acc.backend().data(), a.backend().data(), b.backend().data());
}

// Representative of x modulo m in [0, m).
inline Integer floor_mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.backend().data(), x.backend().data(), m.backend().data());
  return r;
}

inline Integer floor_div(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_q(r.backend().data(), x.backend().data(), m.backend().data());
  return r;
}

// Nearest integer to num/den (den > 0); a fraction of exactly 1/2 rounds toward zero.
inline Integer round_half_to_zero(const Integer& num, const Integer& den) {
  Integer fl = floor_div(num, den);
  Integer twice_rem = 2 * (num - fl * den);
  if (twice_rem > den) return fl + 1;
  if (twice_rem < den) return fl;
  return num < 0 ? fl + 1 : fl;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) add_mul(acc, a[i], b[i]);
  return acc;
}

inline Integer squared_norm(const IntVector& v) { return dot(v, v); }

inline bool fits_int64(const Integer& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

inline IntVector to_integers(const std::vector<std::int64_t>& values) {
  return IntVector(values.begin(), values.end());
}

inline std::vector<std::int64_t> to_int64(const IntVector& values) {
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.convert_to<std::int64_t>());
  return out;
}

}  // namespace ntrulab
