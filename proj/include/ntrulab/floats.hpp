#pragma once

// Floating-point precision tiers. Floating GSO/LLL code is templated on the
// float type; a runtime mantissa request picks the smallest tier that covers it.

#include <cmath>
#include <limits>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

#include "ntrulab/error.hpp"
#include "ntrulab/integer.hpp"

namespace ntrulab {

namespace mp = boost::multiprecision;

using Float128 = mp::number<mp::mpfr_float_backend<39, mp::allocate_stack>, mp::et_off>;
using Float200 = mp::number<mp::mpfr_float_backend<61, mp::allocate_stack>, mp::et_off>;
using Float400 = mp::number<mp::mpfr_float_backend<121, mp::allocate_stack>, mp::et_off>;

template <class F>
inline constexpr bool is_mpfr_v = !std::is_floating_point_v<F>;

template <class F>
constexpr unsigned mantissa_bits_of() {
  return static_cast<unsigned>(std::numeric_limits<F>::digits);
}

template <class F>
F to_float(const Integer& x) {
  if constexpr (std::is_floating_point_v<F>) {
    return static_cast<F>(mpz_get_d(x.backend().data()));
  } else {
    F r;
    mpfr_set_z(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
  }
}

template <class F>
F to_float(const Rational& x) {
  if constexpr (std::is_floating_point_v<F>) {
    return static_cast<F>(x.convert_to<double>());
  } else {
    F r;
    mpfr_set_q(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
  }
}

template <class F>
double to_double(const F& x) {
  if constexpr (std::is_floating_point_v<F>) return static_cast<double>(x);
  else return x.template convert_to<double>();
}

template <class F>
Integer floor_to_integer(const F& x) {
  Integer r;
  if constexpr (std::is_floating_point_v<F>) {
    mpz_set_d(r.backend().data(), std::floor(static_cast<double>(x)));
  } else {
    mpfr_get_z(r.backend().data(), x.backend().data(), MPFR_RNDD);
  }
  return r;
}

// Nearest integer; an exact half rounds toward zero.
template <class F>
Integer round_half_to_zero(const F& x) {
  using std::floor;
  const F fl = floor(x);
  const F frac = x - fl;
  Integer r = floor_to_integer(fl);
  if (frac > F(0.5) || (frac == F(0.5) && x < F(0))) r += 1;
  return r;
}

inline Integer round_half_to_zero(const Rational& x) {
  return ntrulab::round_half_to_zero(numerator(x), denominator(x));
}

// q^(1/y) at 200-bit precision. y is taken as the exact binary value of the double.
inline Float200 root_power(const Integer& q, double y) {
  return exp(log(to_float<Float200>(q)) / Float200(y));
}

// floor(x), except that values within 2^-120 (relative) of an integer snap to it,
// so that e.g. 5 * 32^0.4, which is 20 exactly, does not floor to 19 from a
// rounding error in exp/log.
inline Integer floor_snapped(const Float200& x) {
  const Float200 nearest = round(x);
  const Float200 scale = std::max(Float200(1), abs(x));
  if (abs(x - nearest) <= ldexp(scale, -120)) return floor_to_integer(nearest);
  return floor_to_integer(x);
}

// Calls fn(std::type_identity<F>{}) with the smallest float tier holding `bits` mantissa bits.
template <class Fn>
decltype(auto) with_float_tier(unsigned bits, Fn&& fn) {
  if (bits <= mantissa_bits_of<double>()) return fn(std::type_identity<double>{});
  if (bits <= mantissa_bits_of<Float128>()) return fn(std::type_identity<Float128>{});
  if (bits <= mantissa_bits_of<Float200>()) return fn(std::type_identity<Float200>{});
  if (bits <= mantissa_bits_of<Float400>()) return fn(std::type_identity<Float400>{});
  throw ParameterError("mantissa precision above " + std::to_string(mantissa_bits_of<Float400>()) +
                       " bits is not supported");
}

}  // namespace ntrulab
