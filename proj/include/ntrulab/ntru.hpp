#pragma once

// NTRU-HPS: key generation, encryption, decryption and nonce recovery.

#include <cstdint>
#include <string>

#include "ntrulab/error.hpp"
#include "ntrulab/ring.hpp"
#include "ntrulab/rng.hpp"

namespace ntrulab::ntru {

using ring::ConvPoly;
using ring::TernarySpace;

// Shape of the private polynomial f.
enum class PrivateKeyForm {
  ternary,     // f in L_f = T(d+1, d)
  one_plus_p,  // f = 1 + p*G with G in T(d, d); then F_p = 1
};

struct NtruParams {
  std::size_t n = 0;
  std::int64_t p = 3;
  std::int64_t q = 0;
  std::size_t d = 0;
  TernarySpace lf;
  TernarySpace lg;
  TernarySpace lr;
  PrivateKeyForm f_form = PrivateKeyForm::ternary;

  // Defaults: L_f = T(d+1, d), L_g = L_r = T(d, d).
  static NtruParams standard(std::size_t n, std::int64_t p, std::int64_t q, std::size_t d,
                             PrivateKeyForm form = PrivateKeyForm::ternary) {
    NtruParams params{n, p, q, d, {d + 1, d, n}, {d, d, n}, {d, d, n}, form};
    if (form == PrivateKeyForm::one_plus_p) params.lf = {d, d, n};
    return params;
  }

  Integer modulus() const { return q; }

  // Throws ParameterError describing the first violated constraint.
  void validate() const {
    if (!ring::is_prime(n)) throw ParameterError("N must be prime (got " + std::to_string(n) + ")");
    if (!ring::is_prime(static_cast<std::uint64_t>(p))) throw ParameterError("p must be prime");
    if (!ring::is_power_of_two(q)) throw ParameterError("q must be a power of 2");
    if (std::gcd(static_cast<std::int64_t>(n), q) != 1) throw ParameterError("gcd(N, q) must be 1");
    if (std::gcd(p, q) != 1) throw ParameterError("gcd(p, q) must be 1");
    if (d < 1) throw ParameterError("d must be >= 1");
    if (2 * d + 1 > n) throw ParameterError("2d + 1 must not exceed N");
    for (const auto* s : {&lf, &lg, &lr})
      if (!s->valid() || s->n != n) throw ParameterError("ternary space inconsistent with N");
  }

  friend bool operator==(const NtruParams&, const NtruParams&) = default;
};

struct KeyPair {
  ConvPoly f;
  ConvPoly g;
  ConvPoly fp;  // f^{-1} mod p, in {0..p-1}
  ConvPoly fq;  // f^{-1} mod q, in {0..q-1}
  ConvPoly h;   // fq * g mod q, in {0..q-1}
};

struct Ciphertext {
  ConvPoly e;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

inline ConvPoly sample_private_f(const NtruParams& params, Rng& rng) {
  if (params.f_form == PrivateKeyForm::one_plus_p) {
    ConvPoly g = ring::sample_ternary(params.lf, rng);
    return ConvPoly::one(params.n) + Integer(params.p) * g;
  }
  return ring::sample_ternary(params.lf, rng);
}

// Samples f until it is invertible mod p and mod q, at most `retry_budget` times.
inline KeyPair keygen(const NtruParams& params, Rng& rng, int retry_budget = 100) {
  params.validate();
  const Integer q = params.q;
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    ConvPoly f = sample_private_f(params, rng);
    ConvPoly fp, fq;
    try {
      fp = ring::invert_mod_prime(f, params.p);
      fq = ring::invert_mod_prime_power(f, q);
    } catch (const NotInvertible&) {
      continue;
    }
    ConvPoly g = ring::sample_ternary(params.lg, rng);
    ConvPoly h = ring::star_multiply_mod(fq, g, q);
    return {std::move(f), std::move(g), std::move(fp), std::move(fq), std::move(h)};
  }
  throw RetryBudgetExhausted("keygen: no invertible f after " + std::to_string(retry_budget) +
                             " attempts");
}

// True when every coefficient lies in [-(p-1)/2, (p-1)/2].
inline bool is_valid_plaintext(const ConvPoly& m, std::int64_t p) {
  const Integer half = (p - 1) / 2;
  for (const auto& c : m.coeffs())
    if (c < -half || c > half) return false;
  return true;
}

inline ConvPoly sample_message(const NtruParams& params, Rng& rng) {
  const std::int64_t half = (params.p - 1) / 2;
  return ring::sample_uniform(params.n, -half, half, rng);
}

inline ConvPoly sample_nonce(const NtruParams& params, Rng& rng) {
  return ring::sample_ternary(params.lr, rng);
}

// e = p * (r * h) + m mod q.
inline Ciphertext encrypt(const ConvPoly& h, const ConvPoly& m, const ConvPoly& r,
                          const NtruParams& params) {
  if (h.n() != params.n || m.n() != params.n || r.n() != params.n)
    throw DimensionMismatch("encrypt: polynomial degree differs from N");
  if (!is_valid_plaintext(m, params.p))
    throw ParameterError("encrypt: message coefficients outside the centered range mod p");
  ConvPoly e = Integer(params.p) * ring::star_multiply(r, h) + m;
  return {ring::reduce_mod(e, params.q)};
}

inline ConvPoly decrypt(const Ciphertext& c, const KeyPair& kp, const NtruParams& params) {
  const Integer q = params.q;
  const Integer p = params.p;
  ConvPoly a = ring::centerlift(ring::star_multiply_mod(kp.f, c.e, q), q);
  ConvPoly b = ring::star_multiply_mod(kp.fp, a, p);
  return ring::centerlift(b, p);
}

// The quantity whose coefficients must stay inside (-q/2, q/2] for decryption to succeed:
// f * e == p * r * g + f * m (mod q).
inline ConvPoly decryption_witness(const KeyPair& kp, const ConvPoly& m, const ConvPoly& r,
                                   const NtruParams& params) {
  return Integer(params.p) * ring::star_multiply(r, kp.g) + ring::star_multiply(kp.f, m);
}

// Decryption is guaranteed when the exact (unreduced) witness already lies in
// (-q/2, q/2), i.e. the centerlift of f * e recovers it without wrap-around.
inline bool decryption_bound_holds(const KeyPair& kp, const ConvPoly& m, const ConvPoly& r,
                                   const NtruParams& params) {
  return 2 * decryption_witness(kp, m, r, params).max_abs() < params.q;
}

namespace detail {

inline ConvPoly nonce_from_inverse(const Ciphertext& c, const ConvPoly& m, const ConvPoly& key_inv,
                                   const NtruParams& params, const ConvPoly& shift) {
  const Integer q = params.q;
  Integer p_inv;
  mpz_invert(p_inv.backend().data(), Integer(params.p).backend().data(), q.backend().data());
  ConvPoly diff = c.e - m + shift;
  return ring::centerlift(p_inv * ring::star_multiply(diff, key_inv), q);
}

}  // namespace detail

// r = p^{-1} (e - m) * h^{-1} mod q, centerlifted. Throws NotInvertible when h has no inverse mod q.
inline ConvPoly recover_nonce(const Ciphertext& c, const ConvPoly& m, const ConvPoly& h,
                              const NtruParams& params) {
  ConvPoly h_inv;
  try {
    h_inv = ring::invert_mod_prime_power(h, params.q);
  } catch (const NotInvertible&) {
    throw NotInvertible("recover_nonce: public key is not invertible mod q");
  }
  return detail::nonce_from_inverse(c, m, h_inv, params, ConvPoly::zero(params.n));
}

// Nonce recovery for the usual case where h itself is not invertible because
// h(1) = 0 (g in T(d, d)). With J = 1 + x + ... + x^(N-1), the key h + J agrees
// with h modulo x^(N-1) + ... + 1 and has h(1) + N at x = 1, so it is typically a
// unit. For any r with r(1) = s, r * (h + J) = r * h + s * J, hence
// r = p^{-1} (e - m + p*s*J) * (h + J)^{-1}. The sum s is fixed by L_r.
inline ConvPoly recover_nonce_shifted(const Ciphertext& c, const ConvPoly& m, const ConvPoly& h,
                                      const NtruParams& params) {
  const ConvPoly ones = ConvPoly::all_ones(params.n);
  ConvPoly shifted_inv;
  try {
    shifted_inv = ring::invert_mod_prime_power(h + ones, params.q);
  } catch (const NotInvertible&) {
    throw NotInvertible("recover_nonce_shifted: h + J is not invertible mod q");
  }
  const Integer s = Integer(static_cast<long long>(params.lr.d1)) -
                    Integer(static_cast<long long>(params.lr.d2));
  return detail::nonce_from_inverse(c, m, shifted_inv, params, Integer(params.p) * s * ones);
}

}  // namespace ntrulab::ntru
