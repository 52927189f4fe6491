#pragma once

// Message recovery through the public-key-independent lattice L_a.
//
// Multiplying the encryption equation by a chosen a(x) gives
//   a * m == b + c (mod q),  b = a * e mod q,  c = -p a * r * h mod q,
// so u = (m, b + c) lies in L_a, spanned by the rows of [I | C(a); 0 | qI].
// Given an approximation E of V = (m, c), the target E + (0, b) is as far from u
// as E is from V, and a closest-vector search returns u whenever that distance
// is small against the lattice's minimum. The first N coordinates are m.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "ntrulab/floats.hpp"
#include "ntrulab/lattice.hpp"
#include "ntrulab/ntru.hpp"
#include "ntrulab/ring.hpp"
#include "ntrulab/rng.hpp"

namespace ntrulab::attack {

using lattice::LatticeBasis;
using ring::ConvPoly;

enum class AStrategy { algorithm1, pm2_shuffled, structured };

inline std::string to_string(AStrategy s) {
  switch (s) {
    case AStrategy::algorithm1: return "algorithm1";
    case AStrategy::pm2_shuffled: return "pm2_shuffled";
    case AStrategy::structured: return "structured";
  }
  return "?";
}

inline AStrategy parse_strategy(const std::string& s) {
  if (s == "algorithm1") return AStrategy::algorithm1;
  if (s == "pm2_shuffled") return AStrategy::pm2_shuffled;
  if (s == "structured") return AStrategy::structured;
  throw ParameterError("unknown a-strategy '" + s + "' (algorithm1, pm2_shuffled, structured)");
}

struct AttackConfig {
  double y = 2.3;
  std::int64_t R = 0;
  AStrategy a_strategy = AStrategy::algorithm1;
  ConvPoly rn_guess;  // empty means all-zero
  int max_oracle_calls = 100;

  void validate() const {
    if (!(y >= 1.0)) throw ParameterError("y must be >= 1");
    if (R < 0) throw ParameterError("R must be >= 0");
    if (max_oracle_calls < 1) throw ParameterError("max_oracle_calls must be positive");
    for (const auto& c : rn_guess.coeffs())
      if (c < -1 || c > 1) throw ParameterError("rn_guess must be ternary");
  }
};

// E = (E_0, ..., E_{2N-1}); per the oracle model the first half is the r_N guess.
struct EVector {
  IntVector values;
};

struct TargetVector {
  IntVector values;
};

// V = (m, c).
struct SolutionVector {
  IntVector values;
  static SolutionVector of(const ConvPoly& m, const ConvPoly& c) {
    IntVector v = m.coeffs();
    v.insert(v.end(), c.coeffs().begin(), c.coeffs().end());
    return {std::move(v)};
  }
};

// floor(N * q^(1/y)) at 200-bit precision.
inline Integer scaled_root(std::size_t n, const Integer& q, double y) {
  return floor_snapped(Float200(static_cast<double>(n)) * root_power(q, y));
}

inline ConvPoly choose_a(AStrategy strategy, std::size_t n, const Integer& q, double y, Rng& rng) {
  if (n < 2) throw ParameterError("choose_a: N must be at least 2");
  if (!(y >= 1.0)) throw ParameterError("choose_a: y must be >= 1");
  ConvPoly a(n);
  const Integer top = scaled_root(n, q, y);
  switch (strategy) {
    case AStrategy::algorithm1: {
      std::uniform_int_distribution<int> bit(0, 1);
      for (std::size_t i = 0; i + 1 < n; ++i) a[i] = bit(rng);
      a[n - 1] = top;
      break;
    }
    case AStrategy::pm2_shuffled: {
      std::uniform_int_distribution<int> bit(0, 1);
      for (std::size_t i = 0; i + 1 < n; ++i) a[i] = bit(rng) ? 2 : -2;
      a[n - 1] = top;
      IntVector v = a.coeffs();
      for (std::size_t i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(v[i], v[pick(rng)]);
      }
      a = ConvPoly(std::move(v));
      break;
    }
    case AStrategy::structured: {
      if (n % 2 == 0) throw ParameterError("structured a needs odd N = 2k + 1");
      const long long k = static_cast<long long>(n - 1) / 2;
      for (long long j = 0; j < 2 * k; ++j) a[static_cast<std::size_t>(j)] = j < k ? j - k : j + 1 - k;
      a[n - 1] = top + 1;
      break;
    }
  }
  return a;
}

// [I_N | C(a); 0 | q I_N].
inline LatticeBasis build_M_a(const ConvPoly& a, const Integer& q) {
  const std::size_t n = a.n();
  const IntMatrix c = ring::circulant(a);
  IntMatrix m(2 * n, 2 * n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) m(i, n + j) = c(i, j);
    m(n + i, n + i) = q;
  }
  return LatticeBasis(std::move(m));
}

// The classic NTRU lattice has the same block shape with h in place of a.
inline LatticeBasis build_M_h(const ConvPoly& h, const Integer& q) { return build_M_a(h, q); }

inline ConvPoly compute_b(const ConvPoly& a, const ntru::Ciphertext& e, const Integer& q) {
  return ring::star_multiply_mod(a, e.e, q);
}

// Simulation only: needs the true nonce.
inline ConvPoly compute_c_ground_truth(const ConvPoly& a, const ConvPoly& r, const ConvPoly& h,
                                       std::int64_t p, const Integer& q) {
  return ring::reduce_mod(Integer(-p) * ring::star_multiply(ring::star_multiply(a, r), h), q);
}

// E = (rn_guess, E') with E'_i uniform on [c_i - R, c_i + R], independently.
inline EVector oracle_E(const ConvPoly& c, std::int64_t R, const ConvPoly& rn_guess, Rng& rng) {
  if (R < 0) throw ParameterError("oracle radius R must be >= 0");
  const std::size_t n = c.n();
  if (!rn_guess.coeffs().empty() && rn_guess.n() != n)
    throw DimensionMismatch("rn_guess degree differs from N");
  EVector e{IntVector(2 * n, Integer(0))};
  if (!rn_guess.coeffs().empty())
    for (std::size_t i = 0; i < n; ++i) e.values[i] = rn_guess[i];
  std::uniform_int_distribution<std::int64_t> noise(-R, R);
  for (std::size_t i = 0; i < n; ++i) e.values[n + i] = c[i] + noise(rng);
  return e;
}

inline TargetVector assemble_target(const ConvPoly& b, const EVector& E) {
  const std::size_t n = b.n();
  if (E.values.size() != 2 * n) throw DimensionMismatch("E must have 2N entries");
  TargetVector t{E.values};
  for (std::size_t i = 0; i < n; ++i) t.values[n + i] += b[i];
  return t;
}

enum class CvpMode { automatic, babai, exact };

// The LLL-reduced L_a together with what closest-vector queries need. Built once
// per (N, q, y, a) and shared read-only between attacks, whatever the key.
class AttackContext {
 public:
  AttackContext(ConvPoly a, Integer q, LatticeBasis reduced, CvpMode mode = CvpMode::automatic,
                const lattice::ReductionParams& params = {}, std::size_t enumeration_cap = lattice::kDefaultEnumerationCap)
      : a_(std::move(a)), q_(std::move(q)), reduced_(std::move(reduced)) {
    if (reduced_.rank() != 2 * a_.n() || reduced_.dim() != 2 * a_.n())
      throw DimensionMismatch("reduced basis does not match 2N");
    const bool small = reduced_.rank() <= enumeration_cap;
    if (mode == CvpMode::exact && !small)
      throw RankTooLarge("exact CVP requested at rank " + std::to_string(reduced_.rank()));
    exact_ = mode == CvpMode::exact || (mode == CvpMode::automatic && small);
    if (exact_) {
      enumerator_.emplace(reduced_, lattice::EnumerationOptions{enumeration_cap, params});
    } else {
      gso_ = lattice::gram_schmidt(reduced_, params, false);
    }
  }

  static AttackContext build(const ConvPoly& a, const Integer& q, CvpMode mode = CvpMode::automatic,
                             const lattice::ReductionParams& params = {}) {
    return AttackContext(a, q, lattice::lll_reduce(build_M_a(a, q), params), mode, params);
  }

  const ConvPoly& a() const { return a_; }
  const Integer& q() const { return q_; }
  std::size_t n() const { return a_.n(); }
  const LatticeBasis& reduced_basis() const { return reduced_; }
  bool uses_exact_cvp() const { return exact_; }

  IntVector closest(std::span<const Integer> target) const {
    if (exact_) return enumerator_->closest(target).vector;
    return lattice::babai_nearest_plane(reduced_, gso_, target).vector;
  }

 private:
  ConvPoly a_;
  Integer q_;
  LatticeBasis reduced_;
  bool exact_ = false;
  lattice::AnyGso gso_;
  std::optional<lattice::Enumerator> enumerator_;
};

// One attack step: the first N coordinates of the lattice vector closest (exactly
// or by nearest plane) to E + (0_N, a * e mod q).
inline ConvPoly run_attack(const ntru::Ciphertext& e, const AttackContext& ctx, const EVector& E) {
  if (e.e.n() != ctx.n()) throw DimensionMismatch("ciphertext degree differs from N");
  const ConvPoly b = compute_b(ctx.a(), e, ctx.q());
  const TargetVector t = assemble_target(b, E);
  const IntVector w = ctx.closest(t.values);
  return ConvPoly(IntVector(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(ctx.n())));
}

enum class Verdict { verified, rejected, indeterminate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::rejected: return "rejected";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

struct Verification {
  Verdict verdict = Verdict::rejected;
  std::optional<ConvPoly> nonce;
  explicit operator bool() const { return verdict == Verdict::verified; }
};

// A candidate is accepted when it is a valid plaintext, the nonce it implies lies
// in L_r and re-encrypting reproduces e. The nonce comes from h^{-1} when h is a
// unit, else from the shifted key h + J (see ntru::recover_nonce_shifted). When
// neither inverse exists the result is indeterminate; a weight-plausible m' is
// then the only evidence and is not counted as success.
inline Verification verify_candidate(const ConvPoly& m_prime, const ntru::Ciphertext& e, const ConvPoly& h,
                                     const ntru::NtruParams& params) {
  if (m_prime.n() != params.n || !ntru::is_valid_plaintext(m_prime, params.p)) return {Verdict::rejected, {}};
  std::optional<ConvPoly> r;
  try {
    r = ntru::recover_nonce(e, m_prime, h, params);
  } catch (const NotInvertible&) {
    try {
      r = ntru::recover_nonce_shifted(e, m_prime, h, params);
    } catch (const NotInvertible&) {
      return {Verdict::indeterminate, {}};
    }
  }
  if (!params.lr.contains(*r)) return {Verdict::rejected, {}};
  if (ntru::encrypt(h, m_prime, *r, params) != e) return {Verdict::rejected, {}};
  return {Verdict::verified, std::move(r)};
}

struct OracleLoopResult {
  int oracle_calls_used = 0;
  bool success = false;
  bool verified_nonce = false;
  bool indeterminate = false;
  ConvPoly message;
};

// Calls the oracle with fresh seeds until a candidate verifies or the budget runs
// out. `c` is the simulated oracle's private input.
inline OracleLoopResult run_oracle_loop(const ntru::Ciphertext& e, const ConvPoly& h, const ntru::NtruParams& params,
                                        const AttackContext& ctx, const AttackConfig& cfg, const ConvPoly& c,
                                        std::uint64_t oracle_seed) {
  cfg.validate();
  OracleLoopResult out;
  for (int call = 0; call < cfg.max_oracle_calls; ++call) {
    Rng rng(derive_seed(oracle_seed, static_cast<std::uint64_t>(call)));
    const EVector E = oracle_E(c, cfg.R, cfg.rn_guess, rng);
    out.oracle_calls_used = call + 1;
    ConvPoly candidate = run_attack(e, ctx, E);
    const Verification v = verify_candidate(candidate, e, h, params);
    if (v.verdict == Verdict::indeterminate) out.indeterminate = true;
    if (v) {
      out.success = true;
      out.verified_nonce = v.nonce.has_value();
      out.message = std::move(candidate);
      break;
    }
  }
  return out;
}

// Classic CVP attack on L_h with target (0_N, e) + E. A lattice point near the
// target is (p r, p r * h mod q) = (p r, e - m + q k), so m = e - (second half)
// centerlifted mod q.
struct ClassicResult {
  ConvPoly message;
  ConvPoly p_r;  // first half of the lattice vector
};

inline ClassicResult classic_cvp_attack(const ConvPoly& h, const ntru::Ciphertext& e, const EVector& E,
                                        const Integer& q, CvpMode mode = CvpMode::automatic,
                                        const lattice::ReductionParams& params = {}) {
  const std::size_t n = h.n();
  if (e.e.n() != n) throw DimensionMismatch("ciphertext degree differs from N");
  const AttackContext ctx(h, q, lattice::lll_reduce(build_M_h(h, q), params), mode, params);
  const TargetVector t = assemble_target(e.e, E);
  const IntVector w = ctx.closest(t.values);
  ConvPoly first(IntVector(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n)));
  ConvPoly second(IntVector(w.begin() + static_cast<std::ptrdiff_t>(n), w.end()));
  return {ring::centerlift(e.e - second, q), std::move(first)};
}

}  // namespace ntrulab::attack
