#pragma once

// The inequalities the attack's correctness rests on, evaluated at 200-bit precision:
//   assumption          lambda_1(L_a) > q^(1/y)                 (exact SVP, small N)
//   heuristic form      0.35 sqrt(q) > q^(1/y)
//   structured-a bound  (N^2-1)N/12 + a_{N-1}^2 < (q - q^(1/y))^2 / (N q^(2/y))
//   radius bound        y < 2 log2 q / (2 + log2(N (1 + R^2)))

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "ntrulab/attack.hpp"
#include "ntrulab/floats.hpp"
#include "ntrulab/lattice.hpp"

namespace ntrulab::analysis {

using ring::ConvPoly;

enum class Tri { yes, no, not_evaluated };

inline Tri tri(bool b) { return b ? Tri::yes : Tri::no; }

inline std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    case Tri::not_evaluated: return "not-evaluated";
  }
  return "?";
}

inline Float200 pi200() { return boost::math::constants::pi<Float200>(); }
inline Float200 e200() { return boost::math::constants::e<Float200>(); }

struct GaussianHeuristic {
  Float200 gh;        // sqrt(2N / (2 pi e)) * det(M_a)^(1/2N) = sqrt(q N / (pi e))
  Float200 adjusted;  // gh / sqrt(N) = sqrt(q / (pi e))
};

inline GaussianHeuristic gaussian_heuristic_estimate(std::size_t n, const Integer& q) {
  if (n == 0 || q <= 0) throw ParameterError("Gaussian heuristic needs positive N and q");
  const Float200 nq = to_float<Float200>(q) * Float200(static_cast<double>(n));
  const Float200 gh = sqrt(nq / (pi200() * e200()));
  return {gh, gh / sqrt(Float200(static_cast<double>(n)))};
}

// The literal rounded constant of the heuristic form.
inline Float200 heuristic_constant() { return Float200("0.35"); }

inline bool check_heuristic_inequality(const Integer& q, double y) {
  if (q < 2 || !(y >= 1.0)) throw ParameterError("heuristic inequality needs q >= 2 and y >= 1");
  return heuristic_constant() * sqrt(to_float<Float200>(q)) > root_power(q, y);
}

// Same comparison with the unrounded constant 1 / sqrt(pi e).
inline bool check_heuristic_inequality_exact_constant(const Integer& q, double y) {
  if (q < 2 || !(y >= 1.0)) throw ParameterError("heuristic inequality needs q >= 2 and y >= 1");
  return sqrt(to_float<Float200>(q) / (pi200() * e200())) > root_power(q, y);
}

struct AssumptionResult {
  Tri holds = Tri::not_evaluated;
  std::optional<lattice::ShortestVector> shortest;
  double lambda1() const { return shortest ? shortest->length() : 0.0; }
};

// lambda_1(L_a) > q^(1/y) by exact SVP; not evaluated above the enumeration cap.
inline AssumptionResult check_assumption_exact(const ConvPoly& a, const Integer& q, double y,
                                               std::size_t enumeration_cap = lattice::kDefaultEnumerationCap) {
  if (2 * a.n() > enumeration_cap) return {};
  auto sv = lattice::svp_exact(attack::build_M_a(a, q), {enumeration_cap, {}});
  const Float200 root = root_power(q, y);
  const bool ok = to_float<Float200>(sv.norm_squared) > root * root;
  return {tri(ok), std::move(sv)};
}

inline Float200 appendixA_right_side(std::size_t n, const Integer& q, double y) {
  const Float200 root = root_power(q, y);
  const Float200 gap = to_float<Float200>(q) - root;
  return gap * gap / (Float200(static_cast<double>(n)) * root * root);
}

// Left side for the structured a: sum of (j-k)^2 terms plus a_{N-1}^2.
inline Integer appendixA_left_side(std::size_t n, const Integer& q, double y) {
  const Integer nn = static_cast<long long>(n);
  const Integer top = attack::scaled_root(n, q, y) + 1;
  return (nn * nn - 1) * nn / 12 + top * top;
}

inline bool check_appendixA_inequality(std::size_t n, const Integer& q, double y) {
  if (n % 2 == 0) throw ParameterError("the structured-a inequality needs odd N = 2k + 1");
  if (!(y >= 1.0)) throw ParameterError("y must be >= 1");
  return to_float<Float200>(appendixA_left_side(n, q, y)) < appendixA_right_side(n, q, y);
}

// y < 2 log2 q / (2 + log2(N (1 + R^2))), cross-checked against the equivalent
// form N (1 + R^2) < q^(2/y) / 4.
inline bool check_remark3_bound(std::size_t n, std::int64_t R, const Integer& q, double y) {
  if (n == 0 || R < 0 || q < 2 || !(y > 0)) throw ParameterError("radius bound needs positive N, q, y and R >= 0");
  const Integer spread = Integer(static_cast<long long>(n)) * (1 + Integer(R) * R);
  const Float200 log2q = log2(to_float<Float200>(q));
  const Float200 bound = 2 * log2q / (2 + log2(to_float<Float200>(spread)));
  const bool by_log = Float200(y) < bound;
  const Float200 root = root_power(q, y);
  const bool by_power = 4 * to_float<Float200>(spread) < root * root;
  if (by_log != by_power) throw std::logic_error("the two forms of the radius bound disagree");
  return by_log;
}

inline double remark3_y_bound(std::size_t n, std::int64_t R, const Integer& q) {
  const Integer spread = Integer(static_cast<long long>(n)) * (1 + Integer(R) * R);
  return to_double(Float200(2 * log2(to_float<Float200>(q)) / (2 + log2(to_float<Float200>(spread)))));
}

struct ShortVectorCheck {
  Tri holds = Tri::not_evaluated;  // not evaluated when the precondition fails
  bool exact = false;              // full enumeration vs random sampling
  bool precondition = false;
  std::uint64_t vectors_checked = 0;
  std::optional<IntVector> counterexample;
};

// Whether v lies in the span of the first N rows [I_N | C(a)]: the coefficients are
// forced to be the first half of v, so this holds iff v[N:] == v[:N] * C(a).
inline bool in_top_sublattice(const ConvPoly& a, const IntVector& v) {
  const std::size_t n = a.n();
  const ConvPoly head(IntVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)));
  const ConvPoly prod = ring::star_multiply(head, a);
  for (std::size_t i = 0; i < n; ++i)
    if (prod[i] != v[n + i]) return false;
  return true;
}

// Precondition of the structured-a proposition, for an arbitrary a:
// sum a_j^2 < (q - q^(1/y))^2 / (N q^(2/y)).
inline bool short_vector_precondition(const ConvPoly& a, const Integer& q, double y) {
  return to_float<Float200>(a.squared_norm()) < appendixA_right_side(a.n(), q, y);
}

// Checks that every nonzero v in L_a with ||v|| <= q^(1/y) lies in the span of
// [I_N | C(a)]. Exact: enumerate all such v. Sampled (rank above the cap, or
// forced): `trials` random lattice vectors with a small first half.
inline ShortVectorCheck appendixA_shortvector_check(const ConvPoly& a, const Integer& q, double y, std::uint64_t trials,
                                                    Rng& rng, std::size_t enumeration_cap = lattice::kDefaultEnumerationCap,
                                                    bool force_sampled = false) {
  ShortVectorCheck out;
  out.precondition = short_vector_precondition(a, q, y);
  if (!out.precondition) return out;
  const Float200 root = root_power(q, y);
  const Integer radius_squared = floor_to_integer(Float200(root * root));
  const std::size_t n = a.n();
  const lattice::LatticeBasis basis = attack::build_M_a(a, q);
  out.holds = Tri::yes;
  if (2 * n <= enumeration_cap && !force_sampled) {
    out.exact = true;
    lattice::Enumerator en(basis, {enumeration_cap, {}});
    en.for_each_within(radius_squared, [&](const IntVector&, const IntVector& v) {
      ++out.vectors_checked;
      if (in_top_sublattice(a, v)) return true;
      out.holds = Tri::no;
      out.counterexample = v;
      return false;
    });
    return out;
  }
  // Short candidates (u, u * a - q w), with w chosen to center the second half.
  std::uniform_int_distribution<int> small(-2, 2);
  const Integer half = q / 2;
  for (std::uint64_t t = 0; t < trials; ++t) {
    ConvPoly u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = small(rng);
    const ConvPoly ua = ring::star_multiply(u, a);
    IntVector v = u.coeffs();
    for (std::size_t i = 0; i < n; ++i) {
      Integer r = ua[i] % q;
      if (r < 0) r += q;
      if (r > half) r -= q;
      v.push_back(r);
    }
    ++out.vectors_checked;
    if (squared_norm(v) == 0 || squared_norm(v) > radius_squared || in_top_sublattice(a, v)) continue;
    out.holds = Tri::no;
    out.counterexample = v;
    break;
  }
  return out;
}

// Uniform a over {0, ..., q-1}^N, the reading used for random-a parameter checks.
inline ConvPoly random_uniform_a(std::size_t n, const Integer& q, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, q.convert_to<std::int64_t>() - 1);
  ConvPoly a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = d(rng);
  return a;
}

struct ParamCheckReport {
  std::size_t n = 0;
  Integer q;
  double y = 0;
  std::int64_t R = 0;
  double gh_estimate = 0;
  double gh_adjusted = 0;
  double q_root = 0;                // q^(1/y)
  double heuristic_lhs = 0;         // 0.35 sqrt(q)
  std::optional<double> lambda1;
  std::optional<Integer> lambda1_squared;
  Tri heuristic_ok = Tri::not_evaluated;
  Tri heuristic_exact_constant_ok = Tri::not_evaluated;
  Tri assumption_ok = Tri::not_evaluated;
  Tri appendixA_ok = Tri::not_evaluated;
  Tri remark3_ok = Tri::not_evaluated;
  double remark3_y_bound = 0;
  // The assumption was decided by exact SVP and disagrees with the heuristic form.
  bool heuristic_disagrees_with_exact = false;
};

struct ParamCheckOptions {
  std::size_t enumeration_cap = lattice::kDefaultEnumerationCap;
  bool run_exact_svp = true;
};

// `a` may be empty, in which case the assumption is not evaluated.
inline ParamCheckReport check_params(std::size_t n, const Integer& q, double y, std::int64_t R, const ConvPoly& a,
                                     const ParamCheckOptions& opts = {}) {
  if (n < 2 || q < 2 || !(y >= 1.0) || R < 0) throw ParameterError("check-params needs N >= 2, q >= 2, y >= 1, R >= 0");
  ParamCheckReport rep;
  rep.n = n;
  rep.q = q;
  rep.y = y;
  rep.R = R;
  const auto gh = gaussian_heuristic_estimate(n, q);
  rep.gh_estimate = to_double(gh.gh);
  rep.gh_adjusted = to_double(gh.adjusted);
  rep.q_root = to_double(root_power(q, y));
  rep.heuristic_lhs = to_double(Float200(heuristic_constant() * sqrt(to_float<Float200>(q))));
  rep.heuristic_ok = tri(check_heuristic_inequality(q, y));
  rep.heuristic_exact_constant_ok = tri(check_heuristic_inequality_exact_constant(q, y));
  if (n % 2 == 1) rep.appendixA_ok = tri(check_appendixA_inequality(n, q, y));
  rep.remark3_ok = tri(check_remark3_bound(n, R, q, y));
  rep.remark3_y_bound = remark3_y_bound(n, R, q);
  if (opts.run_exact_svp && !a.coeffs().empty()) {
    if (a.n() != n) throw DimensionMismatch("a has the wrong degree");
    const AssumptionResult ar = check_assumption_exact(a, q, y, opts.enumeration_cap);
    rep.assumption_ok = ar.holds;
    if (ar.shortest) {
      rep.lambda1 = ar.lambda1();
      rep.lambda1_squared = ar.shortest->norm_squared;
    }
  }
  rep.heuristic_disagrees_with_exact = rep.assumption_ok != Tri::not_evaluated && rep.assumption_ok != rep.heuristic_ok;
  return rep;
}

}  // namespace ntrulab::analysis
